#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
IntentMarketLab 配置文件
"""

from typing import Dict, Any, List


class Config:
    """配置类"""

    VERSION = '0.3.0'

    # 数值计算配置
    NUMERIC_CONFIG = {
        'quad_epsabs': 1e-13,
        'quad_epsrel': 1e-11,
        'quad_limit': 500,
        'tail_mass': 1e-12,             # 无界支撑在 quantile(1 - tail_mass) 处截断
        'bisection_maxiter': 200,
        'bisection_xtol': 1e-300,
        'bisection_rtol': 8.9e-16,
        'normal_approx_threshold': 1000,  # 一般分布在 n 超过该值时使用正态近似
        'normal_approx_nodes': 64,
        'shading_table_size': 4097,
        'dual_tolerance': 1e-10,
        'dual_maxiter': 400,
        'congestion_damping': 0.5,
        'congestion_maxiter': 10000,
        'congestion_tolerance': 1e-13,
        'bootstrap_resamples': 200,
        'mc_chunk_size': 2_000_000,     # 单块最多抽样数，控制内存
    }

    # 各实验默认参数
    EXPERIMENT_DEFAULTS = {
        'figure2': {
            'price_dist': {'kind': 'generalized_pareto', 'location': 0.0, 'scale': 100.0,
                           'shape': 1.0, 'tail': 0.95},
            'include_standard_pareto': True,
            'n_grid': [2, 10, 50, 250, 1000],
            'trials': 10000,
            'seeds': 20,
            'bootstrap_resamples': 200,
            'max_workers': 4,
        },
        'entry-scaling': {
            'price_families': [{'kind': 'exponential', 'rate': 1.0}, {'kind': 'uniform'}],
            'cost_dist': {'kind': 'uniform'},
            'n_grid': [1000, 10000, 100000, 1000000],
            'public_price': 0.0,
            'pareto_check': {'price_dist': {'kind': 'generalized_pareto', 'location': 0.0,
                                            'scale': 1.0, 'shape': 1.0, 'tail': 0.95},
                             'n_grid': [10, 100, 1000]},
            'max_workers': 4,
        },
        'effort-welfare': {
            'regimes': ['sublinear', 'linear', 'superlinear'],
            'k_grid': list(range(2, 65)),
            'scale': 1.0,
            'mc_trials': 0,
        },
        'closed-form-audit': {
            'k_max': 20,
            'rates': [0.5, 1.0, 2.0],
            'n_max': 50,
            'cost_probabilities': [0.01, 0.1, 0.3, 0.7, 0.99],
            'profit_tolerance': 1e-9,
            'identity_tolerance': 1e-12,
        },
        'dutch-auction': {
            'market': None,
            'instances': 20,
            'max_solvers': 2,
            'grid_step': 1e-4,
        },
        'congestion': {
            'market': None,
            'instances': 20,
            'cross_weight': 0.5,
        },
    }

    # 实验目录：名称 -> 必要参数、复现的章节、对应模型部分、说明
    EXPERIMENT_CATALOG = {
        'figure2': {
            'required': ['price_dist', 'n_grid', 'trials'],
            'section': '§2.2',
            'reproduces': '重尾Pareto下收入/最高价比值曲线 (costly entry, heavy tails)',
            'description': '期望第二高价与期望最高价之比随求解者数量的变化',
        },
        'entry-scaling': {
            'required': ['price_families', 'cost_dist', 'n_grid'],
            'section': '§2.2',
            'reproduces': 'costly entry: 进入门槛与进入者数量的渐近阶',
            'description': '门槛成本 c_bar、期望进入者 k* 与 log-log 斜率',
        },
        'effort-welfare': {
            'required': ['regimes', 'k_grid'],
            'section': '§2.3',
            'reproduces': 'costly effort: 拥堵努力均衡与用户收入',
            'description': '三种拥堵函数下 e*、e*k 与收入随 k 的变化',
        },
        'closed-form-audit': {
            'required': ['k_max', 'rates', 'n_max', 'cost_probabilities'],
            'section': '§2.1',
            'reproduces': 'Dutch auction profits: 闭式解与二项求和恒等式审计',
            'description': 'S(k) 闭式解对照数值积分，二项加权和对照闭式解',
        },
        'dutch-auction': {
            'required': ['instances'],
            'section': '§3',
            'reproduces': 'optimization model: 原始-对偶荷兰式拍卖',
            'description': '对偶二分拍卖对照暴力网格最优解',
        },
        'congestion': {
            'required': ['instances', 'cross_weight'],
            'section': '§3.3',
            'reproduces': 'optimization model: 求解者成本拥堵扩展',
            'description': '独立成本与拥堵成本下的出清价格比较',
        },
    }

    # 日志配置
    LOG_CONFIG = {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        'file': 'intent_market_lab.log',
        'max_bytes': 10 * 1024 * 1024,  # 10MB
        'backup_count': 5
    }

    # 输出配置
    OUTPUT_CONFIG = {
        'encoding': 'utf-8',
        'line_terminator': '\r\n',   # RFC-4180
        'float_format': '%.15g',
        'manifest_name': 'manifest.json',
    }

    @classmethod
    def get_experiment_defaults(cls, name: str) -> Dict[str, Any]:
        """获取实验默认参数（深拷贝，调用方可修改）"""
        import copy
        return copy.deepcopy(cls.EXPERIMENT_DEFAULTS.get(name, {}))

    @classmethod
    def get_catalog_entry(cls, name: str) -> Dict[str, Any]:
        """获取实验目录条目"""
        return cls.EXPERIMENT_CATALOG.get(name, {})

    @classmethod
    def experiment_names(cls) -> List[str]:
        """全部实验名称"""
        return list(cls.EXPERIMENT_CATALOG.keys())
