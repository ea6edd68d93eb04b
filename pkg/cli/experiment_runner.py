#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
实验运行模块
读取并校验 JSON 实验配置，调度六个实验，写出 CSV / JSON 结果与 manifest
"""

import json
import logging
import math
import os
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, Any, List, Optional, Union

import numpy as np
import pandas as pd

import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import IntentMarketError, ParameterError
from distributions.price_distributions import (
    GeneralizedPareto, StandardPareto, Exponential, UniformUnit, price_distribution_from_dict,
)
from distributions.cost_distributions import cost_distribution_from_dict
from auction_core.first_price import exante_profit_value, exante_profit_quadrature, exante_profit_curve
from entry.equilibrium import exponential_closed_form, uniform_closed_form, binomial_sum_direct
from entry.scaling import scaling_experiment
from effort.congestive_effort import REGIME_EXPONENTS, welfare_vs_entry, revenue_trend, simulate_revenue
from montecarlo.ratio_experiment import (
    RATIO_COLUMNS, RatioExperimentConfig, run_ratio_experiment, run_seed_averaged, is_nonincreasing,
)
from convex_market.profiles import CongestionCost
from convex_market.dutch_auction import (
    ORACLE_MAX_SOLVERS, run_dutch_auction, direct_welfare_oracle, check_optimality,
)
from convex_market.congestion import congestion_comparison
from convex_market.market_io import market_from_dict, market_to_dict, solution_to_dict, random_market

TableOrDoc = Union[pd.DataFrame, Dict[str, Any]]


class ConfigValidationError(IntentMarketError):
    """实验配置校验失败，errors 列出全部违规字段"""

    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def _is_number(value) -> bool:
    return isinstance(value, (int, float, np.integer, np.floating)) and not isinstance(value, bool)


def _check_int(errors: List[str], params: Dict[str, Any], key: str, minimum: int):
    value = params.get(key)
    if not _is_int(value) or value < minimum:
        errors.append(f"parameters.{key} 必须为 >= {minimum} 的整数，实际为 {value!r}")


def _check_positive(errors: List[str], params: Dict[str, Any], key: str, allow_zero: bool = False):
    value = params.get(key)
    ok = _is_number(value) and math.isfinite(value) and (value >= 0 if allow_zero else value > 0)
    if not ok:
        bound = '>= 0' if allow_zero else '> 0'
        errors.append(f"parameters.{key} 必须为 {bound} 的有限数，实际为 {value!r}")


def _check_int_grid(errors: List[str], params: Dict[str, Any], key: str, minimum: int):
    grid = params.get(key)
    if not isinstance(grid, list) or not grid:
        errors.append(f"parameters.{key} 必须为非空整数列表")
        return
    if not all(_is_int(v) and v >= minimum for v in grid):
        errors.append(f"parameters.{key} 中的每一项必须为 >= {minimum} 的整数: {grid}")
        return
    if any(b <= a for a, b in zip(grid, grid[1:])):
        errors.append(f"parameters.{key} 必须严格递增: {grid}")


def _check_price_dist(errors: List[str], doc, label: str):
    try:
        if not isinstance(doc, dict):
            raise ParameterError(f"应为对象，实际为 {doc!r}")
        price_distribution_from_dict(doc)
    except ParameterError as e:
        errors.append(f"{label}: {str(e)}")


def _check_market(errors: List[str], params: Dict[str, Any]):
    doc = params.get('market')
    if doc is None:
        return
    try:
        if not isinstance(doc, dict):
            raise ParameterError(f"应为对象，实际为 {doc!r}")
        market_from_dict(doc)
    except (ParameterError, KeyError, TypeError, ValueError) as e:
        errors.append(f"parameters.market: {str(e)}")


def _validate_figure2(params: Dict[str, Any], errors: List[str]):
    _check_price_dist(errors, params.get('price_dist'), 'parameters.price_dist')
    _check_int_grid(errors, params, 'n_grid', 2)
    _check_int(errors, params, 'trials', 1)
    _check_int(errors, params, 'seeds', 1)
    _check_int(errors, params, 'bootstrap_resamples', 1)
    _check_int(errors, params, 'max_workers', 1)


def _validate_entry_scaling(params: Dict[str, Any], errors: List[str]):
    families = params.get('price_families')
    if not isinstance(families, list) or not families:
        errors.append("parameters.price_families 必须为非空列表")
    else:
        for i, doc in enumerate(families):
            _check_price_dist(errors, doc, f"parameters.price_families[{i}]")
    try:
        cost = params.get('cost_dist')
        if not isinstance(cost, dict):
            raise ParameterError(f"应为对象，实际为 {cost!r}")
        cost_distribution_from_dict(cost)
    except ParameterError as e:
        errors.append(f"parameters.cost_dist: {str(e)}")
    _check_int_grid(errors, params, 'n_grid', 0)
    _check_positive(errors, params, 'public_price', allow_zero=True)
    _check_int(errors, params, 'max_workers', 1)
    pareto = params.get('pareto_check')
    if pareto is not None:
        if not isinstance(pareto, dict):
            errors.append("parameters.pareto_check 必须为对象或 null")
        else:
            _check_price_dist(errors, pareto.get('price_dist'), 'parameters.pareto_check.price_dist')
            _check_int_grid(errors, pareto, 'n_grid', 1)


def _validate_effort_welfare(params: Dict[str, Any], errors: List[str]):
    regimes = params.get('regimes')
    if not isinstance(regimes, list) or not regimes:
        errors.append("parameters.regimes 必须为非空列表")
    else:
        unknown = [r for r in regimes if r not in REGIME_EXPONENTS]
        if unknown:
            errors.append(f"parameters.regimes 含不支持的拥堵类型: {unknown}")
    _check_int_grid(errors, params, 'k_grid', 2)
    _check_positive(errors, params, 'scale')
    _check_int(errors, params, 'mc_trials', 0)


def _validate_closed_form_audit(params: Dict[str, Any], errors: List[str]):
    _check_int(errors, params, 'k_max', 0)
    _check_int(errors, params, 'n_max', 1)
    rates = params.get('rates')
    if not isinstance(rates, list) or not rates or not all(_is_number(r) and r > 0 for r in rates):
        errors.append(f"parameters.rates 必须为正数列表: {rates!r}")
    probs = params.get('cost_probabilities')
    if not isinstance(probs, list) or not probs or not all(_is_number(q) and 0 < q <= 1 for q in probs):
        errors.append(f"parameters.cost_probabilities 必须为 (0,1] 内的数列表: {probs!r}")
    _check_positive(errors, params, 'profit_tolerance')
    _check_positive(errors, params, 'identity_tolerance')


def _validate_dutch_auction(params: Dict[str, Any], errors: List[str]):
    _check_market(errors, params)
    _check_int(errors, params, 'instances', 0)
    max_solvers = params.get('max_solvers')
    if not _is_int(max_solvers) or not 1 <= max_solvers <= ORACLE_MAX_SOLVERS:
        errors.append(f"parameters.max_solvers 必须为 1 到 {ORACLE_MAX_SOLVERS} 的整数，实际为 {max_solvers!r}")
    _check_positive(errors, params, 'grid_step')


def _validate_congestion(params: Dict[str, Any], errors: List[str]):
    _check_market(errors, params)
    _check_int(errors, params, 'instances', 0)
    _check_positive(errors, params, 'cross_weight', allow_zero=True)


VALIDATORS = {
    'figure2': _validate_figure2,
    'entry-scaling': _validate_entry_scaling,
    'effort-welfare': _validate_effort_welfare,
    'closed-form-audit': _validate_closed_form_audit,
    'dutch-auction': _validate_dutch_auction,
    'congestion': _validate_congestion,
}


@dataclass
class ExperimentConfig:
    """
    实验配置

    Args:
        experiment: 实验名称
        parameters: 与默认参数合并后的实验参数
        output: 输出目录
        seed: 随机种子
        source: 原始配置文档（写入 manifest）
    """

    experiment: str
    parameters: Dict[str, Any]
    output: str
    seed: int
    source: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc: Dict[str, Any], output: Optional[str] = None,
                  seed: Optional[int] = None) -> 'ExperimentConfig':
        """
        合并默认参数并校验，任何计算开始之前拒绝非法配置

        Args:
            doc: 配置文档 {"experiment", "parameters", "output", "seed"}
            output: 命令行输出目录（优先于文档）
            seed: 命令行种子（优先于文档）

        Raises:
            ConfigValidationError: 列出全部违规字段
        """
        errors = []
        if not isinstance(doc, dict):
            raise ConfigValidationError([f"配置必须为 JSON 对象，实际为 {type(doc).__name__}"])

        experiment = doc.get('experiment')
        if experiment not in Config.EXPERIMENT_CATALOG:
            raise ConfigValidationError([f"未知实验: {experiment!r}，可选: {Config.experiment_names()}"])

        overrides = doc.get('parameters', {})
        if not isinstance(overrides, dict):
            errors.append("parameters 必须为 JSON 对象")
            overrides = {}
        unknown = sorted(set(overrides) - set(Config.EXPERIMENT_DEFAULTS[experiment]))
        if unknown:
            errors.append(f"parameters 含未知字段: {unknown}")

        parameters = Config.get_experiment_defaults(experiment)
        parameters.update(overrides)

        final_output = output if output is not None else doc.get('output')
        if not isinstance(final_output, str) or not final_output:
            errors.append("output 必须为非空路径（配置文件或 --out）")

        final_seed = seed if seed is not None else doc.get('seed', 0)
        if not _is_int(final_seed) or final_seed < 0:
            errors.append(f"seed 必须为非负整数，实际为 {final_seed!r}")

        VALIDATORS[experiment](parameters, errors)
        if errors:
            raise ConfigValidationError(errors)

        return cls(experiment=experiment, parameters=parameters, output=final_output,
                   seed=int(final_seed), source=doc)

    @classmethod
    def load(cls, path: str, output: Optional[str] = None, seed: Optional[int] = None) -> 'ExperimentConfig':
        """读取 UTF-8 JSON 配置文件"""
        try:
            with open(path, 'r', encoding=Config.OUTPUT_CONFIG['encoding']) as f:
                doc = json.load(f)
        except OSError as e:
            raise ConfigValidationError([f"无法读取配置文件 {path}: {str(e)}"]) from e
        except json.JSONDecodeError as e:
            raise ConfigValidationError([f"配置文件不是合法 JSON: {str(e)}"]) from e
        return cls.from_dict(doc, output=output, seed=seed)


def json_safe(value):
    """nan / inf 转为 JSON 可表示的值（nan -> null，±inf -> "inf"/"-inf"）"""
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return None
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    return value


class ExperimentRunner:
    """实验调度器"""

    def __init__(self, config: ExperimentConfig, show_progress: bool = False):
        self.logger = logging.getLogger(__name__)
        self.config = config
        self.params = config.parameters
        self.show_progress = show_progress

    def run(self) -> List[str]:
        """
        运行实验并写出结果

        Returns:
            输出文件名列表（manifest 在最后）
        """
        dispatch = {
            'figure2': self.run_figure2,
            'entry-scaling': self.run_entry_scaling,
            'effort-welfare': self.run_effort_welfare,
            'closed-form-audit': self.run_closed_form_audit,
            'dutch-auction': self.run_dutch_auction,
            'congestion': self.run_congestion,
        }
        self.logger.info(f"=== 开始实验 {self.config.experiment} ===")
        try:
            outputs = dispatch[self.config.experiment]()
        except Exception as e:
            self.logger.error(f"实验 {self.config.experiment} 失败: {str(e)}")
            raise

        written = self.write_outputs(outputs)
        self.logger.info(f"实验 {self.config.experiment} 完成，输出 {len(written)} 个文件")
        return written

    def run_figure2(self) -> Dict[str, TableOrDoc]:
        """收入/最高价比值曲线"""
        p = self.params
        main_dist = price_distribution_from_dict(p['price_dist'])
        variants = [('main', main_dist)]
        if (p.get('include_standard_pareto') and isinstance(main_dist, GeneralizedPareto)
                and main_dist.shape == 1.0 and main_dist.location == 0.0):
            variants.append(('standard_pareto', StandardPareto(x_min=main_dist.scale, tail=main_dist.tail)))

        outputs: Dict[str, TableOrDoc] = {}
        summary = {'heavy_tailed': {}, 'nonincreasing': {}, 'shrink_factor': {}, 'median_ge_mean_large_n': {}, 'rows': {}}
        for label, dist in variants:
            cfg = RatioExperimentConfig(dist, tuple(p['n_grid']), p['trials'], self.config.seed,
                                        p['bootstrap_resamples'])
            if p['seeds'] > 1:
                rows = run_seed_averaged(cfg, p['seeds'], max_workers=p['max_workers'])
            else:
                rows = run_ratio_experiment(cfg, max_workers=p['max_workers'],
                                            show_progress=self.show_progress).rows[RATIO_COLUMNS]

            name = 'figure2.csv' if label == 'main' else f"figure2_{label}.csv"
            outputs[name] = rows
            large = rows[rows['n'] >= 250]
            summary['heavy_tailed'][label] = dist.heavy_tailed
            summary['nonincreasing'][label] = is_nonincreasing(rows['mean_ratio'])
            summary['shrink_factor'][label] = float(rows['mean_ratio'].iloc[0] / rows['mean_ratio'].iloc[-1])
            summary['median_ge_mean_large_n'][label] = bool((large['median_ratio'] >= large['mean_ratio']).all())
            summary['rows'][label] = rows.to_dict(orient='records')
            self.logger.info(f"比值曲线 {label}: 单调不增={summary['nonincreasing'][label]}")

        summary['distributions'] = {label: dist.to_dict() for label, dist in variants}
        outputs['figure2.json'] = summary
        return outputs

    def run_entry_scaling(self) -> Dict[str, TableOrDoc]:
        """进入规模实验"""
        p = self.params
        cost_dist = cost_distribution_from_dict(p['cost_dist'])
        frames, slopes = [], {}
        for doc in p['price_families']:
            dist = price_distribution_from_dict(doc)
            result = scaling_experiment(dist, cost_dist, p['n_grid'], p['public_price'],
                                        max_workers=p['max_workers'], show_progress=self.show_progress)
            table = result.table.copy()
            table.insert(0, 'family', dist.kind)
            frames.append(table)
            slopes[dist.kind] = result.slope

        summary: Dict[str, Any] = {'slopes': slopes}
        pareto = p.get('pareto_check')
        if pareto:
            dist = price_distribution_from_dict(pareto['price_dist'])
            result = scaling_experiment(dist, cost_dist, pareto['n_grid'], p['public_price'],
                                        max_workers=p['max_workers'], show_progress=self.show_progress)
            table = result.table.copy()
            table.insert(0, 'family', f"{dist.kind}_check")
            frames.append(table)
            summary['pareto_full_entry'] = bool((table['k_star'] == table['n']).all())

        outputs = {'entry_scaling.csv': pd.concat(frames, ignore_index=True),
                   'entry_scaling_summary.json': summary}
        self.logger.info(f"进入规模斜率: {slopes}")
        return outputs

    def run_effort_welfare(self) -> Dict[str, TableOrDoc]:
        """拥堵努力与收入"""
        p = self.params
        frames, trends = [], {}
        for regime in p['regimes']:
            df = welfare_vs_entry(regime, p['k_grid'], p['scale'])
            if p['mc_trials'] > 0:
                estimates = [simulate_revenue(e, int(k), p['mc_trials'], self.config.seed + int(k))
                             for e, k in zip(df['effort'], df['k'])]
                df['mc_revenue'] = [est.mean for est in estimates]
                df['mc_std_error'] = [est.std_error for est in estimates]
            frames.append(df)
            trends[regime] = revenue_trend(df['revenue'])

        table = pd.concat(frames, ignore_index=True)
        summary = {
            'revenue_trend': trends,
            'max_foc_residual': float(table['residual'].abs().max()),
            'second_order_ok': bool(table['second_order_ok'].all()),
        }
        linear = table[table['regime'] == 'linear']
        if not linear.empty:
            summary['linear_effort_times_k_spread'] = float(linear['effort_times_k'].max()
                                                            - linear['effort_times_k'].min())
        return {'effort_welfare.csv': table, 'effort_welfare_summary.json': summary}

    def run_closed_form_audit(self) -> Dict[str, TableOrDoc]:
        """闭式解审计"""
        p = self.params
        families = [('exponential', rate, Exponential(rate)) for rate in p['rates']]
        families.append(('uniform', None, UniformUnit()))

        profit_rows = []
        for name, param, dist in families:
            for k in range(p['k_max'] + 1):
                closed = exante_profit_value(dist, k)
                quad = exante_profit_quadrature(dist, k)
                delta = abs(closed - quad)
                profit_rows.append({
                    'distribution': name, 'parameter': param, 'k': k, 'closed_form': closed,
                    'quadrature': quad, 'abs_delta': delta, 'ok': delta < p['profit_tolerance'],
                })

        identity_rows = []
        for name, param, dist in families:
            for n in range(1, p['n_max'] + 1):
                for q in p['cost_probabilities']:
                    if name == 'exponential':
                        closed = exponential_closed_form(n, q, dist.rate)
                    else:
                        closed = uniform_closed_form(n, q)
                    direct = binomial_sum_direct(dist, n, q)
                    delta = abs(closed - direct)
                    identity_rows.append({
                        'distribution': name, 'parameter': param, 'n': n, 'cost_probability': q,
                        'closed_form': closed, 'direct_sum': direct, 'abs_delta': delta,
                        'ok': delta < p['identity_tolerance'],
                    })

        profits = pd.DataFrame(profit_rows)
        identities = pd.DataFrame(identity_rows)
        differences_ok = {}
        for name, param, dist in families:
            curve = exante_profit_curve(dist, range(p['k_max'] + 1))
            decrements = curve['decrement'].dropna()
            label = name if param is None else f"{name}_{param:g}"
            differences_ok[label] = bool((decrements > 0).all() and (decrements.diff().dropna() <= 0).all())

        summary = {
            'max_profit_delta': float(profits['abs_delta'].max()),
            'max_identity_delta': float(identities['abs_delta'].max()),
            'profits_ok': bool(profits['ok'].all()),
            'identities_ok': bool(identities['ok'].all()),
            'increasing_differences': differences_ok,
        }
        self.logger.info(f"闭式解审计: {summary}")
        return {
            'closed_form_audit_profits.csv': profits,
            'closed_form_audit_identities.csv': identities,
            'closed_form_audit.json': summary,
        }

    def _markets(self, profile: str, fixed_solvers: Optional[int] = None):
        """配置中的市场或由种子生成的随机市场"""
        p = self.params
        if p.get('market') is not None:
            return [market_from_dict(p['market'])]
        rng = np.random.default_rng(self.config.seed)
        markets = []
        for _ in range(p['instances']):
            n_solvers = fixed_solvers if fixed_solvers is not None else int(rng.integers(1, p['max_solvers'] + 1))
            markets.append(random_market(rng, n_solvers, profile))
        return markets

    def run_dutch_auction(self) -> Dict[str, TableOrDoc]:
        """对偶荷兰式拍卖对照暴力网格"""
        p = self.params
        rows, documents = [], []
        for idx, market in enumerate(self._markets('smooth')):
            row = {'instance': idx, 'n_solvers': len(market.solvers), 'status': 'ok', 'error': ''}
            try:
                solution = run_dutch_auction(market)
                report = check_optimality(market, solution)
                row.update({
                    'price': solution.price, 'welfare': solution.welfare, 'corner': solution.corner,
                    'converged': solution.converged, 'duality_gap': report.duality_gap,
                    'stationarity': report.stationarity_residual, 'routing_residual': report.routing_residual,
                    'feasibility_gap': report.feasibility_gap, 'optimality_ok': report.ok,
                })
                if len(market.solvers) <= ORACLE_MAX_SOLVERS:
                    oracle = direct_welfare_oracle(market, p['grid_step'])
                    row['oracle_welfare'] = oracle.welfare
                    row['relative_gap'] = abs(solution.welfare - oracle.welfare) / max(1.0, abs(oracle.welfare))
                documents.append({'market': market_to_dict(market), 'solution': solution_to_dict(solution, market)})
            except IntentMarketError as e:
                self.logger.error(f"实例 {idx} 求解失败: {str(e)}")
                row.update({'status': 'failed', 'error': str(e)})
            rows.append(row)

        columns = ['instance', 'n_solvers', 'price', 'welfare', 'oracle_welfare', 'relative_gap',
                   'duality_gap', 'stationarity', 'routing_residual', 'feasibility_gap',
                   'corner', 'converged', 'optimality_ok', 'status', 'error']
        return {
            'dutch_auction.csv': pd.DataFrame(rows, columns=columns),
            'dutch_auction_solutions.json': {'instances': documents},
        }

    def run_congestion(self) -> Dict[str, TableOrDoc]:
        """拥堵成本下的出清价格比较"""
        p = self.params
        congested = CongestionCost(cross_weight=float(p['cross_weight']))
        baseline = CongestionCost(cross_weight=0.0)
        rows = []
        for idx, market in enumerate(self._markets('congestion', fixed_solvers=2)):
            row = {'instance': idx, 'status': 'ok', 'error': ''}
            try:
                result = congestion_comparison(market, congested)
                zero = congestion_comparison(market, baseline)
                row.update({
                    'independent_price': result.independent_price,
                    'congested_price': result.congested_price,
                    'zero_weight_price': zero.congested_price,
                    'price_drop': result.price_drop,
                    'independent_user_output': result.independent_user_output,
                    'congested_user_output': result.congested_user_output,
                    'status': result.status,
                })
            except IntentMarketError as e:
                self.logger.error(f"实例 {idx} 拥堵比较失败: {str(e)}")
                row.update({'status': 'failed', 'error': str(e)})
            rows.append(row)

        columns = ['instance', 'independent_price', 'congested_price', 'zero_weight_price', 'price_drop',
                   'independent_user_output', 'congested_user_output', 'status', 'error']
        table = pd.DataFrame(rows, columns=columns)
        ok = table[table['status'] == 'ok']
        summary = {
            'instances': len(table),
            'converged': len(ok),
            'all_congested_lower': bool((ok['congested_price'] < ok['independent_price']).all()),
            'zero_weight_equal': bool((ok['zero_weight_price'] == ok['independent_price']).all()),
        }
        return {'congestion.csv': table, 'congestion_summary.json': summary}

    def write_outputs(self, outputs: Dict[str, TableOrDoc]) -> List[str]:
        """
        写出结果文件与 manifest

        CSV 使用 RFC-4180 行尾与固定浮点格式，同一配置两次运行字节一致；时间戳只写入 manifest
        """
        out_cfg = Config.OUTPUT_CONFIG
        os.makedirs(self.config.output, exist_ok=True)

        written = []
        for name, payload in outputs.items():
            path = os.path.join(self.config.output, name)
            if isinstance(payload, pd.DataFrame):
                payload.to_csv(path, index=False, encoding=out_cfg['encoding'],
                               lineterminator=out_cfg['line_terminator'],
                               float_format=out_cfg['float_format'])
            else:
                with open(path, 'w', encoding=out_cfg['encoding'], newline='') as f:
                    f.write(json.dumps(json_safe(payload), indent=2, ensure_ascii=False) + '\n')
            written.append(name)
            self.logger.info(f"写出 {path}")

        manifest = {
            'experiment': self.config.experiment,
            'version': Config.VERSION,
            'seed': self.config.seed,
            'timestamp': datetime.now().isoformat(timespec='seconds'),
            'config': self.config.source,
            'parameters': self.config.parameters,
            'outputs': written,
        }
        manifest_path = os.path.join(self.config.output, out_cfg['manifest_name'])
        with open(manifest_path, 'w', encoding=out_cfg['encoding'], newline='') as f:
            f.write(json.dumps(json_safe(manifest), indent=2, ensure_ascii=False) + '\n')
        written.append(out_cfg['manifest_name'])
        return written


def list_experiments() -> str:
    """实验目录文本：名称 → 复现章节、对应模型部分、必要参数"""
    lines = []
    for name in Config.experiment_names():
        entry = Config.get_catalog_entry(name)
        lines.append(f"{name} → {entry['section']}  {entry['reproduces']}")
        lines.append(f"    参数: {', '.join(entry['required'])}")
        lines.append(f"    {entry['description']}")
    return '\n'.join(lines)
