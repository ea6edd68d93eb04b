#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
市场数据读写模块
市场实例的 JSON 读取、市场解与拍卖记录的 JSON 序列化、随机实例生成

市场文档格式：
{
  "delta": 10.0,
  "cfmm": {"R1": 100.0, "R2": 100.0, "fee": 0.0},
  "solvers": [
    {"name": "s1", "family": "log", "params": {"a": 1.0, "b": 1.0},
     "cost": {"linear": 0.0, "quadratic": 0.0}, "cap": null, "quote_price": 0.0}
  ],
  "congestion": {"cross_weight": 0.5}
}
"""

import json
import logging
from dataclasses import asdict
from typing import Dict, Any, Optional

import numpy as np

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError
from convex_market.profiles import (
    UTILITY_FAMILIES, LogUtility, QuadraticUtility, SolverCost, SolverProfile,
    CfmmExchange, ConvexMarket, CongestionCost,
)
from convex_market.dutch_auction import MarketSolution

logger = logging.getLogger(__name__)


def _solver_from_dict(doc: Dict[str, Any], index: int) -> SolverProfile:
    family = doc.get('family')
    if family not in UTILITY_FAMILIES:
        raise ParameterError(f"不支持的效用族: {family}")
    try:
        utility = UTILITY_FAMILIES[family](**doc.get('params', {}))
        cost_doc = doc.get('cost', {}) or {}
        cost = SolverCost(linear=float(cost_doc.get('linear', 0.0)),
                          quadratic=float(cost_doc.get('quadratic', 0.0)),
                          cap=doc.get('cap'))
    except TypeError as e:
        raise ParameterError(f"求解者 {index} 参数错误: {str(e)}") from e
    return SolverProfile(name=str(doc.get('name', f"solver_{index}")), utility=utility, cost=cost,
                         quote_price=float(doc.get('quote_price', 0.0)))


def market_from_dict(doc: Dict[str, Any]) -> ConvexMarket:
    """
    从字典构造市场

    Args:
        doc: 市场文档

    Returns:
        市场实例
    """
    if 'delta' not in doc or 'cfmm' not in doc:
        raise ParameterError("市场文档缺少 delta 或 cfmm")
    cfmm_doc = doc['cfmm']
    cfmm = CfmmExchange(reserve_in=float(cfmm_doc['R1']), reserve_out=float(cfmm_doc['R2']),
                        fee=float(cfmm_doc.get('fee', 0.0)))
    solvers = tuple(_solver_from_dict(s, i) for i, s in enumerate(doc.get('solvers', [])))
    return ConvexMarket(delta=float(doc['delta']), cfmm=cfmm, solvers=solvers)


def congestion_from_dict(doc: Dict[str, Any]) -> Optional[CongestionCost]:
    """读取市场文档中的拥堵成本，缺省为 None"""
    section = doc.get('congestion')
    if section is None:
        return None
    return CongestionCost(cross_weight=float(section.get('cross_weight', 0.0)))


def market_to_dict(market: ConvexMarket, congestion: Optional[CongestionCost] = None) -> Dict[str, Any]:
    """市场序列化为文档"""
    doc = {
        'delta': market.delta,
        'cfmm': market.cfmm.to_dict(),
        'solvers': [
            {
                'name': s.name,
                'family': s.utility.family,
                'params': s.utility.params(),
                'cost': s.cost.to_dict(),
                'cap': s.cost.cap,
                'quote_price': s.quote_price,
            }
            for s in market.solvers
        ],
    }
    if congestion is not None:
        doc['congestion'] = {'cross_weight': congestion.cross_weight}
    return doc


def load_market(path: str) -> ConvexMarket:
    """从 JSON 文件读取市场"""
    try:
        with open(path, 'r', encoding=Config.OUTPUT_CONFIG['encoding']) as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"读取市场文件失败: {path}, {str(e)}")
        raise ParameterError(f"无法读取市场文件 {path}: {str(e)}") from e
    return market_from_dict(doc)


def solution_to_dict(solution: MarketSolution, market: Optional[ConvexMarket] = None) -> Dict[str, Any]:
    """
    市场解序列化（含拍卖询价轨迹）

    给定 market 时按求解者名称输出交易量
    """
    if market is not None:
        allocations = {s.name: x for s, x in zip(market.solvers, solution.allocations)}
    else:
        allocations = list(solution.allocations)
    return {
        'allocations': allocations,
        'routed': solution.routed,
        'price': solution.price,
        'welfare': solution.welfare,
        'feasibility_gap': solution.feasibility_gap,
        'corner': solution.corner,
        'converged': solution.converged,
        'transcript': [asdict(step) for step in solution.transcript],
    }


def random_market(rng: np.random.Generator, n_solvers: int, profile: str = 'smooth') -> ConvexMarket:
    """
    随机市场实例

    Args:
        rng: 随机数生成器
        n_solvers: 求解者数量
        profile: smooth 为一般光滑实例（两类效用随机混合）；
                 congestion 为对数效用、较强二次成本的实例，最优反应之间的相互作用足够弱

    Returns:
        市场实例
    """
    if n_solvers < 0:
        raise ParameterError(f"求解者数量不能为负: {n_solvers}")
    if profile not in ('smooth', 'congestion'):
        raise ParameterError(f"不支持的随机实例类型: {profile}")

    delta = float(rng.uniform(2.0, 20.0))
    cfmm = CfmmExchange(reserve_in=float(rng.uniform(80.0, 120.0)),
                        reserve_out=float(rng.uniform(80.0, 120.0)),
                        fee=float(rng.choice([0.0, 0.003])))

    solvers = []
    for i in range(n_solvers):
        if profile == 'congestion':
            utility = LogUtility(a=float(rng.uniform(2.5, 3.5)), b=float(rng.uniform(0.8, 1.2)))
            cost = SolverCost(linear=float(rng.uniform(0.0, 0.1)), quadratic=float(rng.uniform(1.0, 2.0)))
        elif rng.random() < 0.5:
            utility = LogUtility(a=float(rng.uniform(0.5, 2.5)), b=float(rng.uniform(0.5, 1.5)))
            cost = SolverCost(linear=float(rng.uniform(0.0, 0.2)), quadratic=float(rng.uniform(0.0, 0.3)))
        else:
            utility = QuadraticUtility(a=float(rng.uniform(0.5, 2.5)), q=float(rng.uniform(0.05, 0.5)))
            cost = SolverCost(linear=float(rng.uniform(0.0, 0.2)), quadratic=float(rng.uniform(0.0, 0.3)))
        quote = float(rng.uniform(0.3, 0.9)) * float(utility.value(delta)) / delta
        solvers.append(SolverProfile(name=f"solver_{i}", utility=utility, cost=cost, quote_price=quote))

    return ConvexMarket(delta=delta, cfmm=cfmm, solvers=tuple(solvers))
