#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
拥堵扩展模块
求解者成本依赖其他求解者的交易量：c̃_k(x) = c_k(x_k) + β x_k Σ_{j≠k} x_j
给定价格 ν，各求解者的供给取同时最优反应的不动点（阻尼 Jacobi 迭代），
再沿用独立成本下的降价搜索求出清价格
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError, NumericalFailure
from convex_market.profiles import (
    ConvexMarket, CongestionCost, solver_best_response, user_best_response,
)
from convex_market.dutch_auction import (
    AuctionStep, dual_value_and_gradient, descending_price_search, opening_price,
)

logger = logging.getLogger(__name__)


@dataclass
class CongestionComparison:
    """独立成本与拥堵成本下的出清价格比较"""

    independent_price: float
    congested_price: float
    independent_user_output: float
    congested_user_output: float
    independent_allocations: List[float]
    congested_allocations: List[float]
    converged: bool
    status: str
    transcript: List[AuctionStep]

    @property
    def price_drop(self) -> float:
        return self.independent_price - self.congested_price


def _costs_per_solver(market: ConvexMarket,
                      congestion: Union[CongestionCost, Sequence[CongestionCost]]) -> List[CongestionCost]:
    if isinstance(congestion, CongestionCost):
        return [congestion] * len(market.solvers)
    costs = list(congestion)
    if len(costs) != len(market.solvers):
        raise ParameterError(f"拥堵成本个数 {len(costs)} 与求解者个数 {len(market.solvers)} 不一致")
    return costs


def congested_supplies(market: ConvexMarket, costs: List[CongestionCost],
                       price: float) -> Tuple[List[float], int]:
    """
    价格 ν 下拥堵博弈的供给不动点

    以独立成本下的最优反应为初值，β = 0 时第一步即为不动点

    Returns:
        (供给, 迭代次数)

    Raises:
        NumericalFailure: 超过迭代上限仍未收敛
    """
    config = Config.NUMERIC_CONFIG
    damping = config['congestion_damping']
    tolerance = config['congestion_tolerance']

    x = [solver_best_response(s, price) for s in market.solvers]
    for iteration in range(1, config['congestion_maxiter'] + 1):
        total = sum(x)
        response = [
            solver_best_response(s, price, extra_marginal=cost.cross_weight * (total - xk))
            for s, cost, xk in zip(market.solvers, costs, x)
        ]
        change = max((abs(r - xk) for r, xk in zip(response, x)), default=0.0)
        if change <= tolerance * max(1.0, total):
            return response, iteration
        x = [(1.0 - damping) * xk + damping * r for xk, r in zip(x, response)]

    raise NumericalFailure(f"拥堵最优反应迭代在 ν={price} 处未收敛")


def user_output(market: ConvexMarket, price: float) -> float:
    """用户所得 G(δ - ỹ) + ν ỹ"""
    y = user_best_response(market.cfmm, market.delta, price)
    return float(market.cfmm.output(market.delta - y)) + price * y


def congestion_comparison(market: ConvexMarket,
                          congestion: Union[CongestionCost, Sequence[CongestionCost]]) -> CongestionComparison:
    """
    比较独立成本与拥堵成本下的出清价格

    Args:
        market: 市场
        congestion: 统一的拥堵成本，或每个求解者一个

    Returns:
        比较结果；最优反应迭代不收敛时 status 为 inconclusive，拥堵价格为 nan
    """
    costs = _costs_per_solver(market, congestion)
    start = opening_price(market)
    scale = max(1.0, market.delta)

    independent_gradient = lambda nu: dual_value_and_gradient(market, nu)[1]
    nu_ind, _, converged_ind = descending_price_search(independent_gradient, start, scale)
    x_ind = [solver_best_response(s, nu_ind) for s in market.solvers]

    def congested_gradient(nu: float) -> float:
        supplies, _ = congested_supplies(market, costs, nu)
        return user_best_response(market.cfmm, market.delta, nu) - sum(supplies)

    try:
        nu_cong, transcript, converged_cong = descending_price_search(congested_gradient, start, scale)
        x_cong, _ = congested_supplies(market, costs, nu_cong)
    except NumericalFailure as e:
        logger.warning(f"拥堵均衡不确定: {str(e)}")
        return CongestionComparison(
            independent_price=nu_ind, congested_price=math.nan,
            independent_user_output=user_output(market, nu_ind), congested_user_output=math.nan,
            independent_allocations=x_ind, congested_allocations=[],
            converged=False, status='inconclusive', transcript=[],
        )

    converged = converged_ind and converged_cong
    result = CongestionComparison(
        independent_price=nu_ind,
        congested_price=nu_cong,
        independent_user_output=user_output(market, nu_ind),
        congested_user_output=user_output(market, nu_cong),
        independent_allocations=x_ind,
        congested_allocations=x_cong,
        converged=converged,
        status='ok' if converged else 'inconclusive',
        transcript=transcript,
    )
    logger.info(f"拥堵比较完成: ν_ind={nu_ind:.10g}, ν_cong={nu_cong:.10g}")
    return result
