#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
原始-对偶荷兰式拍卖模块
对偶函数 h(ν) = sup_y [G(δ-y) + ν y] + Σ_k sup_x [u_k - c_k - ν x]，h'(ν) = ỹ - Σ x̃_k
拍卖从足够高的 ν 开始（所有求解者供给为 0），对 h' 做区间二分下降
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Tuple, Dict, Any

import numpy as np

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError
from convex_market.profiles import ConvexMarket, solver_best_response, user_best_response

logger = logging.getLogger(__name__)

ORACLE_MAX_SOLVERS = 3
STATIONARITY_TOLERANCE = 1e-6


@dataclass(frozen=True)
class AuctionStep:
    """拍卖记录中的一步：询价 ν、梯度 h'(ν) 与当前区间"""

    iteration: int
    price: float
    gradient: float
    lower: float
    upper: float


@dataclass
class MarketSolution:
    """
    市场解

    Args:
        allocations: 各求解者交易量 x_k*
        routed: 交给求解者的总量 y*
        price: 出清价格 ν*
        welfare: 社会福利
        feasibility_gap: |y* - Σ x_k*|
        corner: interior / all-cfmm / all-solver
        converged: 是否满足停止条件
        transcript: 拍卖询价轨迹
    """

    allocations: List[float]
    routed: float
    price: float
    welfare: float
    feasibility_gap: float
    corner: str = 'interior'
    converged: bool = True
    transcript: List[AuctionStep] = field(default_factory=list)


@dataclass(frozen=True)
class OptimalityReport:
    """最优性检验：平稳性、可行性、对偶间隙、价格非负"""

    stationarity_residual: float
    routing_residual: float
    feasibility_gap: float
    duality_gap: float
    price_nonnegative: bool
    ok: bool


def supplies(market: ConvexMarket, price: float) -> List[float]:
    """价格 ν 下各求解者的最优供给"""
    return [solver_best_response(s, price) for s in market.solvers]


def dual_value_and_gradient(market: ConvexMarket, price: float) -> Tuple[float, float]:
    """
    对偶函数值与导数

    Args:
        market: 市场
        price: ν >= 0

    Returns:
        (h(ν), h'(ν))，h 为凸函数，h' 关于 ν 不减
    """
    if price < 0:
        raise ParameterError(f"价格不能为负: {price}")

    y = user_best_response(market.cfmm, market.delta, price)
    value = float(market.cfmm.output(market.delta - y)) + price * y
    total_supply = 0.0
    for solver in market.solvers:
        x = solver_best_response(solver, price)
        total_supply += x
        if math.isinf(x):
            value = math.inf
        else:
            value += float(solver.surplus(x)) - price * x
    return value, y - total_supply


def opening_price(market: ConvexMarket) -> float:
    """起拍价：不低于所有求解者的 u'(0) - c'(0) 与 CFMM 的 g(0)"""
    candidates = [float(market.cfmm.marginal(0.0)), 0.0]
    candidates.extend(float(s.marginal_surplus(0.0)) for s in market.solvers)
    return 1.01 * max(candidates) + 1e-12


def descending_price_search(gradient: Callable[[float], float], start: float, scale: float
                            ) -> Tuple[float, List[AuctionStep], bool]:
    """
    从 start 开始下降，对不减函数 gradient 在 [0, start] 上二分至 |gradient| < tol·scale

    Returns:
        (ν*, 询价轨迹, 是否满足停止条件)
    """
    config = Config.NUMERIC_CONFIG
    tol = config['dual_tolerance'] * scale
    upper, lower = start, 0.0

    g_upper = gradient(upper)
    transcript = [AuctionStep(0, upper, g_upper, lower, upper)]
    if abs(g_upper) < tol:
        return upper, transcript, True

    price, converged = upper, False
    for iteration in range(1, config['dual_maxiter'] + 1):
        price = 0.5 * (lower + upper)
        g = gradient(price)
        if abs(g) < tol:
            transcript.append(AuctionStep(iteration, price, g, lower, upper))
            converged = True
            break
        if g > 0:
            upper = price
        else:
            lower = price
        transcript.append(AuctionStep(iteration, price, g, lower, upper))
        if upper - lower <= 4.0 * np.finfo(float).eps * max(upper, 1e-300):
            break

    return price, transcript, converged


def classify_corner(routed: float, delta: float) -> str:
    tol = 1e-12 * max(1.0, delta)
    if routed <= tol:
        return 'all-cfmm'
    if routed >= delta - tol:
        return 'all-solver'
    return 'interior'


def run_dutch_auction(market: ConvexMarket) -> MarketSolution:
    """
    原始-对偶荷兰式拍卖

    从起拍价开始逐步降价询问各求解者的最优供给，直到用户需求与总供给平衡

    Args:
        market: 市场

    Returns:
        市场解；h' 在 [0, ν₀] 上不变号时报告角点解而非失败
    """
    if not market.solvers and market.delta <= 0:
        raise ParameterError("市场至少需要一个求解者或正的用户需求")

    logger.info(f"开始荷兰式拍卖: δ={market.delta}, {len(market.solvers)} 个求解者")
    start = opening_price(market)
    gradient = lambda nu: dual_value_and_gradient(market, nu)[1]
    price, transcript, converged = descending_price_search(gradient, start, max(1.0, market.delta))

    allocations = supplies(market, price)
    routed = user_best_response(market.cfmm, market.delta, price)
    if not converged:
        logger.warning(f"荷兰式拍卖未满足停止条件: ν={price}, h'={transcript[-1].gradient}")

    solution = MarketSolution(
        allocations=allocations,
        routed=routed,
        price=price,
        welfare=market.welfare(allocations, routed),
        feasibility_gap=abs(routed - sum(allocations)),
        corner=classify_corner(routed, market.delta),
        converged=converged,
        transcript=transcript,
    )
    logger.info(f"荷兰式拍卖完成: ν*={price:.10g}, 福利={solution.welfare:.10g}, "
                f"{len(transcript)} 次询价, {solution.corner}")
    return solution


def _solver_upper(market: ConvexMarket, idx: int) -> float:
    return min(market.delta, market.solvers[idx].cost.upper)


def _grid_welfare(market: ConvexMarket, axes: List[np.ndarray]) -> Tuple[np.ndarray, List[np.ndarray]]:
    """网格上的福利，超出 Σx <= δ 的点记为 -inf"""
    mesh = np.meshgrid(*axes, indexing='ij')
    total = np.zeros_like(mesh[0])
    for solver, x in zip(market.solvers, mesh):
        total = total + solver.surplus(x)
    routed = sum(mesh)
    feasible = routed <= market.delta * (1.0 + 1e-12)
    values = np.where(feasible, total + market.cfmm.output(np.maximum(market.delta - routed, 0.0)), -np.inf)
    return values, mesh


def direct_welfare_oracle(market: ConvexMarket, grid_step: float = 1e-4) -> MarketSolution:
    """
    暴力网格求解社会福利最大化问题（校验用）

    先粗网格定位，再在最优点附近逐级加密到 grid_step

    Args:
        market: 市场，至多 3 个求解者
        grid_step: 最终网格步长

    Returns:
        市场解（价格取 CFMM 在最优路由处的边际价格）
    """
    dims = len(market.solvers)
    if dims > ORACLE_MAX_SOLVERS:
        raise ParameterError(f"网格校验至多支持 {ORACLE_MAX_SOLVERS} 个求解者: {dims}")
    if not grid_step > 0:
        raise ParameterError(f"网格步长必须为正: {grid_step}")

    delta = market.delta
    if dims == 0 or delta == 0:
        allocations = [0.0] * dims
        return MarketSolution(allocations=allocations, routed=0.0,
                              price=float(market.cfmm.marginal(delta)),
                              welfare=market.welfare(allocations, 0.0),
                              feasibility_gap=0.0, corner='all-cfmm')

    points = 401 if dims < 3 else 81
    uppers = [_solver_upper(market, i) for i in range(dims)]
    steps = [u / (points - 1) if u > 0 else 0.0 for u in uppers]
    axes = [np.linspace(0.0, u, points) for u in uppers]

    while True:
        values, mesh = _grid_welfare(market, axes)
        best = np.unravel_index(int(np.argmax(values)), values.shape)
        center = [float(m[best]) for m in mesh]
        if max(steps) <= grid_step:
            break
        # 在最优点 ±5 步内加密
        new_axes, new_steps = [], []
        for c, h, u in zip(center, steps, uppers):
            lo, hi = max(0.0, c - 5.0 * h), min(u, c + 5.0 * h)
            new_axes.append(np.linspace(lo, hi, 41))
            new_steps.append((hi - lo) / 40.0)
        axes, steps = new_axes, new_steps

    allocations = center
    routed = sum(allocations)
    return MarketSolution(
        allocations=allocations,
        routed=routed,
        price=float(market.cfmm.marginal(delta - routed)),
        welfare=float(values[best]),
        feasibility_gap=0.0,
        corner=classify_corner(routed, delta),
    )


def check_optimality(market: ConvexMarket, solution: MarketSolution,
                     tolerance: float = STATIONARITY_TOLERANCE) -> OptimalityReport:
    """
    检验拍卖结果的最优性条件

    内点处 u_k'(x) - c_k'(x) = ν、g(δ - y) = ν；边界与预算上限处检验 ν 落在次微分区间内

    Returns:
        最优性检验报告
    """
    nu = solution.price
    stationarity = 0.0
    for solver, x in zip(market.solvers, solution.allocations):
        marginal = float(solver.marginal_surplus(x))
        if x <= 0.0:
            residual = max(0.0, marginal - nu)
        elif x >= solver.cost.upper:
            residual = max(0.0, nu - marginal)
        else:
            residual = abs(marginal - nu)
        stationarity = max(stationarity, residual)

    y, delta = solution.routed, market.delta
    g = float(market.cfmm.marginal(delta - y))
    if delta <= 0:
        routing = 0.0
    elif y <= 0.0:
        routing = max(0.0, nu - g)
    elif y >= delta:
        routing = max(0.0, g - nu)
    else:
        routing = abs(g - nu)

    dual_value, _ = dual_value_and_gradient(market, nu)
    duality_gap = abs(dual_value - solution.welfare)
    nonnegative = nu >= 0.0
    ok = (stationarity < tolerance and routing < tolerance and duality_gap < tolerance
          and solution.feasibility_gap < 1e-8 and nonnegative)
    return OptimalityReport(stationarity, routing, solution.feasibility_gap, duality_gap, nonnegative, ok)


def solution_summary(solution: MarketSolution) -> Dict[str, Any]:
    """单行汇总，供实验表使用"""
    return {
        'price': solution.price,
        'welfare': solution.welfare,
        'routed': solution.routed,
        'feasibility_gap': solution.feasibility_gap,
        'corner': solution.corner,
        'converged': solution.converged,
        'queries': len(solution.transcript),
    }
