#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
拥堵努力模块
价格族 F(p,e) = p^e（[0,1] 上），努力成本 c(k,e) = α(k) e² / 2
对称均衡努力 e* 满足 α(k) e (1 + e k)² = 1
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import pandas as pd

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError
from distributions.numerics import bisect_root
from distributions.order_statistics import MonteCarloEstimate

logger = logging.getLogger(__name__)

# 拥堵函数族：α(k) = scale * k^exponent
REGIME_EXPONENTS = {
    'sublinear': 0.5,
    'linear': 1.0,
    'superlinear': 2.0,
}

SECOND_ORDER_TOLERANCE = 1e-6


@dataclass(frozen=True)
class CongestionFunction:
    """拥堵函数 α(k)"""

    regime: str = 'linear'
    scale: float = 1.0

    def __post_init__(self):
        if self.regime not in REGIME_EXPONENTS:
            raise ParameterError(f"不支持的拥堵类型: {self.regime}")
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ParameterError(f"拥堵系数必须为正: {self.scale}")

    @property
    def exponent(self) -> float:
        return REGIME_EXPONENTS[self.regime]

    def __call__(self, k: float) -> float:
        return self.scale * float(k) ** self.exponent


@dataclass(frozen=True)
class EffortModel:
    """
    努力模型

    Args:
        congestion: 拥堵函数 α(·)
        entrants: 进入后的求解者数量 k >= 1
    """

    congestion: CongestionFunction
    entrants: int

    def __post_init__(self):
        if int(self.entrants) != self.entrants or self.entrants < 1:
            raise ParameterError(f"进入者数量必须为正整数: {self.entrants}")

    @property
    def alpha(self) -> float:
        return self.congestion(self.entrants)


@dataclass(frozen=True)
class EffortEquilibrium:
    """对称努力均衡"""

    effort: float
    revenue: float
    residual: float
    entrants: int
    alpha: float


def foc_residual(alpha: float, k: int, e: float) -> float:
    """α e (1 + e k)² - 1"""
    return alpha * e * (1.0 + e * k) ** 2 - 1.0


def solve_effort(model: EffortModel) -> EffortEquilibrium:
    """
    求解均衡努力 e*

    左端关于 e 从 0 严格递增，在 [0, 1/α(k)] 上二分

    Args:
        model: 努力模型

    Returns:
        努力均衡（含收入与一阶条件残差）
    """
    alpha = model.alpha
    k = int(model.entrants)
    e_star = bisect_root(lambda e: foc_residual(alpha, k, e), 0.0, 1.0 / alpha)
    return EffortEquilibrium(
        effort=e_star,
        revenue=equilibrium_revenue(e_star, k),
        residual=foc_residual(alpha, k, e_star),
        entrants=k,
        alpha=alpha,
    )


def interim_revenue_term(p: float, k: int, e_star: float) -> float:
    """
    S(p, k, e*) = ∫_0^p F(x, e*)^{k-1} dx = p^{(k-1)e*+1} / ((k-1)e* + 1)

    Args:
        p: 价格，0 <= p <= 1
        k: 求解者数量
        e_star: 均衡努力
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"价格必须位于 [0,1]: {p}")
    if not e_star > 0:
        raise ParameterError(f"努力必须为正: {e_star}")
    if k < 1:
        raise ParameterError(f"求解者数量至少为 1: {k}")
    power = (k - 1) * e_star + 1.0
    return p ** power / power


def equilibrium_revenue(e_star: float, k: int) -> float:
    """
    用户期望收入 [e*(k-1)/(1+e*(k-1))] · [e*k/(1+e*k)]

    即 k 个 p^{e*} 抽样中第二高价格的期望；k < 2 或 e* = 0 时为 0
    """
    if k < 2 or e_star <= 0.0:
        return 0.0
    if math.isinf(e_star):
        return 1.0
    a = e_star * (k - 1)
    b = e_star * k
    return (a / (1.0 + a)) * (b / (1.0 + b))


def best_response_profit(model: EffortModel, e: float, e_star: float) -> float:
    """
    其余求解者取 e* 时单个求解者选择努力 e 的期望利润

    e / ((m+1)(m+1+e)) - α(k) e² / 2，m = (k-1) e*
    """
    m = (model.entrants - 1) * e_star
    return e / ((m + 1.0) * (m + 1.0 + e)) - model.alpha * e * e / 2.0


def second_order_check(model: EffortModel, e_star: float, grid_points: int = 601) -> bool:
    """在 [0, 3e*] 网格上检验 e* 是单个求解者的全局最优反应"""
    grid = np.linspace(0.0, 3.0 * e_star, grid_points)
    best = max(best_response_profit(model, e, e_star) for e in grid)
    return best <= best_response_profit(model, e_star, e_star) + SECOND_ORDER_TOLERANCE


def simulate_revenue(e_star: float, k: int, trials: int, rng_seed: int) -> MonteCarloEstimate:
    """
    收入公式的蒙特卡洛校验：k 个 p^{e*} 分布抽样（逆变换 u^{1/e*}）中第二高者的均值
    """
    if k < 2:
        raise ParameterError(f"模拟收入需要 k >= 2: {k}")
    if trials < 1:
        raise ParameterError(f"试验次数至少为 1: {trials}")

    rng = np.random.default_rng(rng_seed)
    rows = max(1, Config.NUMERIC_CONFIG['mc_chunk_size'] // k)
    second = np.empty(trials)
    for start in range(0, trials, rows):
        stop = min(start + rows, trials)
        block = rng.random((stop - start, k)) ** (1.0 / e_star)
        second[start:stop] = np.partition(block, k - 2, axis=1)[:, k - 2]

    std_error = float(second.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.inf
    return MonteCarloEstimate(float(second.mean()), std_error, trials)


def welfare_vs_entry(regime: str, k_grid: Iterable[int], scale: float = 1.0) -> pd.DataFrame:
    """
    给定拥堵类型，计算各 k 下的均衡努力与用户收入

    Args:
        regime: sublinear / linear / superlinear
        k_grid: 递增的进入者数量，k >= 2
        scale: 拥堵系数

    Returns:
        DataFrame，列: regime, k, alpha, effort, effort_times_k, revenue, residual, second_order_ok
    """
    ks = [int(k) for k in k_grid]
    if any(k < 2 for k in ks):
        raise ParameterError(f"k_grid 中的 k 必须 >= 2: {ks}")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ParameterError(f"k_grid 必须严格递增: {ks}")

    congestion = CongestionFunction(regime, scale)
    logger.info(f"开始计算努力均衡: {regime}, {len(ks)} 个 k")

    rows = []
    for k in ks:
        model = EffortModel(congestion, k)
        eq = solve_effort(model)
        rows.append({
            'regime': regime,
            'k': k,
            'alpha': eq.alpha,
            'effort': eq.effort,
            'effort_times_k': eq.effort * k,
            'revenue': eq.revenue,
            'residual': eq.residual,
            'second_order_ok': second_order_check(model, eq.effort),
        })

    df = pd.DataFrame(rows)
    logger.info(f"努力均衡计算完成: {regime}, 收入趋势 {revenue_trend(df['revenue'])}")
    return df


def revenue_trend(revenue: pd.Series) -> str:
    """收入序列的单调性：increasing / decreasing / constant / mixed"""
    diffs = np.diff(np.asarray(revenue, dtype=float))
    if len(diffs) == 0 or np.all(diffs == 0):
        return 'constant'
    if np.all(diffs > 0):
        return 'increasing'
    if np.all(diffs < 0):
        return 'decreasing'
    return 'mixed'
