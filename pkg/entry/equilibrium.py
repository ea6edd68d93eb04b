#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
进入均衡模块
门槛成本 c̄ 满足 Σ_k C(n,k) F_C(c̄)^k (1-F_C(c̄))^{n-k} S(k) = c̄，期望进入者 k* = n F_C(c̄)
"""

import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np
from numpy.polynomial import hermite_e
from scipy import stats

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError
from distributions.numerics import bisect_root
from distributions.price_distributions import PriceDistribution, Exponential, UniformUnit
from distributions.cost_distributions import CostDistribution
from auction_core.first_price import exante_profit_value

logger = logging.getLogger(__name__)

# 均匀价格闭式解在 (n+2)q 很小时相消严重，改用直接求和
UNIFORM_CLOSED_FORM_CUTOFF = 1e-3


@dataclass(frozen=True)
class MarketConfig:
    """
    有进入成本的市场

    Args:
        n: 潜在求解者数量（n = 0 视为空市场）
        price_dist: 私有价格分布
        cost_dist: 进入成本分布
        public_price: 公开报价 p*
    """

    n: int
    price_dist: PriceDistribution
    cost_dist: CostDistribution
    public_price: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ParameterError(f"潜在求解者数量必须为非负整数: {self.n}")
        if not (math.isfinite(self.public_price) and self.public_price >= 0):
            raise ParameterError(f"公开报价 p* 必须为非负有限值: {self.public_price}")


@dataclass(frozen=True)
class EntryEquilibrium:
    """进入均衡：门槛成本、期望进入者数量、门槛方程残差"""

    threshold: float
    expected_entrants: float
    residual: float
    n: int
    empty_market: bool = False
    unbounded: bool = False

    @property
    def entrant_share(self) -> float:
        """k*/n"""
        return self.expected_entrants / self.n if self.n > 0 else 0.0


def exponential_closed_form(n: int, q: float, rate: float) -> float:
    """指数价格、p* = 0：(1 - (1-q)^{n+1}) / ((n+1) λ q)"""
    if q == 0.0:
        return 1.0 / rate
    if q >= 1.0:
        return 1.0 / ((n + 1) * rate)
    return -math.expm1((n + 1) * math.log1p(-q)) / ((n + 1) * rate * q)


def uniform_closed_form(n: int, q: float) -> float:
    """
    均匀价格、p* = 0 时 E[1/((K+1)(K+2))]，K ~ Binomial(n, q)

    = (1 - r^{n+1}) / ((n+1) q) - [(1 - r^{n+2})/(n+2) - r (1 - r^{n+1})/(n+1)] / q²，r = 1 - q
    """
    if q == 0.0:
        return 0.5
    if q >= 1.0:
        return 1.0 / ((n + 1) * (n + 2))
    r = 1.0 - q
    one_minus_rn1 = -math.expm1((n + 1) * math.log1p(-q))
    one_minus_rn2 = -math.expm1((n + 2) * math.log1p(-q))
    first = one_minus_rn1 / ((n + 1) * q)
    second = (one_minus_rn2 / (n + 2) - r * one_minus_rn1 / (n + 1)) / (q * q)
    return first - second


def binomial_sum_direct(price_dist: PriceDistribution, n: int, q: float, public_price: float = 0.0) -> float:
    """
    二项加权和的直接求和：对数空间二项权重 + 补偿求和

    Args:
        price_dist: 价格分布
        n: 潜在求解者数量
        q: 进入概率 F_C(c̄)
        public_price: 公开报价 p*

    Returns:
        Σ_k C(n,k) q^k (1-q)^{n-k} S(k)
    """
    if not 0.0 <= q <= 1.0:
        raise ParameterError(f"进入概率必须位于 [0,1]: {q}")
    ks = np.arange(n + 1)
    weights = np.exp(stats.binom.logpmf(ks, n, q))
    terms = []
    for k, w in zip(ks, weights):
        if w == 0.0:
            continue
        terms.append(w * exante_profit_value(price_dist, int(k), public_price))
    return math.fsum(terms)


def binomial_expected_profit_direct(cfg: MarketConfig, c_bar: float) -> float:
    """门槛方程左端的直接求和"""
    return binomial_sum_direct(cfg.price_dist, cfg.n, float(cfg.cost_dist.cdf(c_bar)), cfg.public_price)


def binomial_expected_profit_normal(cfg: MarketConfig, c_bar: float) -> float:
    """大 n 时用 Binomial 的正态近似，在 Hermite 节点处计算 S（实数 k 线性插值）"""
    q = cfg.cost_dist.cdf(c_bar)
    mean = cfg.n * q
    sd = math.sqrt(cfg.n * q * (1.0 - q))
    nodes, weights = hermite_e.hermegauss(Config.NUMERIC_CONFIG['normal_approx_nodes'])
    ks = np.clip(mean + sd * nodes, 0.0, cfg.n)
    values = [exante_profit_value(cfg.price_dist, float(k), cfg.public_price) for k in ks]
    return math.fsum(w * v for w, v in zip(weights, values)) / math.sqrt(2.0 * math.pi)


def binomial_expected_profit(cfg: MarketConfig, c_bar: float) -> float:
    """
    门槛方程左端：以门槛成本 c̄ 进入的求解者的期望拍卖利润

    指数、均匀价格（p* = 0）使用闭式解；其余分布 n 较小时直接求和，n 较大时正态近似

    Args:
        cfg: 市场配置
        c_bar: 门槛成本，c̄ >= 0

    Returns:
        期望利润；F_C(c̄) = 0 时为 S(0)
    """
    if c_bar < 0:
        raise ParameterError(f"门槛成本不能为负: {c_bar}")

    dist = cfg.price_dist
    q = float(cfg.cost_dist.cdf(c_bar))
    if q == 0.0 or cfg.n == 0:
        return exante_profit_value(dist, 0, cfg.public_price)
    if dist.heavy_tailed:
        return math.inf

    if cfg.public_price == 0.0:
        if isinstance(dist, Exponential):
            return exponential_closed_form(cfg.n, q, dist.rate)
        if isinstance(dist, UniformUnit) and (cfg.n + 2) * q >= UNIFORM_CLOSED_FORM_CUTOFF:
            return uniform_closed_form(cfg.n, q)
        if isinstance(dist, UniformUnit):
            return binomial_expected_profit_direct(cfg, c_bar)

    if cfg.n > Config.NUMERIC_CONFIG['normal_approx_threshold']:
        return binomial_expected_profit_normal(cfg, c_bar)
    return binomial_expected_profit_direct(cfg, c_bar)


def solve_entry_threshold(cfg: MarketConfig) -> EntryEquilibrium:
    """
    求解门槛方程 LHS(c̄) = c̄

    LHS 关于 c̄ 不增、右端严格递增，在 [0, S(0)] 上二分

    Args:
        cfg: 市场配置

    Returns:
        进入均衡；S(0) 无穷时 c̄ = inf、k* = n；S(0) 可忽略时为空市场
    """
    s0 = exante_profit_value(cfg.price_dist, 0, cfg.public_price)

    if math.isinf(s0):
        logger.info(f"S(0) 无穷，全部 {cfg.n} 个潜在求解者进入")
        return EntryEquilibrium(threshold=math.inf, expected_entrants=float(cfg.n),
                                residual=0.0, n=cfg.n, unbounded=True)

    if s0 <= np.finfo(float).tiny:
        logger.warning(f"S(0) = {s0} 低于最小可表示成本，市场为空")
        return EntryEquilibrium(threshold=0.0, expected_entrants=0.0, residual=s0,
                                n=cfg.n, empty_market=True)

    if cfg.n == 0:
        return EntryEquilibrium(threshold=s0, expected_entrants=0.0, residual=0.0,
                                n=0, empty_market=True)

    gap = lambda c: binomial_expected_profit(cfg, c) - c
    if gap(s0) >= 0.0:
        c_bar = s0
    else:
        c_bar = bisect_root(gap, 0.0, s0)

    residual = gap(c_bar)
    k_star = cfg.n * float(cfg.cost_dist.cdf(c_bar))
    logger.debug(f"n={cfg.n}: c_bar={c_bar:.6g}, k*={k_star:.6g}, 残差={residual:.3g}")
    return EntryEquilibrium(threshold=c_bar, expected_entrants=k_star, residual=residual,
                            n=cfg.n, empty_market=k_star == 0.0)


def loglog_slope(n_values: List[float], k_values: List[float]) -> float:
    """
    最大一半 n 上 log k* 对 log n 的最小二乘斜率

    Returns:
        斜率；有效点不足两个时为 nan
    """
    pairs = [(n, k) for n, k in zip(n_values, k_values)
             if n > 0 and k is not None and np.isfinite(k) and k > 0]
    if len(pairs) < 2:
        return math.nan
    pairs = pairs[len(pairs) // 2:] if len(pairs) >= 4 else pairs[-2:]
    x = np.log([p[0] for p in pairs])
    y = np.log([p[1] for p in pairs])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
