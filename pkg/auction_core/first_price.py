#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
一阶价格（荷兰式）拍卖模块
均衡报价折让、中期利润 S(p,k)、事前利润 S(k)、收入等价校验

计数约定：
    num_bidders     拍卖中的求解者总数 k
    num_competitors 每个求解者面对的对手数 k - 1
报价折让公式中的 F^{k-1} 与利润 S(p, k) 中的 F^k 都使用 num_competitors 作为指数
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np
import pandas as pd
from scipy import special

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError, DivergenceError
from distributions.numerics import integrate_adaptive
from distributions.price_distributions import PriceDistribution, Exponential, UniformUnit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AuctionContext:
    """
    拍卖环境

    Args:
        price_dist: 私有价格分布
        public_price: 公开报价 p*（CFMM 报价，即保留价）
        num_bidders: 参与拍卖的求解者数 k >= 1
    """

    price_dist: PriceDistribution
    public_price: float = 0.0
    num_bidders: int = 2

    def __post_init__(self):
        if not (math.isfinite(self.public_price) and self.public_price >= 0):
            raise ParameterError(f"公开报价 p* 必须为非负有限值: {self.public_price}")
        if int(self.num_bidders) != self.num_bidders or self.num_bidders < 1:
            raise ParameterError(f"求解者数量必须为正整数: {self.num_bidders}")

    @property
    def num_competitors(self) -> int:
        """每个求解者的对手数 k - 1"""
        return int(self.num_bidders) - 1

    @classmethod
    def with_competitors(cls, price_dist: PriceDistribution, num_competitors: int,
                         public_price: float = 0.0) -> 'AuctionContext':
        """按对手数构造（与利润公式 S(p, k) 的 k 一致）"""
        return cls(price_dist, public_price, int(num_competitors) + 1)


@dataclass(frozen=True)
class FirstPriceRecord:
    """一阶价格拍卖模拟结果"""

    winner_price_mean: float
    revenue_mean: float
    solver_profit_mean: float
    fill_rate: float
    revenue_std_error: float
    trials: int


def _exponential_gap_series(u: float, u_low: float, m: int) -> float:
    """
    Σ_{i>m} (u^{i-m} - u_low^i / u^m) / i

    指数分布下 λ∫F^m dx / F^m(p) 的级数形式，u <= 0.9 时几百项即收敛到机器精度
    """
    terms = int(math.ceil(math.log(1e-18) / math.log(u))) + 2
    i = np.arange(m + 1, m + 1 + terms, dtype=float)
    j = i - m
    total = np.exp(j * math.log(u)) / i
    if u_low > 0:
        total = total - np.exp(m * math.log(u_low / u) + j * math.log(u_low)) / i
    return float(total.sum())


def _integral_ratio(dist: PriceDistribution, lower: float, p: float, m: int) -> float:
    """
    (∫_{lower}^{p} F^m(x) dx) / F^m(p)，要求 F(p) > 0

    均匀分布与指数分布（F(p) <= 0.9）走解析式，其余走自适应积分
    """
    if m == 0:
        return p - lower

    if isinstance(dist, UniformUnit) and p <= 1.0:
        low = max(lower, 0.0)
        return (p - low * (low / p) ** m) / (m + 1)

    Fp = float(dist.cdf(p))
    if isinstance(dist, Exponential) and Fp <= 0.9:
        F_low = float(dist.cdf(lower))
        return _exponential_gap_series(Fp, F_low, m) / dist.rate

    start = max(lower, dist.support_lower)
    integral = integrate_adaptive(lambda x: float(dist.cdf(x)) ** m, start, p)
    return integral / Fp ** m


def shade_bid(ctx: AuctionContext, p: float) -> float:
    """
    均衡报价 p̃ = p - ∫_{p*}^{p} F^{k-1}(x) dx / F^{k-1}(p)

    Args:
        ctx: 拍卖环境
        p: 求解者的私有价格，p >= p*

    Returns:
        报价，满足 p* <= p̃ <= p；F(p) = 0 时退化为 p*
    """
    p_star = ctx.public_price
    if p < p_star:
        raise ParameterError(f"私有价格低于公开报价: p={p} < p*={p_star}")

    m = ctx.num_competitors
    if m == 0 or p == p_star:
        return p_star

    Fp = float(ctx.price_dist.cdf(p))
    if Fp == 0.0:
        return p_star

    bid = p - _integral_ratio(ctx.price_dist, p_star, p, m)
    return min(max(bid, p_star), p)


@lru_cache(maxsize=64)
def _shading_table(ctx: AuctionContext):
    """分位数网格上的报价表，供向量化插值使用"""
    dist = ctx.price_dist
    m = ctx.num_competitors
    size = Config.NUMERIC_CONFIG['shading_table_size']

    u_low = float(dist.cdf(ctx.public_price))
    u_high = 1.0 - 1e-9 if not math.isfinite(dist.support_upper) else 1.0
    grid = np.maximum(dist.quantile(np.linspace(u_low, u_high, size)), ctx.public_price)

    cumulative = np.zeros(size)
    F_m = lambda x: float(dist.cdf(x)) ** m
    for idx in range(1, size):
        start = max(grid[idx - 1], dist.support_lower)
        cumulative[idx] = cumulative[idx - 1] + integrate_adaptive(F_m, start, grid[idx])

    F_grid = dist.cdf(grid) ** m
    with np.errstate(divide='ignore', invalid='ignore'):
        bids = np.where(F_grid > 0, grid - cumulative / F_grid, ctx.public_price)
    bids = np.clip(bids, ctx.public_price, grid)
    logger.debug(f"构建报价表: {dist.kind}, k={ctx.num_bidders}, {size} 个节点")
    return grid, bids


def shade_bids(ctx: AuctionContext, prices: np.ndarray) -> np.ndarray:
    """
    向量化报价折让

    均匀分布使用解析式，其余分布在分位数网格上插值（网格以上 F ≈ 1，报价趋于常数）
    """
    prices = np.asarray(prices, dtype=float)
    p_star = ctx.public_price
    m = ctx.num_competitors
    if m == 0:
        return np.full(prices.shape, p_star)

    if isinstance(ctx.price_dist, UniformUnit) and np.all(prices <= 1.0):
        safe = np.maximum(prices, max(p_star, 1e-300))
        bids = safe - (safe - p_star * (p_star / safe) ** m) / (m + 1)
        return np.where(prices > p_star, np.clip(bids, p_star, prices), p_star)

    grid, table = _shading_table(ctx)
    bids = np.interp(prices, grid, table)
    return np.where(prices > p_star, np.clip(bids, p_star, prices), p_star)


def interim_profit(ctx: AuctionContext, p: float) -> float:
    """
    中期期望利润 S(p, k) = ∫_{p*}^{p} F^k(x) dx，k 为对手数

    Args:
        ctx: 拍卖环境（指数取 ctx.num_competitors）
        p: 私有价格

    Returns:
        非负利润，p <= p* 时为 0
    """
    p_star = ctx.public_price
    if p <= p_star:
        return 0.0

    k = ctx.num_competitors
    if k == 0:
        return p - p_star

    Fp = float(ctx.price_dist.cdf(p))
    if Fp == 0.0:
        return 0.0
    return _integral_ratio(ctx.price_dist, p_star, p, k) * Fp ** k


def exante_profit_quadrature(dist: PriceDistribution, num_competitors: int,
                             public_price: float = 0.0) -> float:
    """
    事前利润的直接数值积分 S(k) = ∫_{p*}^{p̄} F^k(p) (1 - F(p)) dp

    Raises:
        DivergenceError: 分布均值无穷时积分发散
    """
    if dist.heavy_tailed:
        raise DivergenceError(f"{dist.kind} 分布均值无穷，S({num_competitors}) 发散")

    k = int(num_competitors)
    lower = max(public_price, dist.support_lower)
    upper = dist.integration_upper()
    if upper <= lower:
        return 0.0

    peak = float(dist.quantile(k / (k + 1.0)))
    integrand = lambda p: float(dist.cdf(p)) ** k * (1.0 - float(dist.cdf(p)))
    return integrate_adaptive(integrand, lower, upper, points=[peak])


@lru_cache(maxsize=None)
def _exante_profit_integer(dist: PriceDistribution, k: int, public_price: float) -> float:
    if dist.heavy_tailed:
        logger.warning(f"{dist.kind} 分布均值无穷，S({k}) = inf")
        return math.inf
    if public_price == 0.0:
        if isinstance(dist, Exponential):
            return 1.0 / ((k + 1) * dist.rate)
        if isinstance(dist, UniformUnit):
            return 1.0 / ((k + 1) * (k + 2))
    return exante_profit_quadrature(dist, k, public_price)


def exante_profit_value(dist: PriceDistribution, num_competitors: float,
                        public_price: float = 0.0) -> float:
    """
    事前期望利润 S(k)，k 可为实数（相邻整数间线性插值）

    Args:
        dist: 价格分布
        num_competitors: 对手数 k >= 0
        public_price: 公开报价 p*

    Returns:
        S(k)；均值无穷的分布返回 math.inf
    """
    if num_competitors < 0:
        raise ParameterError(f"对手数不能为负: {num_competitors}")

    low = math.floor(num_competitors)
    weight = num_competitors - low
    value_low = _exante_profit_integer(dist, int(low), float(public_price))
    if weight == 0.0:
        return value_low
    value_high = _exante_profit_integer(dist, int(low) + 1, float(public_price))
    return (1.0 - weight) * value_low + weight * value_high


def exante_profit(ctx: AuctionContext) -> float:
    """事前期望利润 S(k)，k = ctx.num_competitors"""
    return exante_profit_value(ctx.price_dist, ctx.num_competitors, ctx.public_price)


def exante_profit_curve(dist: PriceDistribution, k_grid: Iterable[int],
                        public_price: float = 0.0) -> pd.DataFrame:
    """
    S(k) 曲线及递增差分检验

    Returns:
        DataFrame，列: k, exante_profit, decrement (S(k)-S(k+1))
    """
    ks = sorted(int(k) for k in k_grid)
    values = [exante_profit_value(dist, k, public_price) for k in ks]
    df = pd.DataFrame({'k': ks, 'exante_profit': values})
    df['decrement'] = df['exante_profit'] - df['exante_profit'].shift(-1)
    return df


def second_price_revenue(ctx: AuctionContext) -> float:
    """
    二价拍卖的解析期望收入（收入等价下即一阶价格拍卖收入）

    R = p* P(p_{k:k} > p*) + ∫_{p*}^{∞} P(p_{k-1:k} > t) dt
    """
    dist = ctx.price_dist
    k = int(ctx.num_bidders)
    p_star = ctx.public_price
    reserve_part = p_star * (1.0 - float(dist.cdf(p_star)) ** k)
    if k == 1:
        return reserve_part
    if dist.tail_index * 2.0 <= 1.0:
        return math.inf

    upper = dist.integration_upper()
    if upper <= p_star:
        return reserve_part
    survival = lambda t: 1.0 - float(special.betainc(k - 1, 2, dist.cdf(t)))
    return reserve_part + integrate_adaptive(survival, p_star, upper, points=[dist.support_lower])


def simulate_first_price(ctx: AuctionContext, trials: int, rng_seed: int) -> FirstPriceRecord:
    """
    一阶价格拍卖的蒙特卡洛模拟：每个求解者按均衡折让报价，最高且高于 p* 的报价成交

    Args:
        ctx: 拍卖环境，num_bidders >= 2
        trials: 试验次数
        rng_seed: 随机种子

    Returns:
        胜者价格、收入、单个求解者利润的均值
    """
    if trials < 1:
        raise ParameterError(f"试验次数至少为 1: {trials}")
    if ctx.num_bidders < 2:
        raise ParameterError(f"模拟需要至少两个求解者: {ctx.num_bidders}")

    k = int(ctx.num_bidders)
    rng = np.random.default_rng(rng_seed)
    rows = max(1, Config.NUMERIC_CONFIG['mc_chunk_size'] // k)

    winner = np.empty(trials)
    filled_all = np.empty(trials, dtype=bool)
    revenue = np.empty(trials)
    profit = np.empty(trials)
    for start in range(0, trials, rows):
        stop = min(start + rows, trials)
        top = ctx.price_dist.draw(rng, (stop - start, k)).max(axis=1)
        filled = top > ctx.public_price
        payment = shade_bids(ctx, top)
        filled_all[start:stop] = filled
        winner[start:stop] = np.where(filled, top, 0.0)
        revenue[start:stop] = np.where(filled, payment, 0.0)
        profit[start:stop] = np.where(filled, top - payment, 0.0)

    std_error = float(revenue.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.inf
    return FirstPriceRecord(
        winner_price_mean=float(winner.mean()),
        revenue_mean=float(revenue.mean()),
        solver_profit_mean=float(profit.mean() / k),
        fill_rate=float(filled_all.mean()),
        revenue_std_error=std_error,
        trials=trials,
    )
