#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
次序统计量模块
极端间距 ES(k)、第 j 次序统计量的期望（蒙特卡洛与数值积分两种算法）
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import special

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError
from distributions.numerics import integrate_adaptive
from distributions.price_distributions import PriceDistribution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonteCarloEstimate:
    """蒙特卡洛估计值及其标准误"""

    mean: float
    std_error: float
    trials: int
    heavy_tailed: bool = False

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        """目标值是否落在 sigmas 个标准误之内"""
        return abs(self.mean - target) <= sigmas * self.std_error


def _chunk_rows(n: int) -> int:
    return max(1, Config.NUMERIC_CONFIG['mc_chunk_size'] // max(n, 1))


def draw_top_two(d: PriceDistribution, rng: np.random.Generator, n: int,
                 trials: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    每次试验抽取 n 个价格，返回最大值与次大值

    分块抽样、逐块用 np.partition 选出前两名，不做全排序

    Args:
        d: 价格分布
        rng: 随机数生成器
        n: 每次试验的抽样数，至少为 2
        trials: 试验次数

    Returns:
        (largest, second_largest) 两个长度为 trials 的数组
    """
    if n < 2:
        raise ParameterError(f"选取前两名需要 n >= 2: {n}")

    largest = np.empty(trials)
    second = np.empty(trials)
    rows = _chunk_rows(n)
    for start in range(0, trials, rows):
        stop = min(start + rows, trials)
        block = d.draw(rng, (stop - start, n))
        block = np.partition(block, (n - 2, n - 1), axis=1)
        largest[start:stop] = block[:, n - 1]
        second[start:stop] = block[:, n - 2]
    return largest, second


def extreme_spacing(d: PriceDistribution, k: int, trials: int, rng_seed: int) -> MonteCarloEstimate:
    """
    极端间距 ES(k) = E[p_{k:k} - p_{k-1:k}] 的蒙特卡洛估计

    Args:
        d: 价格分布
        k: 每次抽样个数，k >= 2
        trials: 试验次数
        rng_seed: 随机种子

    Returns:
        估计值；重尾分布下标记 heavy_tailed 而不报错
    """
    if k < 2:
        raise ParameterError(f"极端间距要求 k >= 2: {k}")
    if trials < 1:
        raise ParameterError(f"试验次数至少为 1: {trials}")

    heavy = d.heavy_tailed
    if heavy:
        logger.warning(f"{d.kind} 分布均值无穷，ES({k}) 估计方差无穷，结果仅供参考")

    rng = np.random.default_rng(rng_seed)
    largest, second = draw_top_two(d, rng, k, trials)
    gaps = largest - second
    std_error = float(gaps.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.inf
    return MonteCarloEstimate(float(gaps.mean()), std_error, trials, heavy)


def order_statistic_mean(d: PriceDistribution, n: int, j: int, trials: int,
                         rng_seed: int) -> MonteCarloEstimate:
    """
    E[p_{j:n}] 的蒙特卡洛估计（j = n 为最大值）

    Args:
        d: 价格分布
        n: 样本量
        j: 次序（从小到大，1 <= j <= n）
        trials: 试验次数
        rng_seed: 随机种子
    """
    if not 1 <= j <= n:
        raise ParameterError(f"次序统计量要求 1 <= j <= n: j={j}, n={n}")
    if trials < 1:
        raise ParameterError(f"试验次数至少为 1: {trials}")

    rng = np.random.default_rng(rng_seed)
    values = np.empty(trials)
    rows = _chunk_rows(n)
    for start in range(0, trials, rows):
        stop = min(start + rows, trials)
        block = d.draw(rng, (stop - start, n))
        values[start:stop] = np.partition(block, j - 1, axis=1)[:, j - 1]

    std_error = float(values.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.inf
    return MonteCarloEstimate(float(values.mean()), std_error, trials, d.heavy_tailed)


def order_statistic_cdf(d: PriceDistribution, j: int, n: int, p: float) -> float:
    """P(p_{j:n} <= p) = I_{F(p)}(j, n - j + 1)，正则化不完全Beta函数"""
    return float(special.betainc(j, n - j + 1, d.cdf(p)))


def order_statistic_density(d: PriceDistribution, j: int, n: int, p: float) -> float:
    """第 j 次序统计量的密度 n!/((j-1)!(n-j)!) F^{j-1} (1-F)^{n-j} f"""
    if not 1 <= j <= n:
        raise ParameterError(f"次序统计量要求 1 <= j <= n: j={j}, n={n}")
    u = float(d.cdf(p))
    f = float(d.pdf(p))
    if f == 0.0:
        return 0.0
    log_coef = special.gammaln(n + 1) - special.gammaln(j) - special.gammaln(n - j + 1)
    return float(math.exp(log_coef) * u ** (j - 1) * (1.0 - u) ** (n - j) * f)


def expected_order_statistic(d: PriceDistribution, j: int, n: int) -> float:
    """
    E[p_{j:n}] 的数值积分：非负随机变量 E[X] = ∫ P(X > p) dp

    尾指数不足时期望发散，直接返回 math.inf
    """
    if not 1 <= j <= n:
        raise ParameterError(f"次序统计量要求 1 <= j <= n: j={j}, n={n}")
    # p_{j:n} 的尾指数为原尾指数乘以 (n - j + 1)
    if d.tail_index * (n - j + 1) <= 1.0:
        return math.inf

    lower = d.support_lower
    upper = d.integration_upper()
    survival = lambda p: 1.0 - float(special.betainc(j, n - j + 1, d.cdf(p)))
    return lower + integrate_adaptive(survival, lower, upper, points=[float(d.quantile(0.5))])


def analytic_extreme_spacing(d: PriceDistribution, k: int) -> float:
    """ES(k) = E[p_{k:k}] - E[p_{k-1:k}]，由次序统计量期望的积分给出"""
    if k < 2:
        raise ParameterError(f"极端间距要求 k >= 2: {k}")
    if d.heavy_tailed:
        return math.inf
    return expected_order_statistic(d, k, k) - expected_order_statistic(d, k - 1, k)
