#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
价格分布模块
求解者私有价格的分布族：指数、[0,1]均匀、广义Pareto、标准Pareto
全部采用解析的 CDF / PDF / 分位数，抽样使用逆变换法
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, asdict
from typing import Dict, Any, Union

import numpy as np
from scipy import special

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class PriceDistribution(ABC):
    """价格分布基类，子类均为不可变数据类，可在线程间共享"""

    kind: str = ''

    @abstractmethod
    def cdf(self, p: ArrayLike) -> ArrayLike:
        """累积分布函数 F(p)"""

    @abstractmethod
    def pdf(self, p: ArrayLike) -> ArrayLike:
        """密度函数 f(p)"""

    @abstractmethod
    def quantile(self, u: ArrayLike) -> ArrayLike:
        """分位数函数 F^{-1}(u)"""

    @abstractmethod
    def mean(self) -> float:
        """期望，无穷均值时返回 math.inf"""

    @property
    @abstractmethod
    def support_lower(self) -> float:
        """支撑下确界"""

    @property
    @abstractmethod
    def support_upper(self) -> float:
        """支撑上确界（无界时为 math.inf）"""

    @property
    def tail_index(self) -> float:
        """幂律尾指数 (1-F(x) ~ x^{-tail_index})，轻尾分布为 math.inf"""
        return math.inf

    @property
    def heavy_tailed(self) -> bool:
        """均值是否为无穷"""
        return math.isinf(self.mean())

    def integration_upper(self) -> float:
        """数值积分上限：有界支撑取上确界，否则取 quantile(1 - tail_mass)"""
        if math.isfinite(self.support_upper):
            return self.support_upper
        return float(self.quantile(1.0 - Config.NUMERIC_CONFIG['tail_mass']))

    def draw(self, rng: np.random.Generator, size) -> np.ndarray:
        """用给定随机数生成器做逆变换抽样"""
        return self.quantile(rng.random(size))

    def sample(self, rng_seed: int, count: int) -> np.ndarray:
        """
        按固定种子抽取 count 个独立同分布价格

        Args:
            rng_seed: 随机种子，相同种子得到相同序列
            count: 样本数量

        Returns:
            价格数组
        """
        if count < 0:
            raise ParameterError(f"样本数量不能为负: {count}")
        rng = np.random.default_rng(rng_seed)
        return self.draw(rng, count)

    def to_dict(self) -> Dict[str, Any]:
        """序列化为配置字典"""
        doc = {'kind': self.kind}
        doc.update(asdict(self))
        return doc


@dataclass(frozen=True)
class Exponential(PriceDistribution):
    """指数分布，F(p) = 1 - exp(-rate * p)"""

    rate: float = 1.0
    kind = 'exponential'

    def __post_init__(self):
        if not self.rate > 0:
            raise ParameterError(f"指数分布参数 rate 必须为正: {self.rate}")

    def cdf(self, p):
        p = np.maximum(p, 0.0)
        return -np.expm1(-self.rate * p)

    def pdf(self, p):
        p = np.asarray(p, dtype=float)
        return np.where(p >= 0, self.rate * np.exp(-self.rate * np.maximum(p, 0.0)), 0.0)

    def quantile(self, u):
        return -np.log1p(-np.asarray(u, dtype=float)) / self.rate

    def mean(self) -> float:
        return 1.0 / self.rate

    @property
    def support_lower(self) -> float:
        return 0.0

    @property
    def support_upper(self) -> float:
        return math.inf


@dataclass(frozen=True)
class UniformUnit(PriceDistribution):
    """[0,1] 均匀分布"""

    kind = 'uniform'

    def cdf(self, p):
        return np.clip(p, 0.0, 1.0)

    def pdf(self, p):
        p = np.asarray(p, dtype=float)
        return np.where((p >= 0.0) & (p <= 1.0), 1.0, 0.0)

    def quantile(self, u):
        return np.asarray(u, dtype=float) * 1.0

    def mean(self) -> float:
        return 0.5

    @property
    def support_lower(self) -> float:
        return 0.0

    @property
    def support_upper(self) -> float:
        return 1.0


@dataclass(frozen=True)
class GeneralizedPareto(PriceDistribution):
    """
    广义Pareto分布
    F(x) = 1 - [1 + ((x - location)/scale)^(1/shape)]^(-tail)，x > location

    shape/tail >= 1 时均值为无穷（重尾）
    """

    location: float = 0.0
    scale: float = 100.0
    shape: float = 1.0
    tail: float = 0.95
    kind = 'generalized_pareto'

    @property
    def tail_index(self) -> float:
        return self.tail / self.shape

    def __post_init__(self):
        if self.location < 0:
            raise ParameterError(f"广义Pareto参数 location 必须非负: {self.location}")
        if not self.scale > 0:
            raise ParameterError(f"广义Pareto参数 scale 必须为正: {self.scale}")
        if not self.shape > 0:
            raise ParameterError(f"广义Pareto参数 shape 必须为正: {self.shape}")
        if not self.tail > 0:
            raise ParameterError(f"广义Pareto参数 tail 必须为正: {self.tail}")

    def _standardized(self, x):
        z = np.maximum((np.asarray(x, dtype=float) - self.location) / self.scale, 0.0)
        return z

    def cdf(self, x):
        t = self._standardized(x) ** (1.0 / self.shape)
        return -np.expm1(-self.tail * np.log1p(t))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        z = self._standardized(x)
        with np.errstate(divide='ignore', invalid='ignore'):
            t = z ** (1.0 / self.shape)
            dt = (1.0 / self.shape) * z ** (1.0 / self.shape - 1.0) / self.scale
            density = self.tail * (1.0 + t) ** (-self.tail - 1.0) * dt
        return np.where(x > self.location, np.nan_to_num(density, posinf=0.0), 0.0)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        w = np.expm1(-np.log1p(-u) / self.tail)
        return self.location + self.scale * w ** self.shape

    def mean(self) -> float:
        if self.shape >= self.tail:
            return math.inf
        # X = location + scale * W^shape，W 为 Lomax(tail)，E[W^shape] = tail * B(1+shape, tail-shape)
        return self.location + self.scale * self.tail * special.beta(1.0 + self.shape, self.tail - self.shape)

    @property
    def support_lower(self) -> float:
        return self.location

    @property
    def support_upper(self) -> float:
        return math.inf


@dataclass(frozen=True)
class StandardPareto(PriceDistribution):
    """标准Pareto分布，F(x) = 1 - (x_min / x)^tail，x >= x_min"""

    x_min: float = 100.0
    tail: float = 0.95
    kind = 'standard_pareto'

    @property
    def tail_index(self) -> float:
        return self.tail

    def __post_init__(self):
        if not self.x_min > 0:
            raise ParameterError(f"标准Pareto参数 x_min 必须为正: {self.x_min}")
        if not self.tail > 0:
            raise ParameterError(f"标准Pareto参数 tail 必须为正: {self.tail}")

    def cdf(self, x):
        x = np.maximum(np.asarray(x, dtype=float), self.x_min)
        return -np.expm1(self.tail * np.log(self.x_min / x))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        safe = np.maximum(x, self.x_min)
        return np.where(x >= self.x_min, self.tail * self.x_min ** self.tail / safe ** (self.tail + 1.0), 0.0)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        return self.x_min * np.exp(-np.log1p(-u) / self.tail)

    def mean(self) -> float:
        if self.tail <= 1.0:
            return math.inf
        return self.tail * self.x_min / (self.tail - 1.0)

    @property
    def support_lower(self) -> float:
        return self.x_min

    @property
    def support_upper(self) -> float:
        return math.inf


PRICE_DISTRIBUTIONS = {
    'exponential': Exponential,
    'uniform': UniformUnit,
    'generalized_pareto': GeneralizedPareto,
    'standard_pareto': StandardPareto,
}


def price_distribution_from_dict(doc: Dict[str, Any]) -> PriceDistribution:
    """
    从配置字典构造价格分布

    Args:
        doc: 形如 {'kind': 'exponential', 'rate': 2.0}

    Returns:
        价格分布实例
    """
    params = dict(doc)
    kind = params.pop('kind', None)
    if kind not in PRICE_DISTRIBUTIONS:
        raise ParameterError(f"不支持的价格分布类型: {kind}")
    try:
        return PRICE_DISTRIBUTIONS[kind](**params)
    except TypeError as e:
        raise ParameterError(f"价格分布 {kind} 参数错误: {str(e)}") from e


def cdf(d: PriceDistribution, p: ArrayLike) -> ArrayLike:
    """F(p)"""
    return d.cdf(p)


def sample(d: PriceDistribution, rng_seed: int, count: int) -> np.ndarray:
    """逆变换抽样"""
    return d.sample(rng_seed, count)
