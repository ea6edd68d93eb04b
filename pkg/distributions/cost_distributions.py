#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
进入成本分布模块
成本非负，要求 f_C(0) 有限且严格为正
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Any, Tuple

import numpy as np

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from distributions.errors import ParameterError

logger = logging.getLogger(__name__)


class CostDistribution(ABC):
    """成本分布基类"""

    kind: str = ''

    @abstractmethod
    def cdf(self, c: float) -> float:
        """F_C(c)"""

    @abstractmethod
    def pdf(self, c: float) -> float:
        """f_C(c)"""

    @property
    @abstractmethod
    def density_at_zero(self) -> float:
        """f_C(0)"""

    def _check_density_at_zero(self):
        f0 = self.density_at_zero
        if not (math.isfinite(f0) and f0 > 0):
            raise ParameterError(f"成本分布要求 f_C(0) 有限且为正，实际为 {f0}")

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind}


@dataclass(frozen=True)
class UniformCost(CostDistribution):
    """[0, upper] 上的均匀成本，默认 [0,1]"""

    upper: float = 1.0
    kind = 'uniform'

    def __post_init__(self):
        if not self.upper > 0:
            raise ParameterError(f"均匀成本上界必须为正: {self.upper}")
        self._check_density_at_zero()

    def cdf(self, c: float) -> float:
        return min(max(c / self.upper, 0.0), 1.0)

    def pdf(self, c: float) -> float:
        return 1.0 / self.upper if 0.0 <= c <= self.upper else 0.0

    @property
    def density_at_zero(self) -> float:
        return 1.0 / self.upper

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'upper': self.upper}


@dataclass(frozen=True)
class ExponentialCost(CostDistribution):
    """指数成本，F_C(c) = 1 - exp(-rate c)"""

    rate: float = 1.0
    kind = 'exponential'

    def __post_init__(self):
        if not self.rate > 0:
            raise ParameterError(f"指数成本参数 rate 必须为正: {self.rate}")
        self._check_density_at_zero()

    def cdf(self, c: float) -> float:
        if c <= 0:
            return 0.0
        return -math.expm1(-self.rate * c)

    def pdf(self, c: float) -> float:
        return self.rate * math.exp(-self.rate * c) if c >= 0 else 0.0

    @property
    def density_at_zero(self) -> float:
        return self.rate

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'rate': self.rate}


@dataclass(frozen=True)
class TabulatedCost(CostDistribution):
    """
    表格化成本分布，CDF 在节点间单调线性插值

    Args:
        costs: 递增的成本节点，首节点必须为 0
        probabilities: 对应的累积概率，首值为 0，单调不减，不超过 1
    """

    costs: Tuple[float, ...] = (0.0, 1.0)
    probabilities: Tuple[float, ...] = (0.0, 1.0)
    kind = 'tabulated'

    def __post_init__(self):
        # 列表输入统一转为元组，保证可哈希
        object.__setattr__(self, 'costs', tuple(float(c) for c in self.costs))
        object.__setattr__(self, 'probabilities', tuple(float(p) for p in self.probabilities))

        costs = np.asarray(self.costs)
        probs = np.asarray(self.probabilities)
        if len(costs) < 2 or len(costs) != len(probs):
            raise ParameterError("表格成本分布需要至少两个等长的节点序列")
        if costs[0] != 0.0 or probs[0] != 0.0:
            raise ParameterError("表格成本分布的首节点必须为 (0, 0)")
        if np.any(np.diff(costs) <= 0):
            raise ParameterError("表格成本节点必须严格递增")
        if np.any(np.diff(probs) < 0) or probs[-1] > 1.0:
            raise ParameterError("表格累积概率必须单调不减且不超过 1")
        self._check_density_at_zero()

    def cdf(self, c: float) -> float:
        return float(np.interp(c, self.costs, self.probabilities, left=0.0, right=self.probabilities[-1]))

    def pdf(self, c: float) -> float:
        if c < 0 or c >= self.costs[-1]:
            return 0.0
        i = int(np.searchsorted(self.costs, c, side='right')) - 1
        return (self.probabilities[i + 1] - self.probabilities[i]) / (self.costs[i + 1] - self.costs[i])

    @property
    def density_at_zero(self) -> float:
        return (self.probabilities[1] - self.probabilities[0]) / (self.costs[1] - self.costs[0])

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'costs': list(self.costs), 'probabilities': list(self.probabilities)}


COST_DISTRIBUTIONS = {
    'uniform': UniformCost,
    'exponential': ExponentialCost,
    'tabulated': TabulatedCost,
}


def cost_distribution_from_dict(doc: Dict[str, Any]) -> CostDistribution:
    """从配置字典构造成本分布"""
    params = dict(doc)
    kind = params.pop('kind', None)
    if kind not in COST_DISTRIBUTIONS:
        raise ParameterError(f"不支持的成本分布类型: {kind}")
    try:
        return COST_DISTRIBUTIONS[kind](**params)
    except TypeError as e:
        raise ParameterError(f"成本分布 {kind} 参数错误: {str(e)}") from e
