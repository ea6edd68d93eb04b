#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
市场参与者模块
求解者效用/成本族、恒定乘积 CFMM、拥堵成本，以及给定价格 ν 下的最优反应

记号：用户持有 δ 单位 T1，将 y 交给求解者、δ - y 交给 CFMM；
求解者 k 接收 x_k，Σ x_k = y；一切以 T2 计价
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Any, Optional, Sequence, Tuple, Union

import numpy as np

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from distributions.errors import ParameterError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class Utility(ABC):
    """求解者效用 u(x)：凹、不减、u(0) = 0"""

    family: str = ''

    @abstractmethod
    def value(self, x: ArrayLike) -> ArrayLike:
        """u(x)"""

    @abstractmethod
    def marginal(self, x: ArrayLike) -> ArrayLike:
        """u'(x)"""

    @abstractmethod
    def params(self) -> Dict[str, float]:
        """参数字典"""


@dataclass(frozen=True)
class LogUtility(Utility):
    """u(x) = a ln(1 + b x)"""

    a: float = 1.0
    b: float = 1.0
    family = 'log'

    def __post_init__(self):
        if not self.a > 0:
            raise ParameterError(f"对数效用参数 a 必须为正: {self.a}")
        if not self.b > 0:
            raise ParameterError(f"对数效用参数 b 必须为正: {self.b}")

    def value(self, x):
        return self.a * np.log1p(self.b * np.asarray(x, dtype=float))

    def marginal(self, x):
        return self.a * self.b / (1.0 + self.b * np.asarray(x, dtype=float))

    def params(self) -> Dict[str, float]:
        return {'a': self.a, 'b': self.b}


@dataclass(frozen=True)
class QuadraticUtility(Utility):
    """u(x) = a x - q x² / 2，在峰值 a/q 之后保持常数"""

    a: float = 1.0
    q: float = 1.0
    family = 'quadratic'

    def __post_init__(self):
        if not self.a > 0:
            raise ParameterError(f"二次效用参数 a 必须为正: {self.a}")
        if not self.q > 0:
            raise ParameterError(f"二次效用参数 q 必须为正: {self.q}")

    @property
    def peak(self) -> float:
        return self.a / self.q

    def value(self, x):
        x = np.minimum(np.asarray(x, dtype=float), self.peak)
        return self.a * x - 0.5 * self.q * x * x

    def marginal(self, x):
        return np.maximum(self.a - self.q * np.asarray(x, dtype=float), 0.0)

    def params(self) -> Dict[str, float]:
        return {'a': self.a, 'q': self.q}


UTILITY_FAMILIES = {
    'log': LogUtility,
    'quadratic': QuadraticUtility,
}


@dataclass(frozen=True)
class SolverCost:
    """
    求解者成本 c(x) = m x + q_c x² / 2，超过预算上限 cap 时为无穷

    Args:
        linear: 线性系数 m >= 0
        quadratic: 二次系数 q_c >= 0
        cap: 可选的交易量上限
    """

    linear: float = 0.0
    quadratic: float = 0.0
    cap: Optional[float] = None

    def __post_init__(self):
        if self.linear < 0 or self.quadratic < 0:
            raise ParameterError(f"成本系数必须非负: m={self.linear}, q_c={self.quadratic}")
        if self.cap is not None and not self.cap >= 0:
            raise ParameterError(f"交易量上限必须非负: {self.cap}")

    @property
    def upper(self) -> float:
        return math.inf if self.cap is None else float(self.cap)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        cost = self.linear * x + 0.5 * self.quadratic * x * x
        return np.where(x <= self.upper, cost, np.inf)

    def marginal(self, x):
        return self.linear + self.quadratic * np.asarray(x, dtype=float)

    def to_dict(self) -> Dict[str, Any]:
        return {'linear': self.linear, 'quadratic': self.quadratic}


@dataclass(frozen=True)
class SolverProfile:
    """
    求解者：报价 α_k、效用 u_k、成本 c_k

    净效用 U_k(x) = -α_k x - c_k(x) + u_k(x)
    """

    name: str
    utility: Utility
    cost: SolverCost = field(default_factory=SolverCost)
    quote_price: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.quote_price) and self.quote_price >= 0):
            raise ParameterError(f"求解者 {self.name} 的报价必须为非负有限值: {self.quote_price}")

    def surplus(self, x):
        """u_k(x) - c_k(x)"""
        return self.utility.value(x) - self.cost.value(x)

    def marginal_surplus(self, x):
        """u_k'(x) - c_k'(x)"""
        return self.utility.marginal(x) - self.cost.marginal(x)

    def net_utility(self, x):
        """U_k(x) = -α_k x - c_k(x) + u_k(x)"""
        return self.surplus(x) - self.quote_price * np.asarray(x, dtype=float)

    def is_rational_quote(self, delta: float) -> bool:
        """报价是否不高于效用在 [0, δ] 上的线性下界斜率 u_k(δ)/δ"""
        if delta <= 0:
            return True
        return float(self.utility.value(delta)) / delta >= self.quote_price


@dataclass(frozen=True)
class CfmmExchange:
    """
    恒定乘积 CFMM 的总兑换函数

    G(w) = R2 γ w / (R1 + γ w)，γ = 1 - φ
    """

    reserve_in: float = 100.0
    reserve_out: float = 100.0
    fee: float = 0.0

    def __post_init__(self):
        if not (self.reserve_in > 0 and self.reserve_out > 0):
            raise ParameterError(f"CFMM 储备必须为正: R1={self.reserve_in}, R2={self.reserve_out}")
        if not 0.0 <= self.fee < 1.0:
            raise ParameterError(f"CFMM 手续费必须位于 [0,1): {self.fee}")

    @property
    def gamma(self) -> float:
        return 1.0 - self.fee

    def output(self, w):
        """G(w)"""
        w = np.asarray(w, dtype=float)
        return self.reserve_out * self.gamma * w / (self.reserve_in + self.gamma * w)

    def marginal(self, w):
        """g(w) = R1 R2 γ / (R1 + γ w)²"""
        w = np.asarray(w, dtype=float)
        return self.reserve_in * self.reserve_out * self.gamma / (self.reserve_in + self.gamma * w) ** 2

    def to_dict(self) -> Dict[str, Any]:
        return {'R1': self.reserve_in, 'R2': self.reserve_out, 'fee': self.fee}


@dataclass(frozen=True)
class ConvexMarket:
    """单资产意图市场：用户需求 δ、CFMM 与求解者"""

    delta: float
    cfmm: CfmmExchange
    solvers: Tuple[SolverProfile, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'solvers', tuple(self.solvers))
        if not (math.isfinite(self.delta) and self.delta >= 0):
            raise ParameterError(f"用户需求 δ 必须为非负有限值: {self.delta}")
        names = [s.name for s in self.solvers]
        if len(set(names)) != len(names):
            raise ParameterError(f"求解者名称重复: {names}")

    def welfare(self, allocations: Sequence[float], routed: Optional[float] = None) -> float:
        """
        社会福利 G(δ - y) + Σ(u_k(x_k) - c_k(x_k))

        Args:
            allocations: 各求解者交易量
            routed: 交给求解者的数量 y，默认 Σx
        """
        allocations = [float(x) for x in allocations]
        y = sum(allocations) if routed is None else float(routed)
        total = float(self.cfmm.output(self.delta - y))
        for solver, x in zip(self.solvers, allocations):
            total += float(solver.surplus(x))
        return total


@dataclass(frozen=True)
class CongestionCost:
    """
    拥堵成本 c̃_k(x) = c_k(x_k) + β x_k Σ_{j≠k} x_j

    仅有 x_k 非零时退化为 c_k(x_k)
    """

    cross_weight: float = 0.5

    def __post_init__(self):
        if not (math.isfinite(self.cross_weight) and self.cross_weight >= 0):
            raise ParameterError(f"拥堵交叉系数必须非负: {self.cross_weight}")

    def value(self, solver: SolverProfile, own: float, others: float) -> float:
        """c̃_k，others 为其余求解者交易量之和"""
        return float(solver.cost.value(own)) + self.cross_weight * own * others

    def marginal(self, solver: SolverProfile, own: float, others: float) -> float:
        """∂c̃_k/∂x_k"""
        return float(solver.cost.marginal(own)) + self.cross_weight * others


def solver_best_response(solver: SolverProfile, price: float, extra_marginal: float = 0.0) -> float:
    """
    求解者子问题 sup_{0 <= x <= cap} u(x) - c(x) - ν x 的最优解

    两个效用族均有闭式解；extra_marginal 为拥堵带来的额外边际成本

    Args:
        solver: 求解者
        price: 价格 ν >= 0
        extra_marginal: 额外的常数边际成本

    Returns:
        最优交易量 x̃；ν >= u'(0) - c'(0) 时为 0
    """
    if price < 0:
        raise ParameterError(f"价格不能为负: {price}")

    s = solver.cost.linear + price + extra_marginal
    qc = solver.cost.quadratic
    u = solver.utility

    if isinstance(u, LogUtility):
        surplus0 = u.a * u.b - s
        if surplus0 <= 0:
            return 0.0
        B = qc + s * u.b
        if B == 0:
            x = math.inf
        else:
            x = 2.0 * surplus0 / (B + math.sqrt(B * B + 4.0 * qc * u.b * surplus0))
    elif isinstance(u, QuadraticUtility):
        surplus0 = u.a - s
        if surplus0 <= 0:
            return 0.0
        x = surplus0 / (u.q + qc)
    else:
        raise ParameterError(f"不支持的效用族: {u.family}")

    return min(x, solver.cost.upper)


def user_best_response(cfmm: CfmmExchange, delta: float, price: float) -> float:
    """
    用户子问题 sup_{0 <= y <= δ} G(δ - y) + ν y 的最优解

    Args:
        cfmm: CFMM
        delta: 用户需求 δ
        price: 价格 ν >= 0

    Returns:
        交给求解者的数量 ỹ
    """
    if price < 0:
        raise ParameterError(f"价格不能为负: {price}")
    if delta <= 0:
        return 0.0
    if price <= float(cfmm.marginal(delta)):
        return 0.0
    if price >= float(cfmm.marginal(0.0)):
        return delta

    R1, R2, gamma = cfmm.reserve_in, cfmm.reserve_out, cfmm.gamma
    w = (math.sqrt(R1 * R2 * gamma / price) - R1) / gamma
    return min(max(delta - w, 0.0), delta)
