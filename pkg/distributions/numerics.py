#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数值工具模块
自适应积分（scipy QUADPACK Gauss-Kronrod）与二分求根的统一封装
"""

import logging
import threading
import warnings
from typing import Callable, Optional, Sequence

from scipy import integrate, optimize

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import DivergenceError, NumericalFailure

logger = logging.getLogger(__name__)

# warnings.catch_warnings 修改进程级过滤器；可重入，被积函数内允许嵌套积分
_QUAD_LOCK = threading.RLock()


def integrate_adaptive(func: Callable[[float], float], lower: float, upper: float,
                       points: Optional[Sequence[float]] = None) -> float:
    """
    自适应积分

    Args:
        func: 被积函数
        lower: 积分下限
        upper: 积分上限（有限）
        points: 被积函数的断点/峰值位置

    Returns:
        积分值

    Raises:
        DivergenceError: QUADPACK 报告不收敛时抛出，不返回可疑的有限值
    """
    if upper <= lower:
        return 0.0

    config = Config.NUMERIC_CONFIG
    kwargs = {
        'epsabs': config['quad_epsabs'],
        'epsrel': config['quad_epsrel'],
        'limit': config['quad_limit'],
    }
    if points:
        inner = [p for p in points if lower < p < upper]
        if inner:
            kwargs['points'] = sorted(inner)

    with _QUAD_LOCK, warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', integrate.IntegrationWarning)
        value, abserr = integrate.quad(func, lower, upper, **kwargs)

    for w in caught:
        message = str(w.message)
        if 'roundoff' in message:
            # 舍入误差仅说明达不到所要求的精度，结果本身可用
            logger.debug(f"积分精度受舍入误差限制 [{lower}, {upper}], 误差估计 {abserr:.3g}")
            continue
        logger.warning(f"积分不收敛 [{lower}, {upper}]: {message.splitlines()[0]}")
        raise DivergenceError(f"积分在 [{lower}, {upper}] 上不收敛")

    return value


def bisect_root(func: Callable[[float], float], lower: float, upper: float) -> float:
    """
    二分求根，要求 func(lower) 与 func(upper) 异号

    Raises:
        NumericalFailure: 区间不包含根或超过迭代上限
    """
    config = Config.NUMERIC_CONFIG
    try:
        root = optimize.bisect(
            func, lower, upper,
            xtol=config['bisection_xtol'],
            rtol=config['bisection_rtol'],
            maxiter=config['bisection_maxiter'],
        )
    except (ValueError, RuntimeError) as e:
        logger.error(f"二分求根失败 [{lower}, {upper}]: {str(e)}")
        raise NumericalFailure(f"二分求根失败: {str(e)}") from e
    return root
