#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义
"""


class IntentMarketError(Exception):
    """意图市场库的基础异常"""


class ParameterError(IntentMarketError, ValueError):
    """构造参数不合法"""


class DivergenceError(IntentMarketError):
    """积分或期望发散（重尾分布等）"""


class NumericalFailure(IntentMarketError):
    """求根、迭代等数值过程失败"""
