"""
分布模块

负责价格与进入成本的分布抽象，包括：
- 指数、均匀、广义Pareto、标准Pareto价格分布（解析CDF/PDF/分位数、逆变换抽样）
- 均匀、指数、表格化成本分布
- 次序统计量与极端间距
- 数值积分、二分求根与异常定义
"""

from .errors import IntentMarketError, ParameterError, DivergenceError, NumericalFailure
from .price_distributions import (
    PriceDistribution, Exponential, UniformUnit, GeneralizedPareto, StandardPareto,
    price_distribution_from_dict, cdf, sample,
)
from .cost_distributions import (
    CostDistribution, UniformCost, ExponentialCost, TabulatedCost, cost_distribution_from_dict,
)
from .order_statistics import (
    MonteCarloEstimate, draw_top_two, extreme_spacing, order_statistic_mean,
    order_statistic_cdf, order_statistic_density, expected_order_statistic, analytic_extreme_spacing,
)

__all__ = [
    'IntentMarketError', 'ParameterError', 'DivergenceError', 'NumericalFailure',
    'PriceDistribution', 'Exponential', 'UniformUnit', 'GeneralizedPareto', 'StandardPareto',
    'price_distribution_from_dict', 'cdf', 'sample',
    'CostDistribution', 'UniformCost', 'ExponentialCost', 'TabulatedCost', 'cost_distribution_from_dict',
    'MonteCarloEstimate', 'draw_top_two', 'extreme_spacing', 'order_statistic_mean',
    'order_statistic_cdf', 'order_statistic_density', 'expected_order_statistic', 'analytic_extreme_spacing',
]
