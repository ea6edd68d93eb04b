"""
努力模块

负责拥堵努力模型的计算，包括：
- 三类拥堵函数 α(k)（次线性、线性、超线性）
- 均衡努力 e* 的求解与二阶条件数值检验
- 中期收入项、均衡收入公式及其蒙特卡洛校验
- 收入随进入者数量的变化表
"""

from .congestive_effort import (
    REGIME_EXPONENTS, CongestionFunction, EffortModel, EffortEquilibrium,
    foc_residual, solve_effort, interim_revenue_term, equilibrium_revenue,
    best_response_profit, second_order_check, simulate_revenue,
    welfare_vs_entry, revenue_trend,
)

__all__ = [
    'REGIME_EXPONENTS', 'CongestionFunction', 'EffortModel', 'EffortEquilibrium',
    'foc_residual', 'solve_effort', 'interim_revenue_term', 'equilibrium_revenue',
    'best_response_profit', 'second_order_check', 'simulate_revenue',
    'welfare_vs_entry', 'revenue_trend',
]
