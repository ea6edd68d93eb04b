"""
进入模块

负责有进入成本的市场均衡，包括：
- 门槛方程左端的二项加权期望利润（指数、均匀价格闭式解，直接求和，正态近似）
- 门槛成本 c̄ 与期望进入者 k* 的二分求解
- 进入规模实验与 log-log 斜率
- 进入均衡与努力模型的串联
"""

from .equilibrium import (
    MarketConfig, EntryEquilibrium,
    exponential_closed_form, uniform_closed_form,
    binomial_sum_direct, binomial_expected_profit, binomial_expected_profit_direct, binomial_expected_profit_normal,
    solve_entry_threshold, loglog_slope,
)
from .scaling import ScalingExperiment, ScalingResult, scaling_experiment, SCALING_COLUMNS
from .pipeline import EntryEffortOutcome, entry_pipeline

__all__ = [
    'MarketConfig', 'EntryEquilibrium',
    'exponential_closed_form', 'uniform_closed_form',
    'binomial_sum_direct', 'binomial_expected_profit', 'binomial_expected_profit_direct',
    'binomial_expected_profit_normal',
    'solve_entry_threshold', 'loglog_slope',
    'ScalingExperiment', 'ScalingResult', 'scaling_experiment', 'SCALING_COLUMNS',
    'EntryEffortOutcome', 'entry_pipeline',
]
