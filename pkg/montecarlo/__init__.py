"""
蒙特卡洛模块

负责收入比值实验与次序统计量模拟，包括：
- 重尾Pareto下期望第二高价与期望最高价之比（按 n 派生子种子，可复现）
- 中位数比值与自助法标准误
- 多种子平均曲线
- 次序统计量期望的蒙特卡洛估计
"""

from distributions.order_statistics import order_statistic_mean, MonteCarloEstimate
from .ratio_experiment import (
    RATIO_COLUMNS, RatioExperimentConfig, RatioExperimentResult, RatioExperiment,
    run_ratio_experiment, run_seed_averaged, is_nonincreasing,
)

__all__ = [
    'order_statistic_mean', 'MonteCarloEstimate',
    'RATIO_COLUMNS', 'RatioExperimentConfig', 'RatioExperimentResult', 'RatioExperiment',
    'run_ratio_experiment', 'run_seed_averaged', 'is_nonincreasing',
]
