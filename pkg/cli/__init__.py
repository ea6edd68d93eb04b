"""
命令行模块

负责实验的配置、调度与结果输出，包括：
- JSON 实验配置的合并与校验
- 六个实验的运行与 CSV / JSON / manifest 输出
- click 命令行入口与退出码
"""

from .experiment_runner import (
    ConfigValidationError, ExperimentConfig, ExperimentRunner, list_experiments, json_safe,
)

__all__ = [
    'ConfigValidationError', 'ExperimentConfig', 'ExperimentRunner', 'list_experiments', 'json_safe',
]
