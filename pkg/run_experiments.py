#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
实验完整流水线

以默认参数依次运行全部（或指定的）实验，每个实验写入 <output-root>/<实验名>/
"""

import argparse
import logging
import os

from config import Config
from cli.experiment_runner import ExperimentConfig, ExperimentRunner


class ExperimentPipeline:
    """实验流水线"""

    def __init__(self, output_root: str, seed: int = 0, show_progress: bool = True):
        """
        初始化流水线

        Args:
            output_root: 输出根目录
            seed: 随机种子
            show_progress: 是否显示进度条
        """
        self.output_root = output_root
        self.seed = seed
        self.show_progress = show_progress

        logging.basicConfig(
            level=getattr(logging, Config.LOG_CONFIG['level']),
            format=Config.LOG_CONFIG['format']
        )
        self.logger = logging.getLogger(__name__)

    def run_experiment(self, name: str, overrides: dict = None):
        """运行单个实验"""
        doc = {
            'experiment': name,
            'parameters': overrides or {},
            'output': os.path.join(self.output_root, name),
            'seed': self.seed,
        }
        config = ExperimentConfig.from_dict(doc)
        return ExperimentRunner(config, show_progress=self.show_progress).run()

    def run_full_pipeline(self, names=None, quick: bool = False):
        """
        运行全部实验

        Args:
            names: 实验名称列表，None 表示全部
            quick: 缩小网格与试验次数，用于冒烟检查
        """
        names = names or Config.experiment_names()
        self.logger.info(f"=== 开始实验流水线: {names} ===")

        stats = {'success': 0, 'failed': 0, 'failed_experiments': []}
        for name in names:
            try:
                written = self.run_experiment(name, QUICK_OVERRIDES.get(name) if quick else None)
                self.logger.info(f"{name} 完成: {written}")
                stats['success'] += 1
            except Exception as e:
                self.logger.error(f"{name} 失败: {str(e)}")
                stats['failed'] += 1
                stats['failed_experiments'].append(name)

        self.logger.info(f"实验流水线完成: 成功 {stats['success']}, 失败 {stats['failed']}")
        return stats


QUICK_OVERRIDES = {
    'figure2': {'n_grid': [2, 10, 50], 'trials': 2000, 'seeds': 2, 'bootstrap_resamples': 50},
    'entry-scaling': {'n_grid': [1000, 10000], 'pareto_check': None},
    'effort-welfare': {'k_grid': [2, 4, 8, 16]},
    'closed-form-audit': {'k_max': 5, 'n_max': 10},
    'dutch-auction': {'instances': 3},
    'congestion': {'instances': 3},
}


def main():
    """主函数"""
    parser = argparse.ArgumentParser(description='意图市场实验流水线')
    parser.add_argument('--experiments', nargs='*', choices=Config.experiment_names(),
                        help='要运行的实验，缺省为全部')
    parser.add_argument('--output-root', default='results', help='输出根目录')
    parser.add_argument('--seed', type=int, default=0, help='随机种子')
    parser.add_argument('--quick', action='store_true', help='缩小规模的冒烟运行')
    parser.add_argument('--no-progress', action='store_true', help='不显示进度条')

    args = parser.parse_args()

    pipeline = ExperimentPipeline(args.output_root, seed=args.seed, show_progress=not args.no_progress)

    try:
        stats = pipeline.run_full_pipeline(args.experiments, quick=args.quick)
        if stats['failed']:
            print(f"\n❌ {stats['failed']} 个实验失败: {stats['failed_experiments']}")
        else:
            print("\n🎉 全部实验运行成功！")
    except Exception as e:
        print(f"\n❌ 流水线运行失败: {str(e)}")
        import traceback
        traceback.print_exc()


if __name__ == '__main__':
    main()
