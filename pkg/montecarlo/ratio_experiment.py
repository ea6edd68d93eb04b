#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
收入比值实验模块
每次试验抽取 n 个价格，记录最大值与次大值；
mean_ratio = E[p_{n-1:n}] / E[p_{n:n}]，median_ratio 用中位数代替期望
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import List, Dict, Any, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import ParameterError
from distributions.price_distributions import PriceDistribution, GeneralizedPareto
from distributions.order_statistics import draw_top_two

RATIO_COLUMNS = ['n', 'mean_ratio', 'median_ratio', 'se']


@dataclass(frozen=True)
class RatioExperimentConfig:
    """
    比值实验配置

    Args:
        price_dist: 价格分布，默认为 σ=100、α=0.95、γ=1、μ=0 的广义Pareto
        n_grid: 求解者数量网格，每项 >= 2
        trials: 每个 n 的试验次数
        rng_seed: 随机种子
        bootstrap_resamples: 自助法重抽样次数
    """

    price_dist: PriceDistribution = field(default_factory=GeneralizedPareto)
    n_grid: tuple = (2, 10, 50, 250, 1000)
    trials: int = 10000
    rng_seed: int = 0
    bootstrap_resamples: int = Config.NUMERIC_CONFIG['bootstrap_resamples']

    def __post_init__(self):
        object.__setattr__(self, 'n_grid', tuple(int(n) for n in self.n_grid))
        if not self.n_grid:
            raise ParameterError("n_grid 不能为空")
        if any(n < 2 for n in self.n_grid):
            raise ParameterError(f"n_grid 中的 n 必须 >= 2: {list(self.n_grid)}")
        if self.trials < 1:
            raise ParameterError(f"试验次数至少为 1: {self.trials}")
        if self.bootstrap_resamples < 1:
            raise ParameterError(f"自助法重抽样次数至少为 1: {self.bootstrap_resamples}")

    def with_seed(self, rng_seed: int) -> 'RatioExperimentConfig':
        return RatioExperimentConfig(self.price_dist, self.n_grid, self.trials, int(rng_seed),
                                     self.bootstrap_resamples)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'price_dist': self.price_dist.to_dict(),
            'n_grid': list(self.n_grid),
            'trials': self.trials,
            'rng_seed': self.rng_seed,
            'bootstrap_resamples': self.bootstrap_resamples,
        }


@dataclass
class RatioExperimentResult:
    """比值实验结果，rows 的列为 n, mean_ratio, median_ratio, se（另附均值与中位数明细）"""

    rows: pd.DataFrame
    heavy_tailed: bool
    config: RatioExperimentConfig
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """JSON 结果文档"""
        return {
            'config': self.config.to_dict(),
            'heavy_tailed': self.heavy_tailed,
            'warnings': list(self.warnings),
            'rows': self.rows.to_dict(orient='records'),
        }


class RatioExperiment:
    """收入比值实验"""

    def __init__(self, cfg: RatioExperimentConfig):
        self.logger = logging.getLogger(__name__)
        self.cfg = cfg

    def run(self, max_workers: int = 1, show_progress: bool = False) -> RatioExperimentResult:
        """
        对 n_grid 中的每个 n 运行试验

        每个 n 使用由 SeedSequence.spawn 派生的独立子种子，结果与并发数无关

        Args:
            max_workers: 最大并发数
            show_progress: 是否显示进度条

        Returns:
            比值实验结果
        """
        cfg = self.cfg
        dist = cfg.price_dist
        warnings = []
        if dist.heavy_tailed:
            message = f"{dist.kind} 分布均值无穷，经验均值不稳定，比值随种子波动较大"
            self.logger.warning(message)
            warnings.append(message)

        self.logger.info(f"开始比值实验: {dist.kind}, n_grid={list(cfg.n_grid)}, trials={cfg.trials}")
        children = np.random.SeedSequence(cfg.rng_seed).spawn(len(cfg.n_grid))
        rows: List[Optional[Dict[str, Any]]] = [None] * len(cfg.n_grid)

        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            future_to_index = {
                executor.submit(self._run_single_n, n, child): idx
                for idx, (n, child) in enumerate(zip(cfg.n_grid, children))
            }
            with tqdm(total=len(cfg.n_grid), desc="比值实验", disable=not show_progress) as pbar:
                for future in as_completed(future_to_index):
                    idx = future_to_index[future]
                    try:
                        rows[idx] = future.result()
                    except Exception as e:
                        self.logger.error(f"n={cfg.n_grid[idx]} 比值实验失败: {str(e)}")
                        raise
                    pbar.update(1)

        df = pd.DataFrame(rows)
        self.logger.info("比值实验完成")
        return RatioExperimentResult(rows=df, heavy_tailed=dist.heavy_tailed, config=cfg, warnings=warnings)

    def _run_single_n(self, n: int, seed_seq: np.random.SeedSequence) -> Dict[str, Any]:
        """单个 n 的抽样、比值与自助法标准误"""
        draw_seq, boot_seq = seed_seq.spawn(2)
        largest, second = draw_top_two(self.cfg.price_dist, np.random.default_rng(draw_seq),
                                       n, self.cfg.trials)

        mean_largest = float(largest.mean())
        mean_second = float(second.mean())
        median_largest = float(np.median(largest))
        median_second = float(np.median(second))

        return {
            'n': n,
            'mean_ratio': mean_second / mean_largest,
            'median_ratio': median_second / median_largest,
            'se': self._bootstrap_se(largest, second, np.random.default_rng(boot_seq)),
            'mean_second': mean_second,
            'mean_largest': mean_largest,
            'median_second': median_second,
            'median_largest': median_largest,
        }

    def _bootstrap_se(self, largest: np.ndarray, second: np.ndarray, rng: np.random.Generator) -> float:
        """按试验重抽样的比值均值标准误"""
        trials = len(largest)
        ratios = np.empty(self.cfg.bootstrap_resamples)
        for b in range(self.cfg.bootstrap_resamples):
            idx = rng.integers(0, trials, trials)
            ratios[b] = second[idx].mean() / largest[idx].mean()
        if len(ratios) < 2:
            return 0.0
        return float(ratios.std(ddof=1))


def run_ratio_experiment(cfg: RatioExperimentConfig, max_workers: int = 1,
                         show_progress: bool = False) -> RatioExperimentResult:
    """比值实验的函数式入口"""
    return RatioExperiment(cfg).run(max_workers=max_workers, show_progress=show_progress)


def run_seed_averaged(cfg: RatioExperimentConfig, seeds: int, max_workers: int = 1) -> pd.DataFrame:
    """
    多种子平均的比值曲线

    子种子由 cfg.rng_seed 经 SeedSequence 派生

    Args:
        cfg: 比值实验配置
        seeds: 种子个数
        max_workers: 每次实验内部的并发数

    Returns:
        DataFrame，列: n, mean_ratio, median_ratio, se（多种子时 se 为种子间标准误）
    """
    if seeds < 1:
        raise ParameterError(f"种子个数至少为 1: {seeds}")

    seed_values = np.random.SeedSequence(cfg.rng_seed).generate_state(seeds)
    frames = []
    for seed in seed_values:
        result = run_ratio_experiment(cfg.with_seed(int(seed)), max_workers=max_workers)
        frames.append(result.rows[RATIO_COLUMNS])

    if seeds == 1:
        return frames[0].reset_index(drop=True)

    stacked = pd.concat(frames, ignore_index=True)
    grouped = stacked.groupby('n', sort=False)
    averaged = grouped[['mean_ratio', 'median_ratio']].mean().reset_index()
    averaged['se'] = (grouped['mean_ratio'].std(ddof=1) / math.sqrt(seeds)).values
    return averaged[RATIO_COLUMNS]


def is_nonincreasing(values) -> bool:
    """序列是否单调不增"""
    values = np.asarray(values, dtype=float)
    return bool(np.all(np.diff(values) <= 0))
