#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
进入规模实验模块
对一组 n 求解进入均衡，输出 (n, c_bar, k_star) 表并估计 log-log 斜率
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import List, Dict, Any, Optional

import pandas as pd
from tqdm import tqdm

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from distributions.errors import ParameterError
from distributions.price_distributions import PriceDistribution
from distributions.cost_distributions import CostDistribution
from entry.equilibrium import MarketConfig, solve_entry_threshold, loglog_slope

SCALING_COLUMNS = ['n', 'c_bar', 'k_star', 'entrant_share', 'residual', 'status', 'error']


@dataclass
class ScalingResult:
    """规模实验结果"""

    table: pd.DataFrame
    slope: Optional[float]
    stats: Dict[str, Any]


class ScalingExperiment:
    """进入规模实验"""

    def __init__(self, price_dist: PriceDistribution, cost_dist: CostDistribution,
                 public_price: float = 0.0):
        self.logger = logging.getLogger(__name__)
        self.price_dist = price_dist
        self.cost_dist = cost_dist
        self.public_price = public_price

    def run(self, n_grid: List[int], max_workers: int = 4, show_progress: bool = True) -> ScalingResult:
        """
        并发求解每个 n 的进入均衡

        Args:
            n_grid: 严格递增的潜在求解者数量
            max_workers: 最大并发数
            show_progress: 是否显示进度条

        Returns:
            规模实验结果；单行失败记录在 status/error 列，不中断整张表
        """
        n_grid = [int(n) for n in n_grid]
        if not n_grid:
            raise ParameterError("n_grid 不能为空")
        if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
            raise ParameterError(f"n_grid 必须严格递增: {n_grid}")

        self.logger.info(f"开始进入规模实验: {self.price_dist.kind} 价格, "
                         f"{self.cost_dist.kind} 成本, {len(n_grid)} 个 n")

        stats = {
            'total_rows': len(n_grid),
            'success_count': 0,
            'failed_count': 0,
            'failed_n': []
        }
        rows: List[Optional[Dict[str, Any]]] = [None] * len(n_grid)

        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            future_to_index = {
                executor.submit(self._solve_single_n, n): idx
                for idx, n in enumerate(n_grid)
            }
            with tqdm(total=len(n_grid), desc=f"进入均衡 ({self.price_dist.kind})",
                      disable=not show_progress) as pbar:
                for future in as_completed(future_to_index):
                    idx = future_to_index[future]
                    row = future.result()
                    rows[idx] = row
                    if row['status'] != 'failed':
                        stats['success_count'] += 1
                    else:
                        stats['failed_count'] += 1
                        stats['failed_n'].append(row['n'])
                    pbar.update(1)

        table = pd.DataFrame(rows, columns=SCALING_COLUMNS)
        ok = table[table['status'].isin(['ok', 'unbounded'])]
        slope = None
        if len(table) > 1:
            slope = loglog_slope(ok['n'].tolist(), ok['k_star'].tolist())
            if math.isnan(slope):
                slope = None

        self.logger.info(f"进入规模实验完成: {stats}, 斜率={slope}")
        return ScalingResult(table=table, slope=slope, stats=stats)

    def _solve_single_n(self, n: int) -> Dict[str, Any]:
        """求解单个 n，异常转为失败行"""
        try:
            cfg = MarketConfig(n, self.price_dist, self.cost_dist, self.public_price)
            eq = solve_entry_threshold(cfg)
            status = 'ok'
            if eq.unbounded:
                status = 'unbounded'
            elif eq.empty_market:
                status = 'empty'
            return {
                'n': n,
                'c_bar': eq.threshold,
                'k_star': eq.expected_entrants,
                'entrant_share': eq.entrant_share,
                'residual': eq.residual,
                'status': status,
                'error': '',
            }
        except Exception as e:
            self.logger.error(f"n={n} 进入均衡求解失败: {str(e)}")
            return {
                'n': n, 'c_bar': math.nan, 'k_star': math.nan, 'entrant_share': math.nan,
                'residual': math.nan, 'status': 'failed', 'error': str(e),
            }


def scaling_experiment(price_dist: PriceDistribution, cost_dist: CostDistribution,
                       n_grid: List[int], public_price: float = 0.0,
                       max_workers: int = 4, show_progress: bool = False) -> ScalingResult:
    """进入规模实验的函数式入口"""
    return ScalingExperiment(price_dist, cost_dist, public_price).run(
        n_grid, max_workers=max_workers, show_progress=show_progress)
