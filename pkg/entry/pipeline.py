#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
进入-努力组合模块
进入均衡给出 k*，取整后（至少 2）作为努力模型的进入者数量
两个模型在数学上相互独立，这里只做串联
"""

import logging
from dataclasses import dataclass

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from entry.equilibrium import MarketConfig, EntryEquilibrium, solve_entry_threshold
from effort.congestive_effort import CongestionFunction, EffortModel, EffortEquilibrium, solve_effort

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EntryEffortOutcome:
    """串联结果"""

    entry: EntryEquilibrium
    entrants: int
    effort: EffortEquilibrium


def entry_pipeline(cfg: MarketConfig, congestion: CongestionFunction) -> EntryEffortOutcome:
    """
    先求进入均衡，再以进入者数量求努力均衡

    Args:
        cfg: 有进入成本的市场
        congestion: 拥堵函数

    Returns:
        进入均衡、取整后的进入者数量与努力均衡
    """
    entry_eq = solve_entry_threshold(cfg)
    entrants = max(2, int(round(entry_eq.expected_entrants)))
    effort_eq = solve_effort(EffortModel(congestion, entrants))
    logger.info(f"n={cfg.n}: k*={entry_eq.expected_entrants:.4g} -> k={entrants}, "
                f"e*={effort_eq.effort:.6g}, 收入={effort_eq.revenue:.6g}")
    return EntryEffortOutcome(entry=entry_eq, entrants=entrants, effort=effort_eq)
