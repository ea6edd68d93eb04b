"""
凸优化市场模块

负责单资产意图市场的社会福利最大化，包括：
- 求解者效用/成本族、恒定乘积 CFMM、拥堵成本
- 求解者与用户的最优反应、对偶函数及其导数
- 原始-对偶荷兰式拍卖（降价二分）与询价轨迹
- 暴力网格校验与最优性检验
- 拥堵成本下的出清价格比较
- 市场实例的 JSON 读写与随机实例生成
"""

from .profiles import (
    Utility, LogUtility, QuadraticUtility, UTILITY_FAMILIES, SolverCost, SolverProfile,
    CfmmExchange, ConvexMarket, CongestionCost, solver_best_response, user_best_response,
)
from .dutch_auction import (
    AuctionStep, MarketSolution, OptimalityReport, supplies, dual_value_and_gradient,
    opening_price, descending_price_search, run_dutch_auction, direct_welfare_oracle,
    check_optimality, solution_summary,
)
from .congestion import CongestionComparison, congested_supplies, user_output, congestion_comparison
from .market_io import (
    market_from_dict, market_to_dict, congestion_from_dict, load_market, solution_to_dict, random_market,
)

__all__ = [
    'Utility', 'LogUtility', 'QuadraticUtility', 'UTILITY_FAMILIES', 'SolverCost', 'SolverProfile',
    'CfmmExchange', 'ConvexMarket', 'CongestionCost', 'solver_best_response', 'user_best_response',
    'AuctionStep', 'MarketSolution', 'OptimalityReport', 'supplies', 'dual_value_and_gradient',
    'opening_price', 'descending_price_search', 'run_dutch_auction', 'direct_welfare_oracle',
    'check_optimality', 'solution_summary',
    'CongestionComparison', 'congested_supplies', 'user_output', 'congestion_comparison',
    'market_from_dict', 'market_to_dict', 'congestion_from_dict', 'load_market', 'solution_to_dict',
    'random_market',
]
