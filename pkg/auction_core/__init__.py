"""
拍卖核心模块

负责意图拍卖（荷兰式 / 一阶价格）的均衡计算，包括：
- 均衡报价折让
- 中期利润 S(p,k) 与事前利润 S(k)（解析式、数值积分、实数 k 插值）
- 二价拍卖解析收入与一阶价格拍卖蒙特卡洛模拟（收入等价校验）
"""

from .first_price import (
    AuctionContext, FirstPriceRecord,
    shade_bid, shade_bids, interim_profit,
    exante_profit, exante_profit_value, exante_profit_quadrature, exante_profit_curve,
    second_price_revenue, simulate_first_price,
)

__all__ = [
    'AuctionContext', 'FirstPriceRecord',
    'shade_bid', 'shade_bids', 'interim_profit',
    'exante_profit', 'exante_profit_value', 'exante_profit_quadrature', 'exante_profit_curve',
    'second_price_revenue', 'simulate_first_price',
]
