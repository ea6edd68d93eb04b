# -*- coding: utf-8 -*-
"""
一阶价格拍卖模块测试
"""

import math

import numpy as np
import pytest

from distributions.errors import ParameterError, DivergenceError
from distributions.price_distributions import Exponential, UniformUnit
from distributions.order_statistics import analytic_extreme_spacing, extreme_spacing
from auction_core.first_price import (
    AuctionContext, shade_bid, shade_bids, interim_profit, exante_profit, exante_profit_value,
    exante_profit_quadrature, exante_profit_curve, second_price_revenue, simulate_first_price,
)


def test_context_validation(uniform):
    with pytest.raises(ParameterError):
        AuctionContext(uniform, public_price=-0.1)
    with pytest.raises(ParameterError):
        AuctionContext(uniform, num_bidders=0)
    ctx = AuctionContext.with_competitors(uniform, 3, 0.2)
    assert ctx.num_bidders == 4
    assert ctx.num_competitors == 3


def test_uniform_two_bidders_bid_half(uniform):
    ctx = AuctionContext(uniform, 0.0, 2)
    assert shade_bid(ctx, 0.8) == pytest.approx(0.4, abs=1e-15)
    assert shade_bids(ctx, np.array([0.2, 0.8])) == pytest.approx([0.1, 0.4], abs=1e-15)


def test_exponential_shading_closed_form(exponential):
    ctx = AuctionContext(exponential, 0.0, 2)
    expected = 1.0 - math.exp(-1.0) / (1.0 - math.exp(-1.0))
    assert shade_bid(ctx, 1.0) == pytest.approx(expected, abs=1e-13)


def test_exponential_shading_high_quantile_uses_quadrature(exponential):
    # F(5) > 0.9：∫_0^5 (1 - e^{-x}) dx / F(5)
    ctx = AuctionContext(exponential, 0.0, 2)
    F = 1.0 - math.exp(-5.0)
    expected = 5.0 - (5.0 - F) / F
    assert shade_bid(ctx, 5.0) == pytest.approx(expected, abs=1e-12)


def test_shade_bid_degenerate_cases(uniform):
    alone = AuctionContext(uniform, 0.3, 1)
    assert shade_bid(alone, 0.9) == 0.3
    ctx = AuctionContext(uniform, 0.3, 3)
    assert shade_bid(ctx, 0.3) == 0.3
    with pytest.raises(ParameterError):
        shade_bid(ctx, 0.2)


@pytest.mark.parametrize('p', [0.35, 0.6, 0.99])
def test_shade_bid_within_bounds(uniform, p):
    ctx = AuctionContext(uniform, 0.3, 5)
    bid = shade_bid(ctx, p)
    assert 0.3 <= bid <= p


def test_uniform_reserve_bid(uniform):
    ctx = AuctionContext(uniform, 0.5, 2)
    assert shade_bid(ctx, 1.0) == pytest.approx(0.625, abs=1e-15)
    assert shade_bids(ctx, np.array([1.0, 0.4])) == pytest.approx([0.625, 0.5], abs=1e-15)


def test_shade_bids_table_matches_scalar(exponential):
    ctx = AuctionContext(exponential, 0.0, 3)
    prices = np.array([0.3, 1.0, 2.5])
    scalar = [shade_bid(ctx, p) for p in prices]
    assert shade_bids(ctx, prices) == pytest.approx(scalar, rel=1e-4)


def test_interim_profit(uniform):
    ctx = AuctionContext.with_competitors(uniform, 1)
    assert interim_profit(ctx, 0.6) == pytest.approx(0.18, abs=1e-15)
    assert interim_profit(AuctionContext(uniform, 0.5, 2), 0.4) == 0.0
    assert interim_profit(AuctionContext(uniform, 0.2, 1), 0.7) == pytest.approx(0.5)


@pytest.mark.parametrize('rate,k', [(1.0, 0), (2.0, 3), (0.5, 7)])
def test_exante_profit_exponential(rate, k):
    d = Exponential(rate)
    expected = 1.0 / ((k + 1) * rate)
    assert exante_profit_value(d, k) == pytest.approx(expected, rel=1e-15)
    assert exante_profit_quadrature(d, k) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize('k', [0, 1, 2, 10])
def test_exante_profit_uniform(uniform, k):
    expected = 1.0 / ((k + 1) * (k + 2))
    assert exante_profit(AuctionContext.with_competitors(uniform, k)) == pytest.approx(expected)
    assert exante_profit_quadrature(uniform, k) == pytest.approx(expected, abs=1e-12)


def test_exante_profit_interpolates_real_k(uniform):
    assert exante_profit_value(uniform, 1.5) == pytest.approx(0.5 * (1.0 / 6.0 + 1.0 / 12.0))
    with pytest.raises(ParameterError):
        exante_profit_value(uniform, -1)


def test_exante_profit_with_public_price(uniform):
    # p* = 0.5, k = 1：∫_{0.5}^{1} x (1 - x) dx
    assert exante_profit_value(uniform, 1, 0.5) == pytest.approx(1.0 / 12.0, abs=1e-12)


def test_exante_profit_heavy_tail(heavy_pareto):
    assert math.isinf(exante_profit_value(heavy_pareto, 4))
    with pytest.raises(DivergenceError):
        exante_profit_quadrature(heavy_pareto, 4)


def test_exante_profit_curve_increasing_differences(exponential):
    curve = exante_profit_curve(exponential, range(6))
    assert list(curve.columns) == ['k', 'exante_profit', 'decrement']
    decrements = curve['decrement'].dropna()
    assert (decrements > 0).all()
    assert (decrements.diff().dropna() <= 0).all()


@pytest.mark.parametrize('k', [2, 4])
def test_extreme_spacing_identity(uniform, k):
    assert analytic_extreme_spacing(uniform, k) == pytest.approx(k * exante_profit_value(uniform, k - 1), abs=1e-9)


def test_second_price_revenue_known_values(uniform, exponential):
    assert second_price_revenue(AuctionContext(uniform, 0.0, 2)) == pytest.approx(1.0 / 3.0, abs=1e-10)
    assert second_price_revenue(AuctionContext(exponential, 0.0, 3)) == pytest.approx(5.0 / 6.0, abs=1e-9)
    assert second_price_revenue(AuctionContext(uniform, 0.5, 2)) == pytest.approx(5.0 / 12.0, abs=1e-10)
    assert second_price_revenue(AuctionContext(uniform, 0.5, 1)) == pytest.approx(0.25)


def test_second_price_revenue_heavy_tail():
    from distributions.price_distributions import StandardPareto
    assert math.isinf(second_price_revenue(AuctionContext(StandardPareto(1.0, 0.4), 0.0, 3)))


def test_first_price_profit_uniform(uniform):
    ctx = AuctionContext(uniform, 0.0, 2)
    record = simulate_first_price(ctx, 200000, 21)
    assert abs(record.revenue_mean - 1.0 / 3.0) <= 3.0 * record.revenue_std_error
    assert record.fill_rate == 1.0
    # 每个求解者事前利润 S(1) = 1/6
    assert record.solver_profit_mean == pytest.approx(1.0 / 6.0, abs=0.005)


def test_revenue_equivalence_with_reserve(uniform):
    ctx = AuctionContext(uniform, 0.5, 2)
    record = simulate_first_price(ctx, 200000, 4)
    assert abs(record.revenue_mean - 5.0 / 12.0) <= 3.0 * record.revenue_std_error
    assert record.fill_rate == pytest.approx(0.75, abs=0.01)


def test_simulate_first_price_is_deterministic(exponential):
    ctx = AuctionContext(exponential, 0.0, 3)
    assert simulate_first_price(ctx, 5000, 9) == simulate_first_price(ctx, 5000, 9)


def test_simulate_first_price_validation(uniform):
    with pytest.raises(ParameterError):
        simulate_first_price(AuctionContext(uniform, 0.0, 1), 100, 0)
    with pytest.raises(ParameterError):
        simulate_first_price(AuctionContext(uniform, 0.0, 2), 0, 0)


@pytest.mark.slow
@pytest.mark.parametrize('k', range(1, 7))
def test_extreme_spacing_identity_monte_carlo(uniform, exponential, k):
    # (k+1) S(k) = ES(k+1)
    for dist in (uniform, exponential):
        estimate = extreme_spacing(dist, k + 1, 1_000_000, 100 + k)
        assert estimate.within((k + 1) * exante_profit_value(dist, k), sigmas=3.0)


@pytest.mark.slow
@pytest.mark.parametrize('family', ['uniform', 'exponential'])
@pytest.mark.parametrize('k', [2, 3, 5])
def test_revenue_equivalence(request, family, k):
    # 折让报价的一阶价格收入等于二价收入
    ctx = AuctionContext(request.getfixturevalue(family), 0.0, k)
    record = simulate_first_price(ctx, 1_000_000, 300 + k)
    assert abs(record.revenue_mean - second_price_revenue(ctx)) <= 3.0 * record.revenue_std_error
    assert record.fill_rate == 1.0


@pytest.mark.parametrize('rate', [0.5, 1.0, 2.0])
@pytest.mark.parametrize('k', range(21))
def test_closed_form_audit_grid_exponential(rate, k):
    d = Exponential(rate)
    assert abs(exante_profit_value(d, k) - exante_profit_quadrature(d, k)) < 1e-9


@pytest.mark.parametrize('k', range(21))
def test_closed_form_audit_grid_uniform(uniform, k):
    assert abs(exante_profit_value(uniform, k) - exante_profit_quadrature(uniform, k)) < 1e-9
