# -*- coding: utf-8 -*-
"""
进入均衡模块测试
"""

import math

import pytest

from distributions.errors import ParameterError
from distributions.price_distributions import Exponential, UniformUnit, GeneralizedPareto
from distributions.cost_distributions import UniformCost, ExponentialCost
from effort.congestive_effort import CongestionFunction
from entry.equilibrium import (
    MarketConfig, exponential_closed_form, uniform_closed_form, binomial_sum_direct,
    binomial_expected_profit, binomial_expected_profit_direct, binomial_expected_profit_normal,
    solve_entry_threshold, loglog_slope,
)
from entry.scaling import scaling_experiment, SCALING_COLUMNS
from entry.pipeline import entry_pipeline

COST_PROBABILITIES = [0.01, 0.1, 0.3, 0.7, 0.99]


def test_market_config_validation(exponential, uniform_cost):
    with pytest.raises(ParameterError):
        MarketConfig(-1, exponential, uniform_cost)
    with pytest.raises(ParameterError):
        MarketConfig(5, exponential, uniform_cost, public_price=-1.0)


def test_single_solver_hand_evaluation(exponential, uniform_cost):
    cfg = MarketConfig(1, exponential, uniform_cost)
    assert binomial_expected_profit(cfg, 2.0 / 3.0) == pytest.approx(2.0 / 3.0, rel=1e-14)


def test_zero_entry_probability_returns_lone_profit(exponential, uniform_cost):
    cfg = MarketConfig(20, exponential, uniform_cost)
    assert binomial_expected_profit(cfg, 0.0) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        binomial_expected_profit(cfg, -0.1)


@pytest.mark.parametrize('rate', [0.5, 1.0, 2.0])
@pytest.mark.parametrize('q', COST_PROBABILITIES)
def test_exponential_closed_form_matches_direct_sum(rate, q):
    d = Exponential(rate)
    for n in range(1, 51):
        assert abs(exponential_closed_form(n, q, rate) - binomial_sum_direct(d, n, q)) < 1e-12


@pytest.mark.parametrize('q', COST_PROBABILITIES)
def test_uniform_closed_form_matches_direct_sum(q):
    d = UniformUnit()
    for n in range(1, 51):
        assert abs(uniform_closed_form(n, q) - binomial_sum_direct(d, n, q)) < 1e-12


def test_closed_form_limits():
    assert exponential_closed_form(10, 0.0, 2.0) == 0.5
    assert exponential_closed_form(10, 1.0, 1.0) == pytest.approx(1.0 / 11.0)
    assert uniform_closed_form(10, 0.0) == 0.5
    assert uniform_closed_form(10, 1.0) == pytest.approx(1.0 / (11.0 * 12.0))


def test_binomial_sum_direct_rejects_bad_probability(uniform):
    with pytest.raises(ParameterError):
        binomial_sum_direct(uniform, 5, 1.5)


def test_normal_approximation_close_to_direct_sum():
    cfg = MarketConfig(2000, Exponential(1.0), UniformCost())
    direct = binomial_expected_profit_direct(cfg, 0.05)
    approx = binomial_expected_profit_normal(cfg, 0.05)
    assert approx == pytest.approx(direct, rel=1e-3)


def test_single_solver_threshold(exponential, uniform_cost):
    eq = solve_entry_threshold(MarketConfig(1, exponential, uniform_cost))
    assert eq.threshold == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert eq.expected_entrants == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert not eq.empty_market and not eq.unbounded


def test_heavy_tail_full_entry(heavy_pareto, uniform_cost):
    eq = solve_entry_threshold(MarketConfig(50, heavy_pareto, uniform_cost))
    assert math.isinf(eq.threshold)
    assert eq.expected_entrants == 50
    assert eq.unbounded
    assert eq.entrant_share == 1.0


def test_empty_universe(exponential, uniform_cost):
    eq = solve_entry_threshold(MarketConfig(0, exponential, uniform_cost))
    assert eq.expected_entrants == 0.0
    assert eq.empty_market


@pytest.mark.parametrize('price_dist', [Exponential(1.0), UniformUnit()])
@pytest.mark.parametrize('cost_dist', [UniformCost(), ExponentialCost(2.0)])
def test_threshold_residual_and_comparative_statics(price_dist, cost_dist):
    previous = None
    for n in [1, 10, 100, 1000]:
        eq = solve_entry_threshold(MarketConfig(n, price_dist, cost_dist))
        assert abs(eq.residual) < 1e-10 * max(1.0, eq.threshold)
        assert 0.0 <= eq.expected_entrants <= n
        if previous is not None:
            assert eq.expected_entrants >= previous.expected_entrants
            assert eq.threshold <= previous.threshold
        previous = eq


def test_loglog_slope():
    ns = [10, 100, 1000, 10000]
    assert loglog_slope(ns, [math.sqrt(n) for n in ns]) == pytest.approx(0.5)
    assert math.isnan(loglog_slope([10], [3.0]))
    assert math.isnan(loglog_slope([10, 100], [0.0, float('nan')]))


def test_scaling_exponential_prices():
    result = scaling_experiment(Exponential(1.0), UniformCost(), [1000, 10000, 100000, 1000000])
    assert list(result.table.columns) == SCALING_COLUMNS
    assert list(result.table['n']) == [1000, 10000, 100000, 1000000]
    assert (result.table['status'] == 'ok').all()
    assert result.slope == pytest.approx(0.5, abs=0.05)
    assert result.table['entrant_share'].is_monotonic_decreasing


def test_scaling_uniform_prices():
    result = scaling_experiment(UniformUnit(), UniformCost(), [1000, 10000, 100000, 1000000])
    assert result.slope == pytest.approx(1.0 / 3.0, abs=0.05)
    assert result.stats['failed_count'] == 0


def test_scaling_singleton_grid(exponential, uniform_cost):
    result = scaling_experiment(exponential, uniform_cost, [100])
    assert len(result.table) == 1
    assert result.slope is None


def test_scaling_heavy_tail_rows_unbounded(uniform_cost):
    dist = GeneralizedPareto(location=0.0, scale=1.0, shape=1.0, tail=0.95)
    result = scaling_experiment(dist, uniform_cost, [10, 100, 1000])
    assert (result.table['status'] == 'unbounded').all()
    assert (result.table['k_star'] == result.table['n']).all()
    assert result.slope == pytest.approx(1.0)


def test_scaling_rejects_unsorted_grid(exponential, uniform_cost):
    with pytest.raises(ParameterError):
        scaling_experiment(exponential, uniform_cost, [100, 10])


def test_entry_pipeline_rounds_entrants(exponential, uniform_cost):
    outcome = entry_pipeline(MarketConfig(1, exponential, uniform_cost), CongestionFunction('linear'))
    assert outcome.entrants == 2
    assert outcome.effort.entrants == 2
    assert abs(outcome.effort.residual) < 1e-10

    outcome = entry_pipeline(MarketConfig(10000, exponential, uniform_cost), CongestionFunction('linear'))
    assert outcome.entrants == round(outcome.entry.expected_entrants)
