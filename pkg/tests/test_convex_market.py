# -*- coding: utf-8 -*-
"""
凸优化市场模块测试
"""

import dataclasses
import json

import numpy as np
import pytest

from distributions.errors import ParameterError
from convex_market.profiles import (
    LogUtility, QuadraticUtility, SolverCost, SolverProfile, CfmmExchange, ConvexMarket, CongestionCost,
    solver_best_response, user_best_response,
)
from convex_market.dutch_auction import (
    dual_value_and_gradient, opening_price, run_dutch_auction, direct_welfare_oracle, check_optimality,
    solution_summary,
)
from convex_market.congestion import congestion_comparison, congested_supplies
from convex_market.market_io import (
    market_from_dict, market_to_dict, congestion_from_dict, load_market, solution_to_dict, random_market,
)


def test_utility_and_cost_shapes():
    xs = np.linspace(0.0, 20.0, 201)
    for utility in (LogUtility(a=2.0, b=0.5), QuadraticUtility(a=1.0, q=0.2)):
        values = utility.value(xs)
        assert values[0] == 0.0
        assert (np.diff(values) >= 0).all()
        assert (np.diff(values, 2) <= 1e-12).all()
    cost = SolverCost(linear=0.1, quadratic=0.3)
    assert cost.value(0.0) == 0.0
    assert (np.diff(cost.value(xs), 2) >= -1e-12).all()
    assert np.isinf(SolverCost(cap=1.0).value(1.5))


def test_quadratic_utility_flat_after_peak():
    u = QuadraticUtility(a=1.0, q=0.5)
    assert u.value(10.0) == pytest.approx(u.value(u.peak))
    assert u.marginal(10.0) == 0.0


def test_profile_validation():
    with pytest.raises(ParameterError):
        LogUtility(a=0.0)
    with pytest.raises(ParameterError):
        SolverCost(linear=-1.0)
    with pytest.raises(ParameterError):
        CfmmExchange(fee=1.0)
    with pytest.raises(ParameterError):
        SolverProfile('s', LogUtility(), quote_price=-0.1)
    with pytest.raises(ParameterError):
        ConvexMarket(delta=-1.0, cfmm=CfmmExchange())
    with pytest.raises(ParameterError):
        ConvexMarket(delta=1.0, cfmm=CfmmExchange(), solvers=[SolverProfile('s', LogUtility())] * 2)


def test_cfmm_exchange(cfmm):
    assert cfmm.output(0.0) == 0.0
    assert cfmm.output(10.0) == pytest.approx(100.0 * 10.0 / 110.0)
    assert cfmm.marginal(0.0) == pytest.approx(1.0)
    with_fee = CfmmExchange(reserve_in=100.0, reserve_out=100.0, fee=0.003)
    assert with_fee.output(10.0) < cfmm.output(10.0)


def test_solver_best_response_log_zero_cost():
    solver = SolverProfile('s', LogUtility(a=2.0, b=1.0))
    # a / (1 + x) = ν
    assert solver_best_response(solver, 0.5) == pytest.approx(3.0, rel=1e-15)
    assert solver.utility.marginal(solver_best_response(solver, 0.5)) == pytest.approx(0.5, rel=1e-15)
    assert solver_best_response(solver, 2.0) == 0.0
    assert solver_best_response(solver, 5.0) == 0.0
    with pytest.raises(ParameterError):
        solver_best_response(solver, -1.0)


def test_solver_best_response_first_order_condition():
    solver = SolverProfile('s', LogUtility(a=1.5, b=2.0), SolverCost(linear=0.05, quadratic=0.1))
    for price in (0.2, 0.8, 1.5):
        x = solver_best_response(solver, price)
        assert x > 0
        assert solver.marginal_surplus(x) == pytest.approx(price, rel=1e-12)


def test_solver_best_response_quadratic_and_cap():
    solver = SolverProfile('s', QuadraticUtility(a=1.2, q=0.2), SolverCost(linear=0.1, quadratic=0.05))
    assert solver_best_response(solver, 0.5) == pytest.approx(2.4, rel=1e-14)
    capped = SolverProfile('c', LogUtility(a=2.0, b=1.0), SolverCost(cap=1.0))
    assert solver_best_response(capped, 0.5) == 1.0
    assert solver_best_response(capped, 2.0) == 0.0


def test_user_best_response(cfmm):
    assert user_best_response(cfmm, 10.0, 0.0) == 0.0
    # g(0) = 1，ν = 1 时全部交给求解者
    assert user_best_response(cfmm, 10.0, 1.0) == 10.0
    assert user_best_response(cfmm, 10.0, 50.0) == 10.0
    y = user_best_response(cfmm, 10.0, 0.9)
    assert 0.0 < y < 10.0
    assert cfmm.marginal(10.0 - y) == pytest.approx(0.9, rel=1e-12)
    assert user_best_response(cfmm, 0.0, 0.9) == 0.0


def test_dual_gradient_is_nondecreasing(two_solver_market):
    prices = np.linspace(0.0, 2.0, 81)
    gradients = [dual_value_and_gradient(two_solver_market, nu)[1] for nu in prices]
    assert gradients[0] < 0
    assert gradients[-1] == pytest.approx(two_solver_market.delta)
    assert all(b >= a - 1e-12 for a, b in zip(gradients, gradients[1:]))


def test_dual_gradient_matches_finite_difference(two_solver_market):
    nu, eps = 0.9, 1e-6
    h_plus, _ = dual_value_and_gradient(two_solver_market, nu + eps)
    h_minus, _ = dual_value_and_gradient(two_solver_market, nu - eps)
    _, gradient = dual_value_and_gradient(two_solver_market, nu)
    assert (h_plus - h_minus) / (2.0 * eps) == pytest.approx(gradient, rel=1e-4)


def test_opening_price_has_zero_supply(two_solver_market):
    start = opening_price(two_solver_market)
    assert all(solver_best_response(s, start) == 0.0 for s in two_solver_market.solvers)
    _, gradient = dual_value_and_gradient(two_solver_market, start)
    assert gradient == pytest.approx(two_solver_market.delta)


def test_dutch_auction_interior_solution(two_solver_market):
    solution = run_dutch_auction(two_solver_market)
    assert solution.converged
    assert solution.corner == 'interior'
    assert solution.price >= 0
    assert solution.feasibility_gap < 1e-8
    assert all(x > 0 for x in solution.allocations)
    report = check_optimality(two_solver_market, solution)
    assert report.ok
    assert report.duality_gap < 1e-6
    assert report.stationarity_residual < 1e-6

    oracle = direct_welfare_oracle(two_solver_market, grid_step=1e-4)
    assert solution.welfare == pytest.approx(oracle.welfare, rel=1e-6)
    assert solution.allocations == pytest.approx(oracle.allocations, abs=1e-3)


def test_dutch_auction_transcript_brackets_are_monotone(two_solver_market):
    transcript = run_dutch_auction(two_solver_market).transcript
    assert transcript[0].price == opening_price(two_solver_market)
    uppers = [step.upper for step in transcript]
    lowers = [step.lower for step in transcript]
    assert all(b <= a for a, b in zip(uppers, uppers[1:]))
    assert all(b >= a for a, b in zip(lowers, lowers[1:]))
    summary = solution_summary(run_dutch_auction(two_solver_market))
    assert summary['queries'] == len(transcript)


def test_single_log_solver_matches_oracle(cfmm):
    market = ConvexMarket(delta=10.0, cfmm=cfmm, solvers=(SolverProfile('s', LogUtility(a=1.0, b=1.0)),))
    solution = run_dutch_auction(market)
    oracle = direct_welfare_oracle(market, grid_step=1e-4)
    assert solution.welfare == pytest.approx(oracle.welfare, abs=1e-6)
    assert check_optimality(market, solution).ok


def test_identical_solvers_are_symmetric(cfmm):
    solver = SolverProfile('a', LogUtility(a=1.5, b=1.0), SolverCost(quadratic=0.2))
    market = ConvexMarket(delta=10.0, cfmm=cfmm, solvers=(solver, dataclasses.replace(solver, name='b')))
    solution = run_dutch_auction(market)
    assert abs(solution.allocations[0] - solution.allocations[1]) < 1e-8


def test_no_solvers_routes_everything_to_cfmm(cfmm):
    market = ConvexMarket(delta=10.0, cfmm=cfmm)
    solution = run_dutch_auction(market)
    assert solution.allocations == []
    assert solution.routed == 0.0
    assert solution.corner == 'all-cfmm'
    assert solution.welfare == pytest.approx(float(cfmm.output(10.0)))
    with pytest.raises(ParameterError):
        run_dutch_auction(ConvexMarket(delta=0.0, cfmm=cfmm))


def test_strong_solver_takes_whole_order(cfmm):
    market = ConvexMarket(delta=10.0, cfmm=cfmm,
                          solvers=(SolverProfile('big', QuadraticUtility(a=5.0, q=0.01)),))
    solution = run_dutch_auction(market)
    assert solution.corner == 'all-solver'
    assert solution.routed == 10.0
    assert solution.price == pytest.approx(4.9, abs=1e-9)
    assert check_optimality(market, solution).ok


def test_check_optimality_rejects_wrong_price(two_solver_market):
    solution = run_dutch_auction(two_solver_market)
    report = check_optimality(two_solver_market, dataclasses.replace(solution, price=1.1 * solution.price))
    assert not report.ok
    assert report.stationarity_residual > 1e-3


def test_dutch_auction_matches_oracle_on_random_instances():
    rng = np.random.default_rng(2024)
    for i in range(20):
        market = random_market(rng, 1 + i % 2)
        solution = run_dutch_auction(market)
        report = check_optimality(market, solution)
        assert report.ok, (i, report)
        assert report.duality_gap < 1e-6
        assert solution.feasibility_gap < 1e-8
        oracle = direct_welfare_oracle(market, grid_step=1e-4)
        assert solution.welfare == pytest.approx(oracle.welfare, rel=1e-4)
        assert solution.welfare >= oracle.welfare - 1e-7


def test_direct_welfare_oracle_edge_cases(cfmm, two_solver_market):
    assert direct_welfare_oracle(ConvexMarket(delta=10.0, cfmm=cfmm)).welfare == pytest.approx(
        float(cfmm.output(10.0)))
    empty_order = dataclasses.replace(two_solver_market, delta=0.0)
    solution = direct_welfare_oracle(empty_order)
    assert solution.welfare == 0.0
    assert solution.allocations == [0.0, 0.0]
    crowded = ConvexMarket(delta=1.0, cfmm=cfmm,
                           solvers=tuple(SolverProfile(f"s{i}", LogUtility()) for i in range(4)))
    with pytest.raises(ParameterError):
        direct_welfare_oracle(crowded)
    with pytest.raises(ParameterError):
        direct_welfare_oracle(two_solver_market, grid_step=0.0)


def test_congestion_cost():
    solver = SolverProfile('s', LogUtility(), SolverCost(linear=0.1, quadratic=0.2))
    congestion = CongestionCost(cross_weight=0.5)
    assert congestion.value(solver, 2.0, 0.0) == pytest.approx(float(solver.cost.value(2.0)))
    assert congestion.value(solver, 2.0, 3.0) == pytest.approx(float(solver.cost.value(2.0)) + 3.0)
    assert congestion.marginal(solver, 2.0, 3.0) > congestion.marginal(solver, 2.0, 0.0)
    with pytest.raises(ParameterError):
        CongestionCost(cross_weight=-0.1)


def test_congestion_lowers_price_on_random_instances():
    rng = np.random.default_rng(7)
    for _ in range(20):
        market = random_market(rng, 2, profile='congestion')
        comparison = congestion_comparison(market, CongestionCost(0.5))
        assert comparison.status == 'ok'
        assert comparison.congested_price < comparison.independent_price
        assert comparison.congested_user_output <= comparison.independent_user_output
        assert comparison.price_drop > 0


def test_zero_cross_weight_gives_identical_price():
    rng = np.random.default_rng(11)
    for _ in range(5):
        market = random_market(rng, 2, profile='congestion')
        comparison = congestion_comparison(market, CongestionCost(0.0))
        assert comparison.congested_price == comparison.independent_price
        assert comparison.congested_allocations == comparison.independent_allocations


def test_single_solver_unaffected_by_congestion(cfmm):
    market = ConvexMarket(delta=10.0, cfmm=cfmm,
                          solvers=(SolverProfile('s', LogUtility(a=3.0, b=1.0), SolverCost(quadratic=1.0)),))
    comparison = congestion_comparison(market, CongestionCost(0.5))
    assert comparison.congested_price == comparison.independent_price


def test_congested_supplies_fixed_point(two_solver_market):
    market = random_market(np.random.default_rng(5), 2, profile='congestion')
    costs = [CongestionCost(0.5)] * 2
    supplies, iterations = congested_supplies(market, costs, 0.5)
    assert iterations >= 1
    total = sum(supplies)
    for solver, x in zip(market.solvers, supplies):
        assert x == pytest.approx(solver_best_response(solver, 0.5, extra_marginal=0.5 * (total - x)),
                                  abs=1e-10)
    with pytest.raises(ParameterError):
        congestion_comparison(two_solver_market, [CongestionCost(0.5)])


def test_market_document_round_trip(two_solver_market, tmp_path):
    congestion = CongestionCost(0.25)
    doc = market_to_dict(two_solver_market, congestion)
    assert market_from_dict(doc) == two_solver_market
    assert congestion_from_dict(doc) == congestion
    assert congestion_from_dict(market_to_dict(two_solver_market)) is None

    path = tmp_path / 'market.json'
    path.write_text(json.dumps(doc), encoding='utf-8')
    assert load_market(str(path)) == two_solver_market


def test_load_market_errors(tmp_path):
    with pytest.raises(ParameterError):
        load_market(str(tmp_path / 'missing.json'))
    broken = tmp_path / 'broken.json'
    broken.write_text('{"delta": ', encoding='utf-8')
    with pytest.raises(ParameterError):
        load_market(str(broken))
    with pytest.raises(ParameterError):
        market_from_dict({'delta': 1.0})
    cfmm_doc = {'R1': 100.0, 'R2': 100.0}
    with pytest.raises(ParameterError):
        market_from_dict({'delta': 1.0, 'cfmm': cfmm_doc, 'solvers': [{'family': 'cubic'}]})
    with pytest.raises(ParameterError):
        market_from_dict({'delta': 1.0, 'cfmm': cfmm_doc,
                          'solvers': [{'family': 'log', 'params': {'c': 1.0}}]})


def test_solution_to_dict(two_solver_market):
    solution = run_dutch_auction(two_solver_market)
    doc = solution_to_dict(solution, two_solver_market)
    assert set(doc['allocations']) == {'log', 'quad'}
    assert len(doc['transcript']) == len(solution.transcript)
    assert set(doc['transcript'][0]) == {'iteration', 'price', 'gradient', 'lower', 'upper'}
    json.dumps(doc)


def test_random_market_is_reproducible():
    first = random_market(np.random.default_rng(3), 2)
    second = random_market(np.random.default_rng(3), 2)
    assert first == second
    assert all(s.is_rational_quote(first.delta) for s in first.solvers)
    assert random_market(np.random.default_rng(3), 0).solvers == ()
    with pytest.raises(ParameterError):
        random_market(np.random.default_rng(3), 2, profile='stressed')
