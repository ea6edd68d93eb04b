# -*- coding: utf-8 -*-
"""
测试公共夹具
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from distributions.price_distributions import Exponential, UniformUnit, GeneralizedPareto
from distributions.cost_distributions import UniformCost
from convex_market.profiles import (
    LogUtility, QuadraticUtility, SolverCost, SolverProfile, CfmmExchange, ConvexMarket,
)


@pytest.fixture
def exponential():
    return Exponential(rate=1.0)


@pytest.fixture
def uniform():
    return UniformUnit()


@pytest.fixture
def heavy_pareto():
    return GeneralizedPareto(location=0.0, scale=100.0, shape=1.0, tail=0.95)


@pytest.fixture
def uniform_cost():
    return UniformCost()


@pytest.fixture
def cfmm():
    return CfmmExchange(reserve_in=100.0, reserve_out=100.0, fee=0.0)


@pytest.fixture
def two_solver_market(cfmm):
    """一个对数效用、一个二次效用求解者的小市场"""
    solvers = (
        SolverProfile('log', LogUtility(a=1.5, b=1.0), SolverCost(linear=0.05, quadratic=0.1)),
        SolverProfile('quad', QuadraticUtility(a=1.2, q=0.2), SolverCost(linear=0.1, quadratic=0.05)),
    )
    return ConvexMarket(delta=10.0, cfmm=cfmm, solvers=solvers)
