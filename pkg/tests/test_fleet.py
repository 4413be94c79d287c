import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from datamule.analytics import one_way_floor
from datamule.fleet import CostModel, QosTargets, optimize, satisfies, verify_by_scan
from datamule.model import RouteModel, mean_round_trip
from datamule.presets import nouakchott_route

COSTS = CostModel(mule_cost=300, gateway_cost=800)


def test_worked_example(table):
    plan = optimize(table, QosTargets(200, 1), COSTS)
    assert plan.alpha == pytest.approx(248 / 76)
    assert plan.beta == pytest.approx(248 * 60 / 2200)
    assert plan.n_opt == 7
    assert plan.binding_constraint == "rate"
    assert plan.total_cost == 3700
    assert plan.feasible and not plan.fleet_cap_exceeded
    assert verify_by_scan(table, QosTargets(200, 1), 50) == 7


def test_single_mule_suffices(table):
    plan = optimize(table, QosTargets(400, 0.1), COSTS)
    assert plan.alpha == pytest.approx(0.899, abs=1e-3)
    assert plan.beta == pytest.approx(0.676, abs=1e-3)
    assert plan.n_opt == 1


@pytest.mark.parametrize("threshold", [100, 124])
def test_threshold_at_or_below_floor_is_infeasible(table, threshold):
    plan = optimize(table, QosTargets(threshold, 1), COSTS)
    assert not plan.feasible
    assert plan.n_opt is None and math.isinf(plan.alpha)
    assert "124" in plan.diagnostic
    assert verify_by_scan(table, QosTargets(threshold, 1), 10_000) is None


def test_nouakchott_equality_at_threshold():
    route = nouakchott_route()
    targets = QosTargets(70, 5)
    assert mean_round_trip(route) == 126 and one_way_floor(route) == 63
    plan = optimize(route, targets, COSTS)
    assert plan.alpha == 18
    assert plan.n_opt == verify_by_scan(route, targets, 1000) == 18


def test_fleet_cap(table):
    plan = optimize(table, QosTargets(200, 1), COSTS, fleet_cap=5)
    assert plan.fleet_cap_exceeded and plan.feasible
    assert not optimize(table, QosTargets(200, 1), COSTS, fleet_cap=7).fleet_cap_exceeded


def test_gateway_count(table):
    plan = optimize(table, QosTargets(200, 1), CostModel(300, 800, gateway_count=6))
    assert plan.total_cost == 7 * 300 + 6 * 800


routes = st.builds(
    lambda c1, w, t, d, r: RouteModel.symmetric(c1, c1 + w, t, d, r),
    st.floats(0.5, 20),
    st.floats(0, 20),
    st.floats(1, 300),
    st.floats(0, 100),
    st.floats(1, 100),
)


@given(route=routes, excess=st.floats(1, 1000), rate=st.floats(0.01, 50))
def test_minimality(route, excess, rate):
    targets = QosTargets(one_way_floor(route) + excess, rate)
    plan = optimize(route, targets, COSTS)
    assert all(satisfies(route, targets, plan.n_opt))
    if plan.n_opt > 1:
        assert not all(satisfies(route, targets, plan.n_opt - 1))
    assert plan.total_cost == plan.n_opt * COSTS.mule_cost + 2 * COSTS.gateway_cost


@given(
    route=routes, excess=st.floats(1, 500), rate=st.floats(0.01, 20), tighten=st.floats(0.1, 0.99)
)
def test_tightening_never_decreases_n(route, excess, rate, tighten):
    floor = one_way_floor(route)
    base = optimize(route, QosTargets(floor + excess, rate), COSTS).n_opt
    assert optimize(route, QosTargets(floor + excess * tighten, rate), COSTS).n_opt >= base
    assert optimize(route, QosTargets(floor + excess, rate / tighten), COSTS).n_opt >= base


def random_instances(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        c1 = rng.uniform(0.5, 15)
        route = RouteModel.symmetric(
            c1, c1 + rng.uniform(0, 15), rng.uniform(5, 300), rng.uniform(0, 80), rng.uniform(1, 50)
        )
        targets = QosTargets(one_way_floor(route) + rng.uniform(1, 600), rng.uniform(0.01, 20))
        yield route, targets


def test_oracle_agreement_on_random_instances():
    for route, targets in random_instances(1000, 2024):
        plan = optimize(route, targets, COSTS)
        assert plan.n_opt == verify_by_scan(route, targets, max(plan.n_opt, 1) + 50)
