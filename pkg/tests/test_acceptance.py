"""Exit criteria for the package, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary lists a
PASS/FAIL line for each criterion.
"""

import time

import numpy as np
import pytest
from test_fleet import random_instances
from test_superposition import ks_distance

from datamule.analytics import (
    data_size_ccdf,
    mean_data_size,
    mean_transmission_rate,
    monte_carlo_data_size,
    mpaoi_approx,
)
from datamule.des import AoIMonitor, run_replications
from datamule.fleet import CostModel, QosTargets, optimize, verify_by_scan
from datamule.model import RouteModel, make_rng
from datamule.presets import accra_route, nouakchott_route, table_route
from datamule.superposition import interval_density, simulate_superposition, superposed_density
from datamule.sweeps import route_for_round_trip

SEEDS = list(range(20))
HORIZON = 1e5


@pytest.fixture(scope="module")
def fig3_reports():
    route = table_route()
    start = time.perf_counter()
    reports = {n: run_replications(route, n, HORIZON, SEEDS) for n in range(1, 21)}
    return reports, time.perf_counter() - start


def within(value, target, rel):
    return abs(value - target) <= rel * abs(target)


def test_c1_superposition_mean(acceptance_record):
    route = table_route()
    ok, parts = True, []
    for n in (1, 5, 20):
        start = time.perf_counter()
        gaps = simulate_superposition(route, n, HORIZON, 1000 + n)
        elapsed = time.perf_counter() - start
        good = within(gaps.mean(), 248 / n, 0.02) and elapsed < 10
        ok &= good
        parts.append(f"n={n} gap={gaps.mean():.3f} vs {248 / n:.3f} ({elapsed:.2f}s)")
    assert acceptance_record("C1 superposition mean", ok, "; ".join(parts))


def test_c2_data_size(acceptance_record):
    route = table_route()
    exact = mean_data_size(route)
    samples = monte_carlo_data_size(route, make_rng(2))
    mc = samples.mean()
    sorted_samples = np.sort(samples)
    m = np.linspace(1800, 3000, 601)
    empirical = 1 - np.searchsorted(sorted_samples, m, side="right") / samples.size
    sup = np.max(np.abs(empirical - np.array([float(data_size_ccdf(route, x)) for x in m])))
    ok = exact == 2200 and within(mc, 2200, 0.005) and sup < 0.01
    detail = f"E[m]={exact} MC={mc:.2f} CCDF sup-norm={sup:.4f}"
    assert acceptance_record("C2 mean data size", ok, detail)


def test_c3_mpaoi_approximation(fig3_reports, acceptance_record):
    reports, elapsed = fig3_reports
    errors = {n: r.approx_error for n, r in reports.items()}
    worst = max(errors, key=errors.get)
    one, twenty = reports[1].simulated_mpaoi, reports[20].simulated_mpaoi
    ok = within(one, 375, 0.05) and 130 <= twenty <= 165 and errors[worst] <= 10 and elapsed < 300
    detail = (
        f"sim MPAoI n=1 {one:.2f}, n=20 {twenty:.2f}; max |sim-approx| "
        f"{errors[worst]:.2f} at n={worst}; {elapsed:.1f}s"
    )
    assert acceptance_record("C3 MPAoI approximation", ok, detail)


def test_c4_rate_linearity(fig3_reports, acceptance_record):
    reports, _ = fig3_reports
    route = table_route()
    sim_ratio = reports[20].simulated_mean_rate / reports[1].simulated_mean_rate
    analytic_ratio = mean_transmission_rate(route, 20) / mean_transmission_rate(route, 1)
    ok = within(sim_ratio, 20, 0.03) and analytic_ratio == pytest.approx(20, rel=1e-12)
    detail = f"simulated ratio {sim_ratio:.3f}, analytic ratio {analytic_ratio:.12g}"
    assert acceptance_record("C4 rate linearity", ok, detail)


def _case(route, mpaoi1, mpaoi20, rate20):
    got = (
        mpaoi_approx(route, 1).mpaoi,
        mpaoi_approx(route, 20).mpaoi,
        mean_transmission_rate(route, 20),
    )
    ok = all(within(g, t, 0.15) for g, t in zip(got, (mpaoi1, mpaoi20, rate20)))
    detail = (
        f"MPAoI n=1 {got[0]:.1f} (read {mpaoi1}), n=20 {got[1]:.1f} (read {mpaoi20}), "
        f"rate n=20 {got[2]:.2f} (read {rate20})"
    )
    return ok, detail


def test_c5_nouakchott(acceptance_record):
    ok, detail = _case(nouakchott_route(), 180, 65, 12.5)
    assert acceptance_record("C5 Nouakchott case", ok, detail)


def test_c6_accra(acceptance_record):
    ok, detail = _case(accra_route(), 350, 120, 7)
    assert acceptance_record("C6 Accra case", ok, detail)


def test_c7_optimizer(acceptance_record):
    start = time.perf_counter()
    mismatches = sum(
        optimize(route, targets, CostModel(300, 800)).n_opt
        != verify_by_scan(route, targets, 10_000)
        for route, targets in random_instances(1000, 7)
    )
    route = table_route()
    worked = optimize(route, QosTargets(200, 1), CostModel(300, 800)).n_opt
    infeasible = [
        optimize(route, QosTargets(t, 1), CostModel(300, 800)).feasible for t in (50, 100, 124)
    ]
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and worked == 7 and not any(infeasible) and elapsed < 5
    detail = f"{mismatches} mismatches / 1000, worked n_opt={worked}, {elapsed:.2f}s"
    assert acceptance_record("C7 optimizer", ok, detail)


def test_c8_aoi_accounting(acceptance_record):
    monitor = AoIMonitor()
    for t, g in [(10, 6), (25, 20), (30, 18), (40, 35)]:
        monitor.deliver(t, g)
    tl = monitor.timeline()
    ok = tl.effective_peaks == [19, 20] and tl.mpaoi == 19.5 and tl.maoi == 12.0
    detail = f"peaks={tl.effective_peaks} MPAoI={tl.mpaoi} MAoI={tl.maoi}"
    assert acceptance_record("C8 AoI accounting", ok, detail)


def test_c9_interval_density(acceptance_record):
    route = table_route()
    parts, ok = [], True
    for n in (1, 2, 5):
        g = interval_density(route, n)
        mass, mean = g.total_mass(), g.first_moment()
        ok &= abs(mass - 1) <= 1e-3 and within(mean, 248 / n, 0.01)
        parts.append(f"n={n} mass={mass:.6f} mean={mean:.3f}")

    mu = 248.0
    grid = np.linspace(0, mu * np.log(1e6), 4096)
    worst = 0.0
    for n in (1, 2, 5, 20):
        exact = n / mu * np.exp(-n * grid / mu)
        g = superposed_density(np.exp(-grid / mu), grid, mu, n)
        worst = max(worst, np.max(np.abs(g - exact)) / exact.max())
    ok &= worst < 0.01
    parts.append(f"exponential sup-err {worst:.2e}")

    g5 = interval_density(route, 5)
    gaps = np.concatenate([simulate_superposition(route, 5, HORIZON, s) for s in SEEDS])
    ks = ks_distance(gaps, g5.abscissae, g5.cdf())
    ok &= ks < 0.02
    parts.append(f"KS n=5 {ks:.4f} over {gaps.size} gaps")
    assert acceptance_record("C9 interval density", ok, "; ".join(parts))


def test_fig4_shape(acceptance_record):
    base = RouteModel.symmetric(10, 10, 50, 0, 10)
    mus = np.arange(40.0, 400.0, 20.0)
    ok = True
    for n in (1, 20):
        rate = np.array([mean_transmission_rate(route_for_round_trip(base, m), n) for m in mus])
        mpaoi = np.array([mpaoi_approx(route_for_round_trip(base, m), n).mpaoi for m in mus])
        ok &= bool(np.all(np.diff(rate) < 0))
        ok &= bool(np.allclose(np.diff(mpaoi) / np.diff(mus), 0.5 + 1 / n))
    r120 = mean_transmission_rate(route_for_round_trip(base, 120), 1)
    detail = f"rate decreasing, MPAoI slope 1/2+1/n; rate(mu=120,n=1)={r120:.3f} Mbit/s"
    assert acceptance_record("Fig.4 shape (not a numeric target)", ok, detail)
