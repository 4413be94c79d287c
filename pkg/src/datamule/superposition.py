"""Equilibrium superposition of ``n`` independent vehicle renewal processes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, InvalidParameterError, NumericalError
from .model import RouteModel, make_rng, mean_round_trip, sample_phase_durations

GRID_POINTS = 4096
TAIL_PROBABILITY = 1e-6
WARMUP_MULTIPLIER = 5.0
MIN_HORIZON_MULTIPLIER = 50.0
CLAMP_TOLERANCE = 1e-6


@dataclass(frozen=True)
class SuperposedProcess:
    n: int
    mu: float
    mean_interarrival: float
    arrival_rate: float


@dataclass(frozen=True)
class IntervalDensityGrid:
    """Superposed inter-arrival density sampled on a grid (per minute)."""

    abscissae: np.ndarray
    density: np.ndarray
    survival_single: np.ndarray

    def total_mass(self) -> float:
        return float(np.trapezoid(self.density, self.abscissae))

    def first_moment(self) -> float:
        return float(np.trapezoid(self.abscissae * self.density, self.abscissae))

    def cdf(self) -> np.ndarray:
        """Cumulative trapezoid of the density, starting at 0."""
        steps = 0.5 * (self.density[1:] + self.density[:-1]) * np.diff(self.abscissae)
        return np.concatenate(([0.0], np.cumsum(steps)))


def superpose(mu: float, n: int) -> SuperposedProcess:
    if not (mu > 0 and np.isfinite(mu)):
        raise InvalidParameterError(f"mu must be positive, got {mu}")
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"n must be a positive integer, got {n}")
    n = int(n)
    return SuperposedProcess(n=n, mu=mu, mean_interarrival=mu / n, arrival_rate=n / mu)


# Antiderivatives of the survival of an exponential delay with the given mean.
# Level 0 is the survival itself; levels 1 and 2 integrate from 0, and for
# z < 0 the survival is 1, so the levels continue as z and z**2 / 2.


def _below_zero(z: np.ndarray, level: int) -> np.ndarray:
    if level == 0:
        return np.ones_like(z)
    return z if level == 1 else 0.5 * z**2


def _exp_level(z: np.ndarray, mean: float, level: int) -> np.ndarray:
    pos = np.maximum(z, 0.0)
    if mean == 0:
        tail = np.zeros_like(pos)
    else:
        e = np.exp(-pos / mean)
        if level == 0:
            tail = e
        elif level == 1:
            tail = mean * (1 - e)
        else:
            tail = mean * pos - mean**2 * (1 - e)
    return np.where(z < 0, _below_zero(np.minimum(z, 0.0), level), tail)


def _erlang2_level(z: np.ndarray, mean: float, level: int) -> np.ndarray:
    pos = np.maximum(z, 0.0)
    e = np.exp(-pos / mean)
    if level == 0:
        tail = e * (1 + pos / mean)
    elif level == 1:
        tail = 2 * mean - e * (2 * mean + pos)
    else:
        tail = 2 * mean * pos - 3 * mean**2 + e * (3 * mean**2 + mean * pos)
    return np.where(z < 0, _below_zero(np.minimum(z, 0.0), level), tail)


def _delay_sum_level(z: np.ndarray, a: float, b: float, level: int) -> np.ndarray:
    """Level-th antiderivative of P(Exp(a) + Exp(b) > z)."""
    if a == 0 or b == 0:
        return _exp_level(z, max(a, b), level)
    if abs(a - b) <= 1e-9 * max(a, b):
        return _erlang2_level(z, 0.5 * (a + b), level)
    # hypoexponential survival is an affine mix of the two exponential survivals
    p = a / (a - b)
    return p * _exp_level(z, a, level) + (1 - p) * _exp_level(z, b, level)


def survival_function(route: RouteModel) -> Callable[[np.ndarray], np.ndarray]:
    """Exact survival ``P(T_v > x)`` of one vehicle's round-trip time.

    The round trip is ``U_A + U_B + shift + D`` with uniform contacts and a
    sum of two exponential delays ``D``. Each non-degenerate uniform is
    integrated out analytically as a divided difference of the next
    antiderivative of the delay survival.
    """
    shift = route.travel_ab.t_min + route.travel_ba.t_min
    a, b = route.travel_ab.mean_delay, route.travel_ba.mean_delay
    contacts = [route.contact_a, route.contact_b]

    def survival(x):
        x = np.asarray(x, dtype=float)
        terms = [(1.0, x - shift)]
        level = 0
        for c in contacts:
            width = c.c2 - c.c1
            if width == 0:
                terms = [(w, z - c.c1) for w, z in terms]
                continue
            level += 1
            terms = [
                pair for w, z in terms for pair in ((w / width, z - c.c1), (-w / width, z - c.c2))
            ]
        out = sum(w * _delay_sum_level(z, a, b, level) for w, z in terms)
        return np.clip(out, 0.0, 1.0)

    return survival


def tail_quantile(route: RouteModel, prob: float = TAIL_PROBABILITY) -> float:
    """Smallest ``x`` with survival ``<= prob``."""
    surv = survival_function(route)
    lo = route.support_min
    hi = route.contact_a.c2 + route.contact_b.c2 + route.travel_ab.t_min + route.travel_ba.t_min
    if surv(hi) <= prob:
        return float(hi) if surv(lo) > prob else float(lo)
    scale = max(route.travel_ab.mean_delay, route.travel_ba.mean_delay)
    step = scale
    while surv(hi + step) > prob:
        step *= 2
    return float(brentq(lambda x: float(surv(x)) - prob, hi, hi + step, xtol=1e-10))


def default_grid(route: RouteModel, points: int = GRID_POINTS) -> np.ndarray:
    """Grid from 0 to the tail quantile of one vehicle's round-trip time.

    Starting at 0 matters for ``n > 1``: merged gaps can be far shorter than
    any single round trip.
    """
    end = tail_quantile(route)
    if end <= 0:
        raise InvalidParameterError("route has a zero-length round trip")
    return np.linspace(0.0, end, points)


def _check_grid(route: RouteModel, grid: np.ndarray) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3 or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be a strictly increasing 1-D array of >= 3 points")
    if grid[0] > route.support_min:
        raise DomainError(f"grid starts at {grid[0]} above support minimum {route.support_min}")
    q = tail_quantile(route)
    if grid[-1] < q * (1 - 1e-12):
        raise DomainError(f"grid ends at {grid[-1]} below the tail quantile {q}")
    return grid


def single_interarrival_survival(route: RouteModel, grid) -> np.ndarray:
    """Survival of one vehicle's inter-arrival time evaluated on ``grid``."""
    grid = _check_grid(route, grid)
    return survival_function(route)(grid)


def superposed_density(survival: np.ndarray, grid: np.ndarray, mu: float, n: int) -> np.ndarray:
    """Numerical ``-d/dx [S(x) (int_x^inf S/mu)^(n-1)]`` on ``grid``.

    The inner integral is a right-to-left cumulative trapezoid (mass beyond
    the last grid point is neglected) and the outer derivative uses second
    order central differences.
    """
    grid = np.asarray(grid, dtype=float)
    survival = np.asarray(survival, dtype=float)
    steps = 0.5 * (survival[1:] + survival[:-1]) * np.diff(grid)
    inner = np.concatenate((np.cumsum(steps[::-1])[::-1], [0.0])) / mu
    bracket = survival * inner ** (n - 1)
    density = -np.gradient(bracket, grid, edge_order=2)
    worst = density.min()
    if worst < -CLAMP_TOLERANCE:
        raise NumericalError(f"interval density went negative ({worst:.3g})")
    return np.maximum(density, 0.0)


def interval_density(route: RouteModel, n: int, grid=None) -> IntervalDensityGrid:
    """Equilibrium density of gaps between consecutive arrivals of ``n`` vehicles."""
    proc = superpose(mean_round_trip(route), n)
    grid = default_grid(route) if grid is None else np.asarray(grid, dtype=float)
    survival = single_interarrival_survival(route, grid)
    density = superposed_density(survival, grid, proc.mu, proc.n)
    return IntervalDensityGrid(abscissae=grid, density=density, survival_single=survival)


def _arrival_times(route: RouteModel, rng: np.random.Generator, horizon: float) -> np.ndarray:
    """Arrival times at A of one vehicle that starts its first contact at t=0."""
    mu = mean_round_trip(route)
    trips = int(horizon / mu * 1.2) + 16
    totals = sample_phase_durations(route, rng, trips).sum(axis=1)
    times = np.cumsum(totals)
    while times[-1] < horizon:
        more = sample_phase_durations(route, rng, trips).sum(axis=1)
        times = np.concatenate((times, times[-1] + np.cumsum(more)))
    return np.concatenate(([0.0], times[times <= horizon]))


def simulate_superposition(
    route: RouteModel,
    n: int,
    horizon: float,
    rng: np.random.Generator | int,
    warmup_multiplier: float = WARMUP_MULTIPLIER,
) -> np.ndarray:
    """Monte-Carlo gaps between merged arrivals at A, in time order.

    Arrivals before ``warmup_multiplier * mu`` are discarded.
    """
    mu = mean_round_trip(route)
    superpose(mu, n)
    if horizon < MIN_HORIZON_MULTIPLIER * mu:
        raise InvalidParameterError(
            f"horizon {horizon} is shorter than {MIN_HORIZON_MULTIPLIER:g} * mu = "
            f"{MIN_HORIZON_MULTIPLIER * mu:g}"
        )
    if not isinstance(rng, np.random.Generator):
        rng = make_rng(rng)
    arrivals = np.sort(np.concatenate([_arrival_times(route, rng, horizon) for _ in range(n)]))
    arrivals = arrivals[arrivals >= warmup_multiplier * mu]
    return np.diff(arrivals)
