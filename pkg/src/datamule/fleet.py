"""Minimum-cost number of equipped vehicles under peak-age and rate targets."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .analytics import (
    SECONDS_PER_MINUTE,
    mean_data_size,
    mean_transmission_rate,
    mpaoi_approx,
    one_way_floor,
)
from .errors import InvalidParameterError
from .model import RouteModel, mean_round_trip


@dataclass(frozen=True)
class QosTargets:
    mpaoi_threshold: float  # minutes
    rate_threshold: float  # Mbit/s

    def __post_init__(self):
        if not (self.mpaoi_threshold > 0 and self.rate_threshold > 0):
            raise InvalidParameterError("QoS thresholds must be positive")


@dataclass(frozen=True)
class CostModel:
    mule_cost: float
    gateway_cost: float
    gateway_count: int = 2

    def __post_init__(self):
        if self.mule_cost < 0 or self.gateway_cost < 0 or self.gateway_count < 0:
            raise InvalidParameterError("costs and gateway count must be non-negative")


@dataclass(frozen=True)
class FleetPlan:
    n_opt: int | None
    alpha: float
    beta: float
    binding_constraint: str | None  # "aoi", "rate" or "both"
    total_cost: float | None
    feasible: bool
    fleet_cap_exceeded: bool
    diagnostic: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def satisfies(route: RouteModel, targets: QosTargets, n: int) -> tuple[bool, bool]:
    """(peak-age ok, rate ok) at ``n`` vehicles, thresholds inclusive."""
    aoi_ok = mpaoi_approx(route, n).mpaoi <= targets.mpaoi_threshold
    rate_ok = mean_transmission_rate(route, n) >= targets.rate_threshold
    return aoi_ok, rate_ok


def optimize(
    route: RouteModel,
    targets: QosTargets,
    costs: CostModel,
    fleet_cap: int | None = None,
) -> FleetPlan:
    """Closed-form ``ceil(max(alpha, beta))`` with alpha from the peak-age
    target and beta from the rate target.

    A peak-age target at or below the one-way floor cannot be met by any
    fleet; that comes back as ``feasible=False`` rather than an exception.
    """
    mu = mean_round_trip(route)
    floor = one_way_floor(route)
    slack = targets.mpaoi_threshold - floor
    alpha = mu / slack if slack > 0 else math.inf
    beta = targets.rate_threshold * mu * SECONDS_PER_MINUTE / mean_data_size(route)

    if not math.isfinite(alpha):
        return FleetPlan(
            n_opt=None,
            alpha=alpha,
            beta=beta,
            binding_constraint="aoi",
            total_cost=None,
            feasible=False,
            fleet_cap_exceeded=False,
            diagnostic=(
                f"peak-age threshold {targets.mpaoi_threshold:g} min is not above the "
                f"one-way floor {floor:g} min (gap {slack:g} min)"
            ),
        )

    n_aoi = max(1, math.ceil(alpha))
    n_rate = max(1, math.ceil(beta))
    n_opt = max(n_aoi, n_rate)
    binding = "both" if n_aoi == n_rate else ("aoi" if n_aoi > n_rate else "rate")
    exceeded = fleet_cap is not None and n_opt > fleet_cap
    return FleetPlan(
        n_opt=n_opt,
        alpha=alpha,
        beta=beta,
        binding_constraint=binding,
        total_cost=n_opt * costs.mule_cost + costs.gateway_count * costs.gateway_cost,
        feasible=True,
        fleet_cap_exceeded=exceeded,
        diagnostic=f"needs {n_opt} vehicles but only {fleet_cap} run the route" if exceeded else "",
    )


def verify_by_scan(route: RouteModel, targets: QosTargets, max_n: int) -> int | None:
    """Smallest n in 1..max_n meeting both targets, by direct evaluation."""
    if max_n < 1:
        raise InvalidParameterError("max_n must be at least 1")
    for n in range(1, max_n + 1):
        if all(satisfies(route, targets, n)):
            return n
    return None
