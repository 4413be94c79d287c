"""Closed-form throughput, peak-age and traffic-demand metrics.

Durations stay in minutes everywhere except inside :func:`mean_data_size`
and :func:`mean_transmission_rate`, which multiply contact minutes by
:data:`SECONDS_PER_MINUTE` so that Mbit/s times minutes gives Mbit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, UnsupportedConfigurationError
from .model import RouteModel, mean_round_trip, sample_contact
from .superposition import superpose

SECONDS_PER_MINUTE = 60.0


@dataclass(frozen=True)
class ThroughputMetrics:
    mean_data_size: float  # Mbit per arrival
    mean_rate: float  # Mbit/s
    per_arrival_rate: float  # arrivals per minute


@dataclass(frozen=True)
class AoIMetricsApprox:
    mpaoi: float
    one_way_floor: float


@dataclass(frozen=True)
class TrafficDemand:
    users: int
    per_user_demand: float
    total: float


@dataclass(frozen=True)
class CCDFValue:
    """CCDF of the per-arrival data size; ``in_support`` is False when clamped."""

    value: float
    in_support: bool

    def __float__(self):
        return float(self.value)


def _symmetric_contacts(route: RouteModel):
    if not route.is_symmetric_contact:
        raise UnsupportedConfigurationError(
            "the data-size closed form needs identical contact distributions at A and B; "
            "use monte_carlo_data_size for asymmetric routes"
        )
    return route.contact_a


def data_size_ccdf(route: RouteModel, m: float) -> CCDFValue:
    """P(data size per arrival > m), with ``m`` in Mbit."""
    contact = _symmetric_contacts(route)
    lo = contact.c1 * route.link_rate * SECONDS_PER_MINUTE
    hi = contact.c2 * route.link_rate * SECONDS_PER_MINUTE
    if m < lo:
        return CCDFValue(1.0, False)
    if m > hi:
        return CCDFValue(0.0, False)
    if hi == lo:
        return CCDFValue(1.0 if m < hi else 0.0, True)
    minutes = m / (route.link_rate * SECONDS_PER_MINUTE)
    return CCDFValue(((contact.c2 - minutes) / (contact.c2 - contact.c1)) ** 2, True)


def mean_data_size(route: RouteModel) -> float:
    """Mean Mbit exchanged per vehicle arrival, ``R * (2 c1 + c2) / 3``."""
    contact = _symmetric_contacts(route)
    return route.link_rate * SECONDS_PER_MINUTE * (2 * contact.c1 + contact.c2) / 3


def monte_carlo_data_size(route: RouteModel, rng: np.random.Generator, draws: int = 10**6):
    """Samples of ``R * min(contact_A, contact_B)`` in Mbit; works for any route."""
    a = np.broadcast_to(sample_contact(route.contact_a, rng, draws), (draws,))
    b = np.broadcast_to(sample_contact(route.contact_b, rng, draws), (draws,))
    return route.link_rate * SECONDS_PER_MINUTE * np.minimum(a, b)


def throughput(route: RouteModel, n: int) -> ThroughputMetrics:
    proc = superpose(mean_round_trip(route), n)
    size = mean_data_size(route)
    return ThroughputMetrics(
        mean_data_size=size,
        mean_rate=size * proc.arrival_rate / SECONDS_PER_MINUTE,
        per_arrival_rate=proc.arrival_rate,
    )


def mean_transmission_rate(route: RouteModel, n: int) -> float:
    """Mean delivered rate in Mbit/s with ``n`` equipped vehicles."""
    return throughput(route, n).mean_rate


def one_way_floor(route: RouteModel) -> float:
    """Mean contact at B plus mean B->A travel: the peak-age limit as n grows."""
    return route.contact_b.mean + route.travel_ba.mean


def mpaoi_approx(route: RouteModel, n: int) -> AoIMetricsApprox:
    proc = superpose(mean_round_trip(route), n)
    floor = one_way_floor(route)
    return AoIMetricsApprox(mpaoi=floor + proc.mean_interarrival, one_way_floor=floor)


def daily_traffic(users: int, per_user_demand: float) -> TrafficDemand:
    if users < 0 or per_user_demand < 0:
        raise InvalidParameterError("users and per-user demand must be non-negative")
    return TrafficDemand(users, per_user_demand, users * per_user_demand)
