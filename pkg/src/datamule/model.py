"""Contact-time and travel-time distributions and single-vehicle round trips.

All durations are in minutes. Randomness always comes from an injected
:class:`numpy.random.Generator`; use :func:`make_rng` to build one from an
integer seed (PCG64 bit generator).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError


def make_rng(seed: int | np.random.SeedSequence | None) -> np.random.Generator:
    """Deterministic PCG64 generator for ``seed``."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class ContactTimeDist:
    """Waiting time at a bus stop, uniform on ``[c1, c2]``."""

    c1: float
    c2: float

    def __post_init__(self):
        if not (np.isfinite(self.c1) and np.isfinite(self.c2)):
            raise InvalidParameterError("contact bounds must be finite")
        if self.c1 < 0 or self.c2 < self.c1:
            raise InvalidParameterError(
                f"contact bounds need 0 <= c1 <= c2, got c1={self.c1}, c2={self.c2}"
            )

    @property
    def mean(self) -> float:
        return 0.5 * (self.c1 + self.c2)

    @property
    def variance(self) -> float:
        return (self.c2 - self.c1) ** 2 / 12.0


@dataclass(frozen=True)
class TravelTimeDist:
    """One-way travel time ``t_min + Exp(mean=mean_delay)``."""

    t_min: float
    mean_delay: float

    def __post_init__(self):
        if not (np.isfinite(self.t_min) and np.isfinite(self.mean_delay)):
            raise InvalidParameterError("travel parameters must be finite")
        if self.t_min < 0 or self.mean_delay < 0:
            raise InvalidParameterError(
                f"travel parameters must be non-negative, got t_min={self.t_min}, "
                f"mean_delay={self.mean_delay}"
            )

    @property
    def mean(self) -> float:
        return self.t_min + self.mean_delay


@dataclass(frozen=True)
class RouteModel:
    """Stochastic description of one urban (A) to rural (B) corridor.

    ``link_rate`` is the fixed vehicle-to-gateway rate in Mbit/s.
    """

    contact_a: ContactTimeDist
    contact_b: ContactTimeDist
    travel_ab: TravelTimeDist
    travel_ba: TravelTimeDist
    link_rate: float

    def __post_init__(self):
        if not (np.isfinite(self.link_rate) and self.link_rate > 0):
            raise InvalidParameterError(f"link_rate must be positive, got {self.link_rate}")

    @classmethod
    def symmetric(
        cls, c1: float, c2: float, t_min: float, mean_delay: float, link_rate: float
    ) -> RouteModel:
        contact = ContactTimeDist(c1, c2)
        travel = TravelTimeDist(t_min, mean_delay)
        return cls(contact, contact, travel, travel, link_rate)

    @property
    def is_symmetric_contact(self) -> bool:
        return self.contact_a == self.contact_b

    @property
    def support_min(self) -> float:
        """Smallest possible round-trip duration."""
        return self.contact_a.c1 + self.contact_b.c1 + self.travel_ab.t_min + self.travel_ba.t_min

    @classmethod
    def from_dict(cls, d: dict[str, float]) -> RouteModel:
        return cls(
            ContactTimeDist(d["c1_a"], d["c2_a"]),
            ContactTimeDist(d["c1_b"], d["c2_b"]),
            TravelTimeDist(d["t_min_ab"], d["mean_delay_ab"]),
            TravelTimeDist(d["t_min_ba"], d["mean_delay_ba"]),
            d["link_rate"],
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "c1_a": self.contact_a.c1,
            "c2_a": self.contact_a.c2,
            "c1_b": self.contact_b.c1,
            "c2_b": self.contact_b.c2,
            "t_min_ab": self.travel_ab.t_min,
            "mean_delay_ab": self.travel_ab.mean_delay,
            "t_min_ba": self.travel_ba.t_min,
            "mean_delay_ba": self.travel_ba.mean_delay,
            "link_rate": self.link_rate,
        }


@dataclass(frozen=True)
class RoundTripSample:
    contact_a: float
    travel_ab: float
    contact_b: float
    travel_ba: float

    @property
    def total(self) -> float:
        return self.contact_a + self.travel_ab + self.contact_b + self.travel_ba


def sample_contact(dist: ContactTimeDist, rng: np.random.Generator, size=None):
    """Draw contact durations; a degenerate interval returns ``c1`` exactly."""
    if dist.c1 == dist.c2:
        return dist.c1 if size is None else np.full(size, dist.c1, dtype=float)
    return rng.uniform(dist.c1, dist.c2, size)


def sample_travel(dist: TravelTimeDist, rng: np.random.Generator, size=None):
    """Draw one-way travel durations ``t_min + exponential delay``."""
    if dist.mean_delay == 0:
        return dist.t_min if size is None else np.full(size, dist.t_min, dtype=float)
    return dist.t_min + rng.exponential(dist.mean_delay, size)


def sample_round_trip(route: RouteModel, rng: np.random.Generator) -> RoundTripSample:
    """One round trip A -> B -> A with four independent phase draws."""
    return RoundTripSample(
        float(sample_contact(route.contact_a, rng)),
        float(sample_travel(route.travel_ab, rng)),
        float(sample_contact(route.contact_b, rng)),
        float(sample_travel(route.travel_ba, rng)),
    )


def sample_phase_durations(route: RouteModel, rng: np.random.Generator, trips: int) -> np.ndarray:
    """Vectorised round trips: array of shape ``(trips, 4)``.

    Columns are contact at A, travel A->B, contact at B, travel B->A. Row sums
    are the round-trip totals.
    """
    out = np.empty((trips, 4))
    out[:, 0] = sample_contact(route.contact_a, rng, trips)
    out[:, 1] = sample_travel(route.travel_ab, rng, trips)
    out[:, 2] = sample_contact(route.contact_b, rng, trips)
    out[:, 3] = sample_travel(route.travel_ba, rng, trips)
    return out


def mean_round_trip(route: RouteModel) -> float:
    """Closed-form mean round-trip time (minutes)."""
    return route.contact_a.mean + route.travel_ab.mean + route.contact_b.mean + route.travel_ba.mean
