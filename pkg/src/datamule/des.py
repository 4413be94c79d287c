"""Event-driven simulation of data mules and the age of village data at the city.

Each vehicle cycles contact at A, travel A->B, contact at B, travel B->A.
It picks up a village update stamped at the start of its contact at B and
hands it to the city monitor when it arrives back at A.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import asdict, dataclass, field
from enum import IntEnum

import numpy as np

from .analytics import SECONDS_PER_MINUTE, mean_data_size, mean_transmission_rate, mpaoi_approx
from .errors import ContractViolation, InvalidParameterError
from .model import RouteModel, make_rng, mean_round_trip, sample_phase_durations
from .superposition import MIN_HORIZON_MULTIPLIER, WARMUP_MULTIPLIER


class Phase(IntEnum):
    CONTACT_A = 0
    TRAVEL_AB = 1
    CONTACT_B = 2
    TRAVEL_BA = 3

    def next(self) -> Phase:
        return Phase((self + 1) % 4)


@dataclass
class VehicleProcess:
    vehicle_id: int
    phase: Phase
    phase_end: float
    carried_generation_time: float | None = None


@dataclass
class AoITimeline:
    """Sawtooth statistics over the observation window.

    ``deliveries`` holds every (delivery_time, generation_time) pair seen
    inside the window, stale ones included.
    """

    deliveries: list[tuple[float, float]]
    effective_peaks: list[float]
    maoi: float
    mpaoi: float
    observation_window: tuple[float, float]
    stale_count: int = 0
    arrival_times: list[float] = field(default_factory=list)

    @property
    def duration(self) -> float:
        return self.observation_window[1] - self.observation_window[0]

    @property
    def effective_count(self) -> int:
        return len(self.deliveries) - self.stale_count


class AoIMonitor:
    """Keeps the freshest generation timestamp received at the city.

    Deliveries earlier than ``window_start`` only update the freshest
    timestamp. The observation window opens at the first effective delivery
    at or after ``window_start``; that delivery produces no peak.
    """

    def __init__(self, window_start: float = -math.inf):
        self.window_start = window_start
        self.freshest: float | None = None
        self.last_delivery: float | None = None
        self.opened_at: float | None = None
        self.deliveries: list[tuple[float, float]] = []
        self.peaks: list[float] = []
        self.area = 0.0
        self.stale_count = 0

    def age(self, t: float) -> float:
        if self.freshest is None:
            return math.nan
        return t - self.freshest

    def deliver(self, delivery_time: float, generation_time: float) -> bool:
        """Record one delivery; returns True when it refreshed the monitor."""
        if self.last_delivery is not None and delivery_time < self.last_delivery:
            raise ContractViolation(
                f"delivery at {delivery_time} precedes previous delivery at {self.last_delivery}"
            )
        if self.opened_at is not None:
            before, after = self.age(self.last_delivery), self.age(delivery_time)
            self.area += 0.5 * (before + after) * (delivery_time - self.last_delivery)
            self.deliveries.append((delivery_time, generation_time))

        effective = self.freshest is None or generation_time > self.freshest
        if effective:
            if self.opened_at is not None:
                self.peaks.append(delivery_time - self.freshest)
            elif delivery_time >= self.window_start:
                self.opened_at = delivery_time
                self.deliveries.append((delivery_time, generation_time))
            self.freshest = generation_time
        elif self.opened_at is not None:
            self.stale_count += 1
        self.last_delivery = delivery_time
        return effective

    def timeline(self) -> AoITimeline:
        if self.opened_at is None:
            window = (math.nan, math.nan)
            maoi = math.nan
        else:
            window = (self.opened_at, self.last_delivery)
            span = window[1] - window[0]
            maoi = self.area / span if span > 0 else math.nan
        mpaoi = float(np.mean(self.peaks)) if self.peaks else math.nan
        return AoITimeline(
            deliveries=list(self.deliveries),
            effective_peaks=list(self.peaks),
            maoi=maoi,
            mpaoi=mpaoi,
            observation_window=window,
            stale_count=self.stale_count,
        )


def update_monitor(state: AoIMonitor, delivery_time: float, generation_time: float) -> AoIMonitor:
    state.deliver(delivery_time, generation_time)
    return state


class _PhaseClock:
    """Phase durations for one vehicle, drawn in blocks of whole round trips."""

    def __init__(self, route: RouteModel, rng: np.random.Generator, block: int = 64):
        self.route = route
        self.rng = rng
        self.block = block
        self._buf = np.empty(0)
        self._pos = 0

    def next(self) -> float:
        if self._pos == self._buf.size:
            self._buf = sample_phase_durations(self.route, self.rng, self.block).ravel()
            self._pos = 0
        value = self._buf[self._pos]
        self._pos += 1
        return float(value)


def _validate(route: RouteModel, n: int, horizon: float) -> float:
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"n must be a positive integer, got {n}")
    mu = mean_round_trip(route)
    if mu <= 0:
        raise InvalidParameterError("route has a zero mean round trip")
    if horizon < MIN_HORIZON_MULTIPLIER * mu:
        raise InvalidParameterError(
            f"horizon {horizon} is shorter than {MIN_HORIZON_MULTIPLIER:g} * mu = "
            f"{MIN_HORIZON_MULTIPLIER * mu:g}"
        )
    return mu


def run_simulation(
    route: RouteModel,
    n: int,
    horizon: float,
    seed: int,
    warmup_multiplier: float = WARMUP_MULTIPLIER,
) -> AoITimeline:
    """Simulate ``n`` mules up to ``horizon`` minutes and return the AoI timeline.

    Every vehicle starts its contact at A at t=0. Each vehicle owns a child
    stream of ``SeedSequence(seed)``; simultaneous events run in vehicle-id
    order.
    """
    mu = _validate(route, n, horizon)
    warmup = warmup_multiplier * mu
    children = np.random.SeedSequence(seed).spawn(int(n))
    clocks = [_PhaseClock(route, make_rng(child)) for child in children]
    vehicles = [VehicleProcess(v, Phase.CONTACT_A, clocks[v].next()) for v in range(int(n))]
    queue = [(veh.phase_end, veh.vehicle_id) for veh in vehicles]
    heapq.heapify(queue)

    monitor = AoIMonitor(window_start=warmup)
    arrivals = []
    while queue:
        now, v = heapq.heappop(queue)
        if now > horizon:
            break
        veh = vehicles[v]
        veh.phase = veh.phase.next()
        if veh.phase is Phase.CONTACT_B:
            veh.carried_generation_time = now
        elif veh.phase is Phase.CONTACT_A:
            if now >= warmup:
                arrivals.append(now)
            monitor.deliver(now, veh.carried_generation_time)
            veh.carried_generation_time = None
        veh.phase_end = now + clocks[v].next()
        heapq.heappush(queue, (veh.phase_end, v))

    timeline = monitor.timeline()
    timeline.arrival_times = arrivals
    return timeline


@dataclass
class MetricsReport:
    route: dict[str, float]
    n: int
    simulated_maoi: float
    simulated_mpaoi: float
    approx_mpaoi: float
    approx_error: float
    simulated_mean_rate: float | None
    analytic_mean_rate: float | None
    simulated_mean_gap: float
    seeds: list[int]
    horizon: float
    warmup: float

    def as_dict(self) -> dict:
        return asdict(self)


def simulated_rate(timeline: AoITimeline, data_per_arrival: float) -> float:
    """Delivered Mbit/s: every arrival at A inside the window carries one load."""
    t0, t1 = timeline.observation_window
    count = sum(1 for t in timeline.arrival_times if t0 < t <= t1)
    return count * data_per_arrival / ((t1 - t0) * SECONDS_PER_MINUTE)


def run_replications(
    route: RouteModel,
    n: int,
    horizon: float,
    seeds: list[int],
    warmup_multiplier: float = WARMUP_MULTIPLIER,
) -> MetricsReport:
    """Average independent replications and attach the closed-form peak age."""
    if not seeds:
        raise InvalidParameterError("at least one seed is required")
    mu = _validate(route, n, horizon)
    timelines = [run_simulation(route, n, horizon, s, warmup_multiplier) for s in seeds]
    maoi = float(np.mean([tl.maoi for tl in timelines]))
    mpaoi = float(np.mean([tl.mpaoi for tl in timelines]))
    gaps = [np.mean(np.diff(tl.arrival_times)) for tl in timelines if len(tl.arrival_times) > 1]
    approx = mpaoi_approx(route, n).mpaoi

    if route.is_symmetric_contact:
        size = mean_data_size(route)
        sim_rate = float(np.mean([simulated_rate(tl, size) for tl in timelines]))
        analytic_rate = mean_transmission_rate(route, n)
    else:
        sim_rate = analytic_rate = None

    return MetricsReport(
        route=route.as_dict(),
        n=int(n),
        simulated_maoi=maoi,
        simulated_mpaoi=mpaoi,
        approx_mpaoi=approx,
        approx_error=abs(mpaoi - approx),
        simulated_mean_rate=sim_rate,
        analytic_mean_rate=analytic_rate,
        simulated_mean_gap=float(np.mean(gaps)) if gaps else math.nan,
        seeds=[int(s) for s in seeds],
        horizon=float(horizon),
        warmup=warmup_multiplier * mu,
    )
