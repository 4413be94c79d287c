"""Per-route travel-time fits from trip-duration CSVs.

Input columns are ``route_id,trip_id,duration_minutes``. The shifted
exponential is fitted with the observed minimum as ``t_min`` (unless a known
optimal-path time is supplied) and the excess mean as ``mean_delay``.
"""

from __future__ import annotations

import csv
import logging
from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Iterable, TextIO

from .errors import InvalidParameterError, TraceParseError
from .model import RouteModel

log = logging.getLogger(__name__)

HEADER = ("route_id", "trip_id", "duration_minutes")


@dataclass(frozen=True)
class RouteTraceSummary:
    route_id: str
    trip_count: int
    mean_one_way: float
    min_one_way: float
    fitted_t_min: float
    fitted_mean_delay: float

    def as_dict(self) -> dict:
        return asdict(self)

    def to_route(self, c1: float, c2: float, link_rate: float) -> RouteModel:
        """Symmetric route using this fit for both travel directions."""
        return RouteModel.symmetric(c1, c2, self.fitted_t_min, self.fitted_mean_delay, link_rate)


@dataclass(frozen=True)
class IngestResult:
    summaries: list[RouteTraceSummary]
    warnings: list[dict]


def read_trips(stream: TextIO) -> dict[str, list[float]]:
    """Durations grouped by route, in file order."""
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        return {}
    if tuple(h.strip().lstrip("\ufeff") for h in header) != HEADER:
        raise TraceParseError(1, f"expected header {','.join(HEADER)}, got {','.join(header)}")
    trips: dict[str, list[float]] = defaultdict(list)
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise TraceParseError(line, f"expected 3 fields, got {len(row)}")
        route_id, _, raw = (cell.strip() for cell in row)
        if not route_id:
            raise TraceParseError(line, "empty route_id")
        try:
            duration = float(raw)
        except ValueError:
            raise TraceParseError(line, f"duration {raw!r} is not a number") from None
        if not duration > 0 or duration == float("inf"):
            raise TraceParseError(line, f"duration must be positive and finite, got {raw}")
        trips[route_id].append(duration)
    return dict(trips)


def summarize(route_id: str, durations: Iterable[float], t_min: float | None = None):
    durations = list(durations)
    mean = sum(durations) / len(durations)
    lowest = min(durations)
    fitted = lowest if t_min is None else t_min
    if fitted < 0 or fitted > mean:
        raise InvalidParameterError(
            f"route {route_id}: optimal-path time {fitted} must lie in [0, mean {mean:g}]"
        )
    return RouteTraceSummary(
        route_id=route_id,
        trip_count=len(durations),
        mean_one_way=mean,
        min_one_way=lowest,
        fitted_t_min=fitted,
        fitted_mean_delay=mean - fitted,
    )


def ingest_traces(
    stream: TextIO,
    min_trips: int = 5,
    optimal_path: dict[str, float] | None = None,
) -> IngestResult:
    optimal_path = optimal_path or {}
    summaries, warnings = [], []
    for route_id, durations in read_trips(stream).items():
        if len(durations) < min_trips:
            log.warning("route %s has %d trips, fewer than %d", route_id, len(durations), min_trips)
            warnings.append(
                {"route_id": route_id, "trip_count": len(durations), "reason": "too few trips"}
            )
            continue
        summaries.append(summarize(route_id, durations, optimal_path.get(route_id)))
    return IngestResult(summaries, warnings)
