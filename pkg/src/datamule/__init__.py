"""Renewal-process model of minibus data mules for rural delay-tolerant networking."""

from .analytics import (
    daily_traffic,
    data_size_ccdf,
    mean_data_size,
    mean_transmission_rate,
    mpaoi_approx,
    one_way_floor,
)
from .des import (
    AoIMonitor,
    AoITimeline,
    MetricsReport,
    run_replications,
    run_simulation,
    update_monitor,
)
from .fleet import CostModel, FleetPlan, QosTargets, optimize, verify_by_scan
from .model import (
    ContactTimeDist,
    RouteModel,
    TravelTimeDist,
    make_rng,
    mean_round_trip,
    sample_contact,
    sample_round_trip,
    sample_travel,
)
from .superposition import (
    interval_density,
    simulate_superposition,
    single_interarrival_survival,
    superpose,
)

__version__ = "0.1.0"

__all__ = [
    "AoIMonitor",
    "AoITimeline",
    "ContactTimeDist",
    "CostModel",
    "FleetPlan",
    "MetricsReport",
    "QosTargets",
    "RouteModel",
    "TravelTimeDist",
    "daily_traffic",
    "data_size_ccdf",
    "interval_density",
    "make_rng",
    "mean_data_size",
    "mean_round_trip",
    "mean_transmission_rate",
    "mpaoi_approx",
    "one_way_floor",
    "optimize",
    "run_replications",
    "run_simulation",
    "sample_contact",
    "sample_round_trip",
    "sample_travel",
    "simulate_superposition",
    "single_interarrival_survival",
    "superpose",
    "update_monitor",
    "verify_by_scan",
]
