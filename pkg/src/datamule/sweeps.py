"""Parameter sweeps over fleet size and mean round-trip time, plus table output."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import replace

from .analytics import mean_data_size, mean_transmission_rate, mpaoi_approx
from .config import ExperimentConfig
from .des import MetricsReport, run_replications
from .errors import InvalidParameterError
from .model import RouteModel, TravelTimeDist, mean_round_trip

CSV_COLUMNS = (
    "n",
    "mu_min",
    "mean_data_mbit",
    "rate_mbit_s",
    "mpaoi_approx_min",
    "mpaoi_sim_min",
    "maoi_sim_min",
    "approx_err_min",
)


def analytic_report(route: RouteModel, n: int) -> MetricsReport:
    """A report carrying only the closed-form metrics."""
    return MetricsReport(
        route=route.as_dict(),
        n=int(n),
        simulated_maoi=None,
        simulated_mpaoi=None,
        approx_mpaoi=mpaoi_approx(route, n).mpaoi,
        approx_error=None,
        simulated_mean_rate=None,
        analytic_mean_rate=(
            mean_transmission_rate(route, n) if route.is_symmetric_contact else None
        ),
        simulated_mean_gap=None,
        seeds=[],
        horizon=None,
        warmup=None,
    )


def report_row(report: MetricsReport) -> dict:
    route = RouteModel.from_dict(report.route)
    return {
        "n": report.n,
        "mu_min": mean_round_trip(route),
        "mean_data_mbit": mean_data_size(route) if route.is_symmetric_contact else None,
        "rate_mbit_s": report.analytic_mean_rate,
        "mpaoi_approx_min": report.approx_mpaoi,
        "mpaoi_sim_min": report.simulated_mpaoi,
        "maoi_sim_min": report.simulated_maoi,
        "approx_err_min": report.approx_error,
    }


def sweep_vehicles(config: ExperimentConfig) -> dict[str, list[MetricsReport]]:
    """One table per configured route, one report per fleet size in ``n_list``."""
    if not config.routes:
        raise InvalidParameterError("no route configured")
    tables = {}
    for name, route in config.routes.items():
        rows = []
        for n in config.n_list:
            if config.simulate:
                rows.append(
                    run_replications(
                        route, n, config.horizon, config.seeds, config.warm_up_multiplier
                    )
                )
            else:
                rows.append(analytic_report(route, n))
        tables[name] = rows
    return tables


def route_for_round_trip(base: RouteModel, mu: float) -> RouteModel:
    """Keep ``base``'s contacts and stretch both travel legs to hit mean ``mu``.

    Each leg gets ``(mu - mean contacts) / 2`` minutes, split between
    ``t_min`` and ``mean_delay`` in the same proportion as in ``base``.
    """
    contacts = base.contact_a.mean + base.contact_b.mean
    if mu < contacts:
        raise InvalidParameterError(
            f"mean round trip {mu:g} min is shorter than the mean contacts {contacts:g} min"
        )
    leg = 0.5 * (mu - contacts)

    def stretch(travel: TravelTimeDist) -> TravelTimeDist:
        share = travel.mean_delay / travel.mean if travel.mean > 0 else 0.0
        return TravelTimeDist(t_min=leg * (1 - share), mean_delay=leg * share)

    return replace(base, travel_ab=stretch(base.travel_ab), travel_ba=stretch(base.travel_ba))


def sweep_round_trip(config: ExperimentConfig) -> list[MetricsReport]:
    """Closed-form metrics for every (mean round trip, n) pair."""
    base = config.route
    if not config.round_trip_list:
        raise InvalidParameterError("round_trip_list is empty")
    rows = []
    for mu in config.round_trip_list:
        route = route_for_round_trip(base, mu)
        rows.extend(analytic_report(route, n) for n in config.n_list)
    return rows


def _cell(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(reports: list[MetricsReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        row = report_row(report)
        writer.writerow([_cell(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"
