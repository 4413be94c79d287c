"""Command-line entry point: ``datamule <command> [--config PATH] ...``.

Exit status is 0 on success, 1 on invalid input or parameters and 2 on
I/O failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from . import config as config_io
from .analytics import daily_traffic, mean_data_size, one_way_floor
from .errors import DataMuleError
from .fleet import CostModel, QosTargets, optimize
from .model import mean_round_trip
from .sweeps import (
    analytic_report,
    report_row,
    sweep_round_trip,
    sweep_vehicles,
    to_csv,
    to_json,
)
from .traces import ingest_traces

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class UsageError(DataMuleError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="experiment configuration file")
    common.add_argument("--seed", type=int, help="base seed; replications use seed, seed+1, ...")
    common.add_argument("--output", choices=("csv", "json"), default="json")
    common.add_argument("--out", help="write to this path instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="datamule", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()
    sub.add_parser("analyze", parents=[common], help="closed-form metrics for each n")
    sim = sub.add_parser("simulate", parents=[common], help="discrete-event replications")
    sim.add_argument("--n", type=int, action="append", help="fleet size (repeatable)")
    sweep = sub.add_parser("sweep-n", parents=[common], help="metrics over n_list")
    sweep.add_argument("--simulate", action="store_true", help="also run the simulation")
    sub.add_parser("sweep-rtt", parents=[common], help="metrics over round_trip_list")
    sub.add_parser("optimize", parents=[common], help="minimum-cost fleet size")
    ing = sub.add_parser("ingest", parents=[common], help="fit trip-duration CSV")
    ing.add_argument("--input", help="CSV path (default: stdin)")
    return parser


def _load_config(args) -> config_io.ExperimentConfig:
    cfg = config_io.load(args.config) if args.config else config_io.ExperimentConfig()
    if args.seed is not None:
        cfg.seeds = list(range(args.seed, args.seed + len(cfg.seeds)))
    return cfg


def _require_routes(cfg):
    if not cfg.routes:
        raise config_io.ConfigError("configuration defines no [route] section")


def _tables_to_csv(tables: dict) -> str:
    if len(tables) == 1:
        return to_csv(next(iter(tables.values())))
    out = io.StringIO()
    for i, (name, reports) in enumerate(tables.items()):
        lines = to_csv(reports).splitlines()
        if i == 0:
            out.write("route," + lines[0] + "\n")
        for line in lines[1:]:
            out.write(f"{name},{line}\n")
    return out.getvalue()


def _tables_to_json(tables: dict) -> list:
    return [
        {"route": name, "reports": [r.as_dict() for r in reports]}
        for name, reports in tables.items()
    ]


def cmd_analyze(args, cfg):
    _require_routes(cfg)
    tables = {
        name: [analytic_report(route, n) for n in cfg.n_list] for name, route in cfg.routes.items()
    }
    if args.output == "csv":
        return _tables_to_csv(tables)
    routes = []
    for name, route in cfg.routes.items():
        entry = {
            "route": name,
            "parameters": route.as_dict(),
            "mu_min": mean_round_trip(route),
            "one_way_floor_min": one_way_floor(route),
            "mean_data_mbit": mean_data_size(route) if route.is_symmetric_contact else None,
            "metrics": [report_row(r) for r in tables[name]],
        }
        routes.append(entry)
    payload = {"routes": routes}
    if cfg.users is not None and cfg.per_user_demand is not None:
        demand = daily_traffic(cfg.users, cfg.per_user_demand)
        payload["traffic"] = {
            "users": demand.users,
            "per_user_mbit_day": demand.per_user_demand,
            "total_mbit_day": demand.total,
        }
    return to_json(payload)


def _emit_tables(args, tables):
    return _tables_to_csv(tables) if args.output == "csv" else to_json(_tables_to_json(tables))


def cmd_simulate(args, cfg):
    _require_routes(cfg)
    cfg.simulate = True
    if args.n:
        cfg.n_list = args.n
    return _emit_tables(args, sweep_vehicles(cfg))


def cmd_sweep_n(args, cfg):
    _require_routes(cfg)
    cfg.simulate = cfg.simulate or args.simulate
    return _emit_tables(args, sweep_vehicles(cfg))


def cmd_sweep_rtt(args, cfg):
    _require_routes(cfg)
    reports = sweep_round_trip(cfg)
    if args.output == "csv":
        return to_csv(reports)
    return to_json([r.as_dict() for r in reports])


def cmd_optimize(args, cfg):
    _require_routes(cfg)
    if cfg.mpaoi_threshold is None or cfg.rate_threshold is None:
        raise config_io.ConfigError("[optimizer] needs mpaoi_threshold and rate_threshold")
    targets = QosTargets(cfg.mpaoi_threshold, cfg.rate_threshold)
    costs = CostModel(cfg.mule_cost, cfg.gateway_cost, cfg.gateway_count)
    plans = {
        name: optimize(route, targets, costs, cfg.fleet_cap) for name, route in cfg.routes.items()
    }
    if args.output == "json":
        if len(plans) == 1:
            return to_json(next(iter(plans.values())).as_dict())
        return to_json({name: plan.as_dict() for name, plan in plans.items()})
    buf = io.StringIO()
    fields = list(next(iter(plans.values())).as_dict())
    writer = csv.DictWriter(buf, ["route", *fields], lineterminator="\n")
    writer.writeheader()
    for name, plan in plans.items():
        writer.writerow({"route": name, **plan.as_dict()})
    return buf.getvalue()


def cmd_ingest(args, cfg):
    if args.input:
        with open(args.input, encoding="utf-8-sig", newline="") as fh:
            result = ingest_traces(fh, cfg.min_trips, cfg.optimal_path)
    else:
        stream = io.TextIOWrapper(sys.stdin.buffer, encoding="utf-8-sig", newline="")
        result = ingest_traces(stream, cfg.min_trips, cfg.optimal_path)
    if args.output == "json":
        return to_json(
            {
                "summaries": [s.as_dict() for s in result.summaries],
                "warnings": result.warnings,
            }
        )
    buf = io.StringIO()
    fields = [
        "route_id",
        "trip_count",
        "mean_one_way",
        "min_one_way",
        "fitted_t_min",
        "fitted_mean_delay",
    ]
    writer = csv.DictWriter(buf, fields, lineterminator="\n")
    writer.writeheader()
    for s in result.summaries:
        writer.writerow(s.as_dict())
    return buf.getvalue()


COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "sweep-n": cmd_sweep_n,
    "sweep-rtt": cmd_sweep_rtt,
    "optimize": cmd_optimize,
    "ingest": cmd_ingest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _load_config(args)
        text = COMMANDS[args.command](args, cfg)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except DataMuleError as exc:
        print(f"datamule: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"datamule: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK
