"""Experiment configuration stored as an INI-style key/value file.

``[route]`` (or several ``[route.<name>]`` sections) hold corridor
parameters. The shorthand keys ``c1``, ``c2``, ``t_min`` and ``mean_delay``
set both directions at once; the explicit ``*_a``/``*_b``/``*_ab``/``*_ba``
keys override them. Integer lists accept ranges such as ``1-20``.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field

from .errors import InvalidParameterError
from .model import RouteModel

ROUTE_KEYS = (
    "c1_a",
    "c2_a",
    "c1_b",
    "c2_b",
    "t_min_ab",
    "mean_delay_ab",
    "t_min_ba",
    "mean_delay_ba",
    "link_rate",
)
SHORTHAND = {
    "c1": ("c1_a", "c1_b"),
    "c2": ("c2_a", "c2_b"),
    "t_min": ("t_min_ab", "t_min_ba"),
    "mean_delay": ("mean_delay_ab", "mean_delay_ba"),
}
DEFAULT_ROUTE_NAME = "default"


class ConfigError(InvalidParameterError):
    pass


@dataclass
class ExperimentConfig:
    routes: dict[str, RouteModel] = field(default_factory=dict)
    horizon: float = 1e5
    seeds: list[int] = field(default_factory=lambda: [0])
    warm_up_multiplier: float = 5.0
    simulate: bool = False
    n_list: list[int] = field(default_factory=lambda: list(range(1, 21)))
    round_trip_list: list[float] = field(default_factory=list)
    mpaoi_threshold: float | None = None
    rate_threshold: float | None = None
    mule_cost: float = 0.0
    gateway_cost: float = 0.0
    gateway_count: int = 2
    fleet_cap: int | None = None
    users: int | None = None
    per_user_demand: float | None = None
    min_trips: int = 5
    optimal_path: dict[str, float] = field(default_factory=dict)

    @property
    def route(self) -> RouteModel:
        """The single configured route; an error when there are several."""
        if len(self.routes) != 1:
            raise ConfigError(f"expected exactly one route, found {len(self.routes)}")
        return next(iter(self.routes.values()))


def parse_int_list(text: str) -> list[int]:
    out = []
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        lo, sep, hi = item.partition("-")
        try:
            if sep:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(item))
        except ValueError:
            raise ConfigError(f"bad integer list item {item!r}") from None
    return out


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}: {exc}") from None


def _float(section, key, default=None):
    if key not in section:
        return default
    try:
        return float(section[key])
    except ValueError:
        raise ConfigError(f"[{section.name}] {key} = {section[key]!r} is not a number") from None


def _int(section, key, default=None):
    value = _float(section, key, default)
    if value is None:
        return None
    if value != int(value):
        raise ConfigError(f"[{section.name}] {key} must be an integer")
    return int(value)


def _route_from_section(section) -> RouteModel:
    values = {}
    for short, targets in SHORTHAND.items():
        if short in section:
            for key in targets:
                values[key] = _float(section, short)
    for key in ROUTE_KEYS:
        if key in section:
            values[key] = _float(section, key)
    missing = [k for k in ROUTE_KEYS if k not in values]
    if missing:
        raise ConfigError(f"[{section.name}] missing keys: {', '.join(missing)}")
    unknown = set(section) - set(ROUTE_KEYS) - set(SHORTHAND)
    if unknown:
        raise ConfigError(f"[{section.name}] unknown keys: {', '.join(sorted(unknown))}")
    return RouteModel.from_dict(values)


def loads(text: str) -> ExperimentConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None

    cfg = ExperimentConfig()
    for name in parser.sections():
        if name == "route":
            cfg.routes[DEFAULT_ROUTE_NAME] = _route_from_section(parser[name])
        elif name.startswith("route."):
            cfg.routes[name.split(".", 1)[1]] = _route_from_section(parser[name])

    if parser.has_section("simulation"):
        sec = parser["simulation"]
        cfg.horizon = _float(sec, "horizon", cfg.horizon)
        if "seeds" in sec:
            cfg.seeds = parse_int_list(sec["seeds"])
        cfg.warm_up_multiplier = _float(sec, "warm_up_multiplier", cfg.warm_up_multiplier)
        cfg.simulate = sec.getboolean("enabled", cfg.simulate)
    if parser.has_section("sweep"):
        sec = parser["sweep"]
        if "n_list" in sec:
            cfg.n_list = parse_int_list(sec["n_list"])
        if "round_trip_list" in sec:
            cfg.round_trip_list = parse_float_list(sec["round_trip_list"])
    if parser.has_section("optimizer"):
        sec = parser["optimizer"]
        cfg.mpaoi_threshold = _float(sec, "mpaoi_threshold")
        cfg.rate_threshold = _float(sec, "rate_threshold")
        cfg.mule_cost = _float(sec, "mule_cost", cfg.mule_cost)
        cfg.gateway_cost = _float(sec, "gateway_cost", cfg.gateway_cost)
        cfg.gateway_count = _int(sec, "gateway_count", cfg.gateway_count)
        cfg.fleet_cap = _int(sec, "fleet_cap")
    if parser.has_section("traffic"):
        sec = parser["traffic"]
        cfg.users = _int(sec, "users")
        cfg.per_user_demand = _float(sec, "per_user_demand")
    if parser.has_section("ingest"):
        cfg.min_trips = _int(parser["ingest"], "min_trips", cfg.min_trips)
    if parser.has_section("optimal_path"):
        sec = parser["optimal_path"]
        cfg.optimal_path = {key: _float(sec, key) for key in sec}

    validate(cfg)
    return cfg


def load(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def validate(cfg: ExperimentConfig) -> None:
    if cfg.horizon <= 0:
        raise ConfigError("horizon must be positive")
    if not cfg.seeds:
        raise ConfigError("seeds must not be empty")
    if cfg.warm_up_multiplier < 0:
        raise ConfigError("warm_up_multiplier must be non-negative")
    if not cfg.n_list or min(cfg.n_list) < 1:
        raise ConfigError("n_list must be non-empty with entries >= 1")
    if any(x < 0 for x in cfg.round_trip_list):
        raise ConfigError("round_trip_list entries must be non-negative")
    if cfg.min_trips < 1:
        raise ConfigError("min_trips must be at least 1")


def dumps(cfg: ExperimentConfig) -> str:
    """Serialise with explicit keys only; ``loads(dumps(c)) == c``."""
    parser = configparser.ConfigParser()
    parser.optionxform = str
    for name, route in cfg.routes.items():
        section = "route" if name == DEFAULT_ROUTE_NAME else f"route.{name}"
        parser[section] = {k: repr(float(v)) for k, v in route.as_dict().items()}
    parser["simulation"] = {
        "horizon": repr(float(cfg.horizon)),
        "seeds": ",".join(str(s) for s in cfg.seeds),
        "warm_up_multiplier": repr(float(cfg.warm_up_multiplier)),
        "enabled": "true" if cfg.simulate else "false",
    }
    sweep = {"n_list": ",".join(str(n) for n in cfg.n_list)}
    if cfg.round_trip_list:
        sweep["round_trip_list"] = ",".join(repr(float(x)) for x in cfg.round_trip_list)
    parser["sweep"] = sweep
    opt = {
        "mule_cost": repr(float(cfg.mule_cost)),
        "gateway_cost": repr(float(cfg.gateway_cost)),
        "gateway_count": str(cfg.gateway_count),
    }
    for key in ("mpaoi_threshold", "rate_threshold"):
        if getattr(cfg, key) is not None:
            opt[key] = repr(float(getattr(cfg, key)))
    if cfg.fleet_cap is not None:
        opt["fleet_cap"] = str(cfg.fleet_cap)
    parser["optimizer"] = opt
    traffic = {}
    if cfg.users is not None:
        traffic["users"] = str(cfg.users)
    if cfg.per_user_demand is not None:
        traffic["per_user_demand"] = repr(float(cfg.per_user_demand))
    if traffic:
        parser["traffic"] = traffic
    parser["ingest"] = {"min_trips": str(cfg.min_trips)}
    if cfg.optimal_path:
        parser["optimal_path"] = {k: repr(float(v)) for k, v in cfg.optimal_path.items()}
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()
