"""Routes used in the published evaluation.

The case-study routes keep the 3-5 minute contacts and a 20 Mbit/s link;
travel times come from the published optimal-path and mean one-way times.
"""

from __future__ import annotations

from .model import RouteModel

# Addis Ababa hub routes out of Shero Meda: mean one-way minutes
ADDIS_ABABA_ONE_WAY = {
    "tulu_dimtu": 123.0,
    "mexico": 73.0,
    "bole_millennium": 61.0,
    "abo_junction": 55.0,
    "autobis_tera": 26.0,
}


def table_route() -> RouteModel:
    """Baseline simulation parameters: contacts 3-5 min, 100 + Exp(20) min, 10 Mbit/s."""
    return RouteModel.symmetric(c1=3, c2=5, t_min=100, mean_delay=20, link_rate=10)


def nouakchott_route() -> RouteModel:
    return RouteModel.symmetric(c1=3, c2=5, t_min=30, mean_delay=29, link_rate=20)


def accra_route() -> RouteModel:
    return RouteModel.symmetric(c1=3, c2=5, t_min=55, mean_delay=49, link_rate=20)


def addis_ababa_routes() -> dict[str, RouteModel]:
    """Star topology; optimal-path times are unpublished, so delays are set to zero."""
    return {
        name: RouteModel.symmetric(c1=3, c2=5, t_min=mean, mean_delay=0, link_rate=20)
        for name, mean in ADDIS_ABABA_ONE_WAY.items()
    }
