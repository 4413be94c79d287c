import io

import numpy as np
import pytest

from datamule.errors import InvalidParameterError, TraceParseError
from datamule.traces import ingest_traces


def csv_text(rows, newline="\n"):
    lines = ["route_id,trip_id,duration_minutes"] + [
        f"{r},{i},{d}" for i, (r, d) in enumerate(rows)
    ]
    return newline.join(lines) + newline


def test_nouakchott_like_fit():
    rows = [("nkc", d) for d in (30, 40, 59, 70, 96)]
    (s,) = ingest_traces(io.StringIO(csv_text(rows))).summaries
    assert (s.trip_count, s.mean_one_way, s.min_one_way) == (5, 59, 30)
    assert (s.fitted_t_min, s.fitted_mean_delay) == (30, 29)


def test_constant_route_has_no_delay():
    (s,) = ingest_traces(io.StringIO(csv_text([("r5", 26)] * 8))).summaries
    assert s.fitted_mean_delay == 0 and s.fitted_t_min == 26


def test_accra_like_generator_recovered():
    rng = np.random.default_rng(55)
    rows = [("accra", 55 + x) for x in rng.exponential(49, 10_000)]
    (s,) = ingest_traces(io.StringIO(csv_text(rows))).summaries
    assert s.fitted_t_min == pytest.approx(55, rel=0.03)
    assert s.fitted_mean_delay == pytest.approx(49, rel=0.03)
    route = s.to_route(3, 5, 20)
    assert route.travel_ab.t_min == s.fitted_t_min


def test_optimal_path_override():
    rows = [("nkc", d) for d in (35, 40, 59, 70, 91)]
    (s,) = ingest_traces(io.StringIO(csv_text(rows)), optimal_path={"nkc": 30}).summaries
    assert (s.fitted_t_min, s.fitted_mean_delay) == (30, 29)
    with pytest.raises(InvalidParameterError):
        ingest_traces(io.StringIO(csv_text(rows)), optimal_path={"nkc": 80})


def test_short_routes_become_warnings():
    rows = [("long", 10)] * 5 + [("short", 12)] * 2
    result = ingest_traces(io.StringIO(csv_text(rows)))
    assert [s.route_id for s in result.summaries] == ["long"]
    assert result.warnings == [{"route_id": "short", "trip_count": 2, "reason": "too few trips"}]


def test_crlf_and_empty():
    rows = [("a", 10)] * 5
    assert ingest_traces(io.StringIO(csv_text(rows, "\r\n"))).summaries[0].trip_count == 5
    empty = ingest_traces(io.StringIO(""))
    assert empty.summaries == [] and empty.warnings == []


@pytest.mark.parametrize(
    "text, line",
    [
        ("route_id,trip_id,duration_minutes\na,1,10\nb,2,abc\n", 3),
        ("route_id,trip_id,duration_minutes\na,1\n", 2),
        ("route_id,trip_id,duration_minutes\na,1,10\na,2,-4\n", 3),
        ("route,trip,minutes\na,1,3\n", 1),
    ],
)
def test_malformed_rows_report_line(text, line):
    with pytest.raises(TraceParseError) as err:
        ingest_traces(io.StringIO(text))
    assert err.value.line == line
