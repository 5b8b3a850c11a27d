import json

import pytest

from cyclematch.report import (
    bound_record,
    dumps,
    emc_record,
    load,
    make_report,
    results_csv,
    stirling_table_csv,
    strip_timing,
)
from cyclematch.search import emc_exact
from cyclematch.stirling import StirlingTable, emc_bound
from cyclematch.verify import (
    SUITES,
    dichotomy_records,
    disjoint_anchor_sets,
    lemma6_grid,
    run_suites,
    suite_construction,
    suite_lemmas,
    suite_pie,
    suite_recurrence,
)


@pytest.mark.parametrize(
    "fn, kwargs",
    [
        (suite_recurrence, {"max_n": 8, "enum_max_n": 6}),
        (suite_lemmas, {"max_n": 30}),
        (suite_pie, {"max_n": 5}),
        (suite_construction, {"max_n": 6, "anchored_max_n": 5}),
    ],
)
def test_suites_pass(fn, kwargs):
    recs = fn(**kwargs)
    assert recs and all(r["pass"] for r in recs)
    assert all({"suite", "check", "params", "pass"} <= set(r) for r in recs)


def test_dichotomy():
    strict, equal = dichotomy_records()
    assert strict["pass"] and equal["pass"]
    assert int(strict["pie"]) < int(strict["bound"]) == int(equal["pie"])


def test_lemma6_grid_range():
    pts = list(lemma6_grid())
    assert len(pts) == 3 * 3 * 21
    assert all(s * k * k <= n <= s * k * k + 20 for n, k, s in pts)


def test_disjoint_anchor_sets_are_disjoint():
    sets = list(disjoint_anchor_sets(4, 3))
    assert sets
    for anchors in sets:
        assert 1 <= len(anchors) <= 3
        seen = set()
        for b in anchors:
            assert not seen & b.support
            seen |= b.support


def test_run_suites_summary_and_order():
    recs = run_suites(["pie", "recurrence"], {"pie": 4, "recurrence": 5})
    summaries = [r for r in recs if r["check"] == "summary"]
    assert [r["suite"] for r in summaries] == ["recurrence", "pie"]
    assert all(r["pass"] for r in recs)
    assert SUITES == ("recurrence", "lemmas", "pie", "construction")


def test_report_round_trip_and_strip():
    r = emc_exact(4, 3, 1)
    rep = make_report(["exact", "4", "3", "1"], [emc_record(r), bound_record(emc_bound(5, 3, 2))])
    text = dumps(rep)
    data = load(text)
    inst = data["instances"][0]
    assert inst["exact"] == "3" and inst["status"] == "solved" and inst["agrees"] == "equal"
    assert len(inst["witness"]) == 3
    assert data["instances"][1]["terms"] == ["22", "-2"]
    stripped = strip_timing(data)
    assert "wall_time" not in json.dumps(stripped)
    with pytest.raises(ValueError):
        load('{"schema_version": "0"}')


def test_huge_values_serialise():
    b = emc_bound(6000, 3, 1)
    rec = bound_record(b)
    assert len(rec["bound"]) > 4300
    assert json.loads(dumps(make_report([], [rec])))["instances"][0]["bound"] == str(b.value)


def test_csv_outputs():
    csv = stirling_table_csv(StirlingTable(3).rows(), 3)
    assert csv.splitlines() == ["n,k=0,k=1,k=2,k=3", "0,1,,,", "1,0,1,,", "2,0,1,1,", "3,0,2,3,1"]
    rows = results_csv([emc_record(emc_exact(3, 3, 1))]).splitlines()
    assert rows[0].startswith("n,k,s,status,exact")
    assert rows[1].startswith("3,3,1,solved,1,1,1,1,equal")
