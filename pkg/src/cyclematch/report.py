"""Report records and their JSON / CSV renderings.

Big integers are written as decimal strings.  JSON is emitted with sorted
keys so two runs of the same command diff cleanly; only ``wall_time``
fields vary between runs.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Iterable, List, Sequence

from .search import EmcResult, is_extremal_form
from .stirling import BoundValue

# exact decimals of values like [16384, 3] run to tens of thousands of digits
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

SCHEMA_VERSION = "1"
WALL_TIME_KEYS = frozenset({"wall_time"})


def bound_record(b: BoundValue) -> dict:
    return {
        "n": b.n,
        "k": b.k,
        "s": b.s,
        "bound": str(b.value),
        "terms": [str(t) for t in b.terms],
        "threshold_met": b.threshold_met,
        "in_theorem_scope": b.k >= 4,
    }


def emc_record(r: EmcResult, include_witness: bool = True) -> dict:
    rec = {
        "n": r.n,
        "k": r.k,
        "s": r.s,
        "status": "solved" if r.solved else "unknown",
        "exact": None if r.exact_value is None else str(r.exact_value),
        "lower": str(r.lower),
        "upper": str(r.upper),
        "bound": str(r.bound.value),
        "terms": [str(t) for t in r.bound.terms],
        "agrees": r.agrees,
        "threshold_met": r.threshold_met,
        "in_theorem_scope": r.in_theorem_scope,
        "extremal_form": is_extremal_form(r.witness, r.s) if r.solved else None,
        "nodes": r.nodes,
        "note": r.note,
        "wall_time": round(r.wall_time, 6),
    }
    if include_witness:
        rec["witness"] = [] if r.witness is None else [str(p) for p in r.witness.perms()]
    return rec


def make_report(command: Sequence[str], instances: Iterable[dict]) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": list(command), "instances": list(instances)}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def strip_timing(obj):
    """Copy of a report with every wall-time field removed."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in WALL_TIME_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def stirling_table_csv(rows: Iterable[Sequence[int]], max_n: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n"] + [f"k={k}" for k in range(0, max_n + 1)])
    for n, row in enumerate(rows):
        w.writerow([n] + [str(v) for v in row] + [""] * (max_n - n))
    return buf.getvalue()


def results_csv(records: List[dict]) -> str:
    cols = ["n", "k", "s", "status", "exact", "lower", "upper", "bound", "agrees", "threshold_met", "in_theorem_scope"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in records:
        w.writerow(["" if r.get(c) is None else r.get(c) for c in cols])
    return buf.getvalue()


def load(text: str) -> dict:
    data = json.loads(text)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {data.get('schema_version')!r}")
    return data

