"""Invariant sweeps behind ``cyclematch verify``.

Each suite returns a list of records ``{"suite", "check", "params", "pass",
...}`` in a fixed order.  A failing record means a computed value
contradicts a proven identity or inequality.
"""

from __future__ import annotations

import time
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from .family import extremal_family, shared_enumeration, union_size_pie
from .perms import Cycle, all_cycles
from .stirling import (
    StirlingTable,
    check_alternating_lower_bound,
    check_lemma_ratio_diag,
    check_lemma_ratio_down,
    emc_bound,
    stirling_unsigned,
)

SUITES = ("recurrence", "lemmas", "pie", "construction")


def _rec(suite: str, check: str, params: dict, ok: bool, **extra) -> dict:
    out = {"suite": suite, "check": check, "params": params, "pass": bool(ok)}
    out.update(extra)
    return out


def suite_recurrence(max_n: int = 12, enum_max_n: int = 8) -> List[dict]:
    table = StirlingTable(max_n)
    out = []
    for n in range(0, max_n + 1):
        row = table.row(n)
        rec_ok = all(
            row[k] == table(n - 1, k - 1) + (n - 1) * table(n - 1, k) for k in range(1, n + 1)
        ) if n >= 1 else row == (1,)
        out.append(_rec("recurrence", "recurrence", {"n": n}, rec_ok))
        out.append(_rec("recurrence", "row_sum_factorial", {"n": n}, sum(row) == factorial(n),
                        value=str(sum(row))))
        if n >= 1:
            mono = all(
                table(n, k) >= table(n - 1, k - 1) and table(n, k) >= table(n - 1, k)
                for k in range(1, n + 1)
            )
            out.append(_rec("recurrence", "monotone", {"n": n}, mono))
        edge_ok = (n == 0 or row[0] == 0) and row[n] == 1
        if n >= 1:
            edge_ok = edge_ok and row[1] == factorial(n - 1)
        if n >= 2:
            edge_ok = edge_ok and row[n - 1] == n * (n - 1) // 2
        out.append(_rec("recurrence", "closed_forms", {"n": n}, edge_ok))
    for n in range(1, min(max_n, enum_max_n) + 1):
        for k in range(1, n + 1):
            size = len(shared_enumeration(n, k))
            out.append(_rec("recurrence", "enumeration_count", {"n": n, "k": k},
                            size == stirling_unsigned(n, k), value=str(size)))
    return out


def lemma6_grid(k_range=(3, 5), s_range=(2, 4), width: int = 20) -> Iterator[Tuple[int, int, int]]:
    for k in range(k_range[0], k_range[1] + 1):
        for s in range(s_range[0], s_range[1] + 1):
            lo = s * k * k
            for n in range(lo, lo + width + 1):
                yield n, k, s


def suite_lemmas(max_n: int = 60) -> List[dict]:
    out = []
    for n in range(2, max_n + 1):
        ks = list(range(1, n))
        bad = [k for k in ks if not check_lemma_ratio_down(n, k)]
        out.append(_rec("lemmas", "ratio_down", {"n": n}, not bad, k_checked=len(ks), failures=bad))
    for n in range(3, max_n + 1):
        ks = list(range(2, n))
        bad = [k for k in ks if not check_lemma_ratio_diag(n, k)]
        out.append(_rec("lemmas", "ratio_diag", {"n": n}, not bad, k_checked=len(ks), failures=bad))
    for n, k, s in lemma6_grid():
        out.append(_rec("lemmas", "alternating_lower_bound", {"n": n, "k": k, "s": s},
                        check_alternating_lower_bound(n, k, s)))
    return out


def disjoint_anchor_sets(n: int, max_s: int) -> Iterator[Tuple[Cycle, ...]]:
    """Sets of 1..max_s distinct cycles on [n] with pairwise disjoint supports."""
    cycles = list(all_cycles(n))
    masks = [sum(1 << a for a in c.elements) for c in cycles]

    def rec(start: int, used: int, chosen: List[int]):
        if chosen:
            yield tuple(cycles[i] for i in chosen)
        if len(chosen) == max_s:
            return
        for i in range(start, len(cycles)):
            if masks[i] & used:
                continue
            chosen.append(i)
            yield from rec(i + 1, used | masks[i], chosen)
            chosen.pop()

    yield from rec(0, 0, [])


def suite_pie(max_n: int = 6, max_s: int = 3) -> List[dict]:
    out = []
    for n in range(1, max_n + 1):
        anchor_sets = list(disjoint_anchor_sets(n, max_s))
        for k in range(1, n + 1):
            ground = shared_enumeration(n, k)
            bad = []
            for anchors in anchor_sets:
                mask = 0
                for b in anchors:
                    mask |= ground.incidence_mask(b)
                if mask.bit_count() != union_size_pie(n, k, anchors):
                    bad.append("".join(map(str, anchors)))
            out.append(_rec("pie", "pie_vs_enumeration", {"n": n, "k": k, "max_s": max_s},
                            not bad, anchor_sets=len(anchor_sets), failures=bad[:20]))
    out.extend(dichotomy_records())
    return out


def dichotomy_records(n: int = 36, k: int = 3) -> List[dict]:
    """Fixed-point anchors meet the bound; a longer anchor falls strictly below it."""
    bound = emc_bound(n, k, 2).value
    mixed = union_size_pie(n, k, [Cycle((1,)), Cycle((2, 3))])
    fixed = union_size_pie(n, k, [Cycle((1,)), Cycle((2,))])
    return [
        _rec("pie", "dichotomy_strict", {"n": n, "k": k, "anchors": "(1)(2 3)"}, mixed < bound,
             pie=str(mixed), bound=str(bound)),
        _rec("pie", "dichotomy_equal", {"n": n, "k": k, "anchors": "(1)(2)"}, fixed == bound,
             pie=str(fixed), bound=str(bound)),
    ]


def suite_construction(max_n: int = 8, anchored_max_n: int = 7, max_t: int = 4) -> List[dict]:
    out = []
    for n in range(1, min(max_n, anchored_max_n) + 1):
        cycles = list(all_cycles(n))
        for k in range(1, n + 1):
            ground = shared_enumeration(n, k)
            bad = [str(b) for b in cycles
                   if len(ground.members_with(b)) != stirling_unsigned(n - len(b), k - 1)]
            out.append(_rec("construction", "anchored_count", {"n": n, "k": k}, not bad,
                            cycles=len(cycles), failures=bad[:20]))
    for n in range(2, max_n + 1):
        for k in range(2, n + 1):
            ground = shared_enumeration(n, k)
            for t in range(1, min(max_t, n) + 1):
                size = len(extremal_family(ground, range(1, t + 1)))
                b = emc_bound(n, k, t).value
                out.append(_rec("construction", "extremal_size", {"n": n, "k": k, "t": t},
                                size == b, size=str(size), bound=str(b)))
    return out


def run_suites(names: Sequence[str], max_n: Dict[str, int] | None = None) -> List[dict]:
    """Run suites in canonical order; ``max_n`` optionally overrides per suite."""
    max_n = max_n or {}
    wanted = [s for s in SUITES if s in names]
    out = []
    for name in wanted:
        t0 = time.perf_counter()
        if name == "recurrence":
            recs = suite_recurrence(max_n.get(name, 12))
        elif name == "lemmas":
            recs = suite_lemmas(max_n.get(name, 60))
        elif name == "pie":
            recs = suite_pie(max_n.get(name, 6))
        else:
            recs = suite_construction(max_n.get(name, 8))
        dt = time.perf_counter() - t0
        out.append({"suite": name, "check": "summary", "params": {},
                    "pass": all(r["pass"] for r in recs), "checked": len(recs), "wall_time": dt})
        out.extend(recs)
    return out
