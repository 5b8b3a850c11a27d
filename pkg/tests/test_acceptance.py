"""Acceptance suite: one test per criterion, each timed against its budget.

Every test appends a line to ``conftest.ACCEPTANCE_LINES``; the lines are
printed as a block at the end of the pytest run.
"""

import json
import random
import subprocess
import sys
import time
from itertools import combinations
from math import factorial

from conftest import ACCEPTANCE_LINES
from cyclematch.family import Family, anchored_family, extremal_family, union_size_pie
from cyclematch.matching import (
    avoid_cycles,
    avoid_hypothesis,
    extend_matching,
    extension_hypothesis,
    is_matching,
    nu_p,
    sqrt_n_guard,
)
from cyclematch.perms import Cycle, SnkEnumeration, all_cycles, enumerate_snk
from cyclematch.report import dumps, load, strip_timing
from cyclematch.search import emc_exact, emc_exact_s1
from cyclematch.stirling import (
    check_alternating_lower_bound,
    check_lemma_ratio_diag,
    check_lemma_ratio_down,
    emc_bound,
    stirling_unsigned,
)
from cyclematch.verify import disjoint_anchor_sets

from oracles import naive_nu

_GROUNDS = {}


def ground(n, k):
    g = _GROUNDS.get((n, k))
    if g is None:
        g = _GROUNDS[(n, k)] = SnkEnumeration(n, k)
    return g


def record(num, title, ok, detail, t0, limit):
    secs = time.perf_counter() - t0
    within = secs < limit
    if not within:
        detail += f"; over the {limit}s budget"
    ACCEPTANCE_LINES.append((num, title, ok and within, detail, secs))
    print(f"[{'PASS' if ok and within else 'FAIL'}] {num}. {title} ({secs:.2f}s) {detail}")
    assert ok and within, detail


def test_01_enumeration_counts():
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 10):
        row = 0
        for k in range(1, n + 1):
            m = len(enumerate_snk(n, k))
            row += m
            if m != stirling_unsigned(n, k):
                bad.append((n, k))
        if row != factorial(n):
            bad.append((n, "row"))
    record(1, "enumeration counts n<=9", not bad, f"mismatches={bad}", t0, 30)


def test_02_anchored_counts():
    t0 = time.perf_counter()
    checked = 0
    bad = []
    for n in range(1, 8):
        cycles = list(all_cycles(n))
        for k in range(1, n + 1):
            g = ground(n, k)
            for b in cycles:
                checked += 1
                if len(anchored_family(g, b)) != stirling_unsigned(n - len(b), k - 1):
                    bad.append((n, k, str(b)))
    record(2, "anchored-count identity n<=7", not bad, f"checked={checked} mismatches={bad[:5]}", t0, 60)


def test_03_extremal_sizes():
    t0 = time.perf_counter()
    checked = 0
    bad = []
    for n in range(2, 9):
        for k in range(2, n + 1):
            g = ground(n, k)
            for t in range(1, min(4, n) + 1):
                want = emc_bound(n, k, t).value
                for T in combinations(range(1, n + 1), t):
                    checked += 1
                    if len(extremal_family(g, T)) != want:
                        bad.append((n, k, T))
    record(3, "extremal-construction size n<=8", not bad, f"checked={checked} mismatches={bad[:5]}", t0, 120)


def test_04_pie_vs_enumeration():
    t0 = time.perf_counter()
    checked = 0
    bad = []
    for n in range(1, 7):
        sets = list(disjoint_anchor_sets(n, 3))
        for k in range(1, n + 1):
            g = ground(n, k)
            for anchors in sets:
                checked += 1
                direct = sum(1 for p in g if any(b in p.cycles for b in anchors))
                if direct != union_size_pie(n, k, anchors):
                    bad.append((n, k, anchors))
    record(4, "PIE formula vs enumeration n<=6, s<=3", not bad, f"checked={checked} mismatches={bad[:5]}", t0, 60)


def test_05_dichotomy():
    t0 = time.perf_counter()
    bound = emc_bound(36, 3, 2).value
    mixed = union_size_pie(36, 3, [Cycle((1,)), Cycle((2, 3))])
    fixed = union_size_pie(36, 3, [Cycle((1,)), Cycle((2,))])
    ok = mixed < bound and fixed == bound
    record(5, "dichotomy at n=36, k=3, s=2", ok, f"(1)(2 3): {mixed} < {bound}; (1)(2): {fixed}", t0, 1)


def test_06_stirling_inequalities():
    t0 = time.perf_counter()
    checked = 0
    bad = []
    for n in range(2, 61):
        for k in range(1, n):
            checked += 1
            if not check_lemma_ratio_down(n, k):
                bad.append(("down", n, k))
            if k >= 2:
                checked += 1
                if not check_lemma_ratio_diag(n, k):
                    bad.append(("diag", n, k))
    record(6, "Stirling ratio inequalities n<=60", not bad, f"checked={checked} failures={bad[:5]}", t0, 5)


def test_07_alternating_lower_bound():
    t0 = time.perf_counter()
    checked = 0
    bad = []
    for k in range(3, 6):
        for s in range(2, 5):
            for n in range(s * k * k, s * k * k + 21):
                checked += 1
                if not check_alternating_lower_bound(n, k, s):
                    bad.append((n, k, s))
    record(7, "alternating lower bound grid", not bad, f"checked={checked} failures={bad[:5]}", t0, 5)


def test_08_matching_number_oracle():
    t0 = time.perf_counter()
    rng = random.Random(8)
    g = ground(6, 3)
    bad = []
    for _ in range(100):
        ids = rng.sample(range(len(g)), rng.randint(1, 18))
        A = Family.from_ids(g, ids)
        size, witness = nu_p(A)
        if size != naive_nu([p.key for p in A]) or not is_matching(witness.perms()):
            bad.append(sorted(ids))
    extremal = {}
    for n, k, t in [(7, 3, 2), (8, 3, 2), (8, 4, 2), (9, 3, 3)]:
        A = extremal_family(ground(n, k), range(1, t + 1))
        nu = nu_p(A, cap=10**5)[0]
        extremal[(n, k, t)] = nu
        if nu != t:
            bad.append((n, k, t, nu))
        # every subfamily of an extremal family also has nu <= |T|
        for _ in range(10):
            sub = Family.from_ids(A.ground, rng.sample(A.ids, min(len(A), 60)))
            if nu_p(sub)[0] > t:
                bad.append(("sub", n, k, t))
    detail = f"random=100 extremal={ {f'{n},{k},{t}': v for (n, k, t), v in extremal.items()} } failures={bad[:3]}"
    record(8, "matching-number oracle", not bad, detail, t0, 120)


def test_09_exact_spot_values():
    t0 = time.perf_counter()
    bad = []
    if emc_exact(3, 3, 1).exact_value != 1:
        bad.append("(3,3,1)")
    if not emc_exact(4, 3, 1).exact_value == 3 == stirling_unsigned(3, 2):
        bad.append("(4,3,1)")
    solved = 0
    for n in range(1, 7):
        for k in range(1, n + 1):
            a = emc_exact(n, k, 1)
            b = emc_exact_s1(n, k)
            if not (a.solved and b.solved) or a.exact_value != b.exact_value:
                bad.append(("s1", n, k))
                continue
            solved += 1
            if a.exact_value < a.bound.value:
                bad.append(("below bound", n, k))
    for n, k, s in [(4, 3, 2), (5, 3, 2), (5, 4, 2)]:
        r = emc_exact(n, k, s)
        if r.solved:
            solved += 1
            if r.exact_value < r.bound.value:
                bad.append(("below bound", n, k, s))
    record(9, "exact EMC spot values and s=1 cross-check", not bad, f"solved={solved} failures={bad}", t0, 300)


def _random_matching(g, r, avoid, rng):
    """r pairwise cycle-disjoint members of g, none containing ``avoid``."""
    for _ in range(200):
        picked = []
        used = set()
        for i in rng.sample(range(len(g)), len(g)):
            p = g[i]
            if avoid in p.cycles or used & set(p.cycles):
                continue
            picked.append(p)
            used |= set(p.cycles)
            if len(picked) == r:
                return picked
    return None


def test_10_extension_constructive():
    """Single-member extension of a matching into an anchored family.

    The extension guarantee needs n >= (rk)^2 + 1 >= 10, out of reach at
    n <= 8, so those instances are reported with their hypothesis status and
    the solver is checked against brute force.  The cycle-avoidance step it
    rests on has hypotheses n >= l^2 + 1 that do hold at n = 7, 8 for l <= 2;
    those instances must always succeed.
    """
    t0 = time.perf_counter()
    rng = random.Random(10)
    k = 3
    cycles = {n: list(all_cycles(n)) for n in (7, 8)}
    anchors = {n: [c for c in cycles[n] if len(c) <= n - 2] for n in (7, 8)}
    stats = {"instances": 0, "size_ok": 0, "held": 0, "extended": 0, "contradictions": 0, "wrong": 0}
    while stats["instances"] < 200:
        n = rng.choice([7, 8])
        r = rng.choice([1, 1, 2])
        g = ground(n, k)
        # half the draws meet the size condition, leaving only the n bound unmet
        large = rng.random() < 0.5
        b = Cycle((rng.randint(1, n),)) if large else rng.choice(anchors[n])
        full = anchored_family(g, b)
        H = _random_matching(g, r, b, rng)
        if H is None:
            continue
        t = stirling_unsigned(n - 2, k - 2)
        lo = next(m for m in range(len(full) + 1) if m * m >= n * t * t) if large else 1
        A = Family.from_ids(g, rng.sample(full.ids, rng.randint(lo, len(full))))
        stats["instances"] += 1
        held = extension_hypothesis(n, k, r, len(A))
        stats["size_ok"] += sqrt_n_guard(n, k, len(A))
        stats["held"] += held
        pi0 = extend_matching(A, b, H)
        brute = any(is_matching(H + [p]) for p in A)
        if pi0 is not None:
            stats["extended"] += 1
            if pi0 not in A or not is_matching(H + [pi0]):
                stats["wrong"] += 1
        elif brute:
            stats["wrong"] += 1
        elif held:
            stats["contradictions"] += 1

    avoid = {"instances": 0, "contradictions": 0}
    while avoid["instances"] < 200:
        n = rng.choice([7, 8])
        l = rng.choice([1, 2])
        g = ground(n, k)
        # at n = 7, 8 only a fixed-point anchor leaves room for the size condition
        b = Cycle((rng.randint(1, n),))
        full = anchored_family(g, b)
        forbidden = []
        used = set()
        for c in rng.sample(cycles[n], 200):
            if c != b and not used & c.support:
                forbidden.append(c)
                used |= c.support
                if len(forbidden) == l:
                    break
        t = stirling_unsigned(n - 2, k - 2)
        lo = next((m for m in range(len(full) + 1) if m * m >= n * t * t), len(full) + 1)
        if lo > len(full) or len(forbidden) < l:
            continue
        A = Family.from_ids(g, rng.sample(full.ids, rng.randint(lo, len(full))))
        assert avoid_hypothesis(n, k, l, len(A))
        avoid["instances"] += 1
        pi = avoid_cycles(A, forbidden)
        if pi is None or any(c in pi.cycles for c in forbidden):
            avoid["contradictions"] += 1

    ok = stats["contradictions"] == 0 and stats["wrong"] == 0 and avoid["contradictions"] == 0
    detail = (f"extension: {json.dumps(stats, sort_keys=True)}; "
              f"avoidance (hypotheses held): {json.dumps(avoid, sort_keys=True)}")
    record(10, "constructive extension check", ok, detail, t0, 60)


def _verify_all(path):
    t0 = time.perf_counter()
    p = subprocess.run([sys.executable, "-m", "cyclematch", "verify", "--suite", "all", "-o", str(path)],
                       capture_output=True, text=True, timeout=600)
    return p.returncode, time.perf_counter() - t0


def test_11_determinism(tmp_path):
    t0 = time.perf_counter()
    # same -o path both times, since the command line is part of the report
    out = tmp_path / "report.json"
    code1, d1 = _verify_all(out)
    a = dumps(strip_timing(load(out.read_text())))
    code2, d2 = _verify_all(out)
    b = dumps(strip_timing(load(out.read_text())))
    ok = code1 == code2 == 0 and a == b
    record(11, "verify --suite all is deterministic", ok,
           f"exit={code1},{code2} identical={a == b} runs={d1:.2f}s,{d2:.2f}s", t0, 2 * max(d1, d2) + 5)
