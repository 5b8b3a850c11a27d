"""Exact EMC_p(n,k,s) at desk scale.

``emc_exact`` treats every (s+1)-matching of S_{n,k} as a forbidden
hyperedge and finds the largest vertex set containing none of them, by
branch and bound seeded with the extremal construction.  ``emc_exact_s1``
is a separate route for s = 1: the largest cycle-intersecting family is a
maximum clique of the "shares a cycle" graph.
"""

from __future__ import annotations

import time
from itertools import combinations
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .bits import indices_from_bits
from .errors import CapacityError, InvalidInputError
from .family import Family, extremal_family
from .matching import DisjointnessGraph, iter_matchings, nu_p
from .perms import Cycle, SnkEnumeration
from .stirling import BoundValue, emc_bound, stirling_unsigned

EQUAL = "equal"
EXACT_EXCEEDS = "exact-exceeds-bound"
BOUND_EXCEEDS = "bound-exceeds-exact"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Limits:
    ground_cap: int = 10**4
    hyperedge_cap: int = 10**6
    max_nodes: int = 200_000


@dataclass
class EmcInstance:
    n: int
    k: int
    s: int
    ground: SnkEnumeration
    hyperedges: List[Tuple[int, ...]]

    @classmethod
    def build(cls, n: int, k: int, s: int, limits: Limits = Limits()) -> "EmcInstance":
        _check_params(n, k, s)
        size = stirling_unsigned(n, k)
        if size > limits.ground_cap:
            raise CapacityError(
                f"|S_({n},{k})| = {size} exceeds ground cap {limits.ground_cap}",
                lower=_construction_lower(n, k, s),
                upper=size,
            )
        ground = SnkEnumeration(n, k)
        edges = []
        for e in iter_matchings(Family.full(ground), s + 1):
            if len(edges) >= limits.hyperedge_cap:
                raise CapacityError(
                    f"more than {limits.hyperedge_cap} forbidden {s + 1}-matchings",
                    lower=_construction_lower(n, k, s),
                    upper=size,
                )
            edges.append(e)
        return cls(n, k, s, ground, edges)


@dataclass
class EmcResult:
    n: int
    k: int
    s: int
    exact_value: Optional[int]
    lower: int
    upper: int
    bound: BoundValue
    witness: Optional[Family] = None
    nodes: int = 0
    wall_time: float = 0.0
    note: str = ""

    @property
    def solved(self) -> bool:
        return self.exact_value is not None

    @property
    def agrees(self) -> str:
        if self.exact_value is None:
            return UNKNOWN
        if self.exact_value == self.bound.value:
            return EQUAL
        return EXACT_EXCEEDS if self.exact_value > self.bound.value else BOUND_EXCEEDS

    @property
    def threshold_met(self) -> bool:
        return self.bound.threshold_met

    @property
    def in_theorem_scope(self) -> bool:
        return self.k >= 4


def _check_params(n: int, k: int, s: int) -> None:
    if k < 1 or n < k or s < 1:
        raise InvalidInputError(f"need n >= k >= 1 and s >= 1, got n={n}, k={k}, s={s}")


def _construction_lower(n: int, k: int, s: int) -> int:
    # the extremal construction needs s distinct fixed points
    return emc_bound(n, k, s).value if s <= n else 0


class _Budget(Exception):
    def __init__(self):
        self.upper = 0


class _HypergraphSearch:
    """Largest vertex set containing no hyperedge.

    The bound partitions the candidates into cliques of the disjointness
    graph; any s+1 members of such a clique form a hyperedge, so a feasible
    set takes at most s from each.
    """

    def __init__(self, inst: EmcInstance, graph: DisjointnessGraph, max_nodes: int):
        self.s = inst.s
        self.g = graph
        self.edges = inst.hyperedges
        m = len(inst.ground)
        inc: List[List[int]] = [[] for _ in range(m)]
        for ei, e in enumerate(self.edges):
            for v in e:
                inc[v].append(ei)
        self.inc = inc
        self.count = [0] * len(self.edges)
        self.chosen = [False] * m
        self.max_nodes = max_nodes
        self.nodes = 0
        self.best: List[int] = []

    def clique_bound(self, P: int) -> int:
        s = self.s
        row = self.g.row
        total = 0
        while P:
            v = (P & -P).bit_length() - 1
            size = 1
            P ^= 1 << v
            cand = P & row(v)
            while cand:
                u = (cand & -cand).bit_length() - 1
                cand &= row(u)
                P ^= 1 << u
                size += 1
            total += min(size, s)
        return total

    def add(self, v: int) -> int:
        """Choose v; return the mask of vertices that became infeasible."""
        self.chosen[v] = True
        blocked = 0
        s = self.s
        for ei in self.inc[v]:
            c = self.count[ei] + 1
            self.count[ei] = c
            if c == s:
                for u in self.edges[ei]:
                    if not self.chosen[u]:
                        blocked |= 1 << u
                        break
        return blocked

    def remove(self, v: int) -> None:
        self.chosen[v] = False
        for ei in self.inc[v]:
            self.count[ei] -= 1

    def run(self, incumbent: Sequence[int]) -> None:
        self.best = sorted(incumbent)
        full = (1 << len(self.chosen)) - 1
        self.root_bound = self.clique_bound(full)
        if self.root_bound > len(self.best):
            self.expand([], full)

    def expand(self, X: List[int], P: int) -> None:
        # include-branch recurses, exclude-branch loops
        while True:
            self.nodes += 1
            bound = len(X) + self.clique_bound(P)
            if self.nodes > self.max_nodes:
                exc = _Budget()
                exc.upper = bound
                raise exc
            if bound <= len(self.best):
                return
            if not P:
                self.best = sorted(X)
                return
            v = (P & -P).bit_length() - 1
            rest = P ^ (1 << v)
            blocked = self.add(v)
            X.append(v)
            try:
                self.expand(X, rest & ~blocked)
            except _Budget as exc:
                X.pop()
                self.remove(v)
                exc.upper = max(exc.upper, len(X) + self.clique_bound(rest))
                raise
            X.pop()
            self.remove(v)
            P = rest


def emc_exact(n: int, k: int, s: int, limits: Limits = Limits()) -> EmcResult:
    """Exact EMC_p(n,k,s) or certified bounds when a limit is hit."""
    t0 = time.perf_counter()
    _check_params(n, k, s)
    bound = emc_bound(n, k, s)
    try:
        inst = EmcInstance.build(n, k, s, limits)
    except CapacityError as exc:
        return EmcResult(n, k, s, None, exc.lower or 0, exc.upper, bound,
                         wall_time=time.perf_counter() - t0, note=str(exc))
    ground = inst.ground
    full = Family.full(ground)
    graph = DisjointnessGraph(full)
    if s <= n:
        seed = extremal_family(ground, range(1, s + 1)).ids
    else:
        seed = ()
    search = _HypergraphSearch(inst, graph, limits.max_nodes)
    try:
        search.run(seed)
    except _Budget as exc:
        best = search.best
        upper = min(max(exc.upper, len(best)), len(ground))
        return EmcResult(n, k, s, None, len(best), upper, bound,
                         witness=Family.from_ids(ground, best), nodes=search.nodes,
                         wall_time=time.perf_counter() - t0,
                         note=f"node budget {limits.max_nodes} exhausted")
    witness = Family.from_ids(ground, search.best)
    _verify_witness(witness, s)
    return EmcResult(n, k, s, len(witness), len(witness), len(witness), bound,
                     witness=witness, nodes=search.nodes, wall_time=time.perf_counter() - t0)


def is_extremal_form(fam: Family, s: int) -> bool:
    """Whether ``fam`` is exactly the members fixing some point of an s-set T."""
    n = fam.n
    if s > n:
        return False
    # every member fixing a point of T lies in fam, so only such points qualify
    ground = fam.ground
    cand = [t for t in range(1, n + 1)
            if ground.incidence_mask(Cycle((t,))) & ~fam.mask == 0]
    for T in combinations(cand, s):
        if extremal_family(ground, T).mask == fam.mask:
            return True
    return False


def _verify_witness(witness: Family, s: int) -> None:
    nu, _ = nu_p(witness)
    if nu > s:
        raise AssertionError(f"solver witness has matching number {nu} > {s}")


def _max_clique_greedy_colour(rows: Sequence[int], full: int, incumbent: Sequence[int], max_nodes: int):
    """Plain MCQ: greedy sequential colouring bound, vertices by id."""
    best = list(incumbent)
    nodes = 0

    def colour(P: int):
        order = []
        c = 0
        rem = P
        while rem:
            c += 1
            Q = rem
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= ~rows[v] & ~(1 << v)
                rem ^= 1 << v
                order.append((v, c))
        return order

    def expand(C: List[int], P: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > max_nodes:
            raise _Budget
        for v, c in reversed(colour(P)):
            if len(C) + c <= len(best):
                return
            C.append(v)
            newP = P & rows[v]
            if newP:
                expand(C, newP)
            elif len(C) > len(best):
                best = list(C)
            C.pop()
            P &= ~(1 << v)

    if full:
        expand([], full)
    return sorted(best), nodes


def emc_exact_s1(n: int, k: int, limits: Limits = Limits()) -> EmcResult:
    """Largest cycle-intersecting family, as a maximum clique of the sharing graph."""
    t0 = time.perf_counter()
    _check_params(n, k, 1)
    bound = emc_bound(n, k, 1)
    size = stirling_unsigned(n, k)
    if size > limits.ground_cap:
        return EmcResult(n, k, 1, None, _construction_lower(n, k, 1), size, bound,
                         wall_time=time.perf_counter() - t0,
                         note=f"|S_({n},{k})| = {size} exceeds ground cap {limits.ground_cap}")
    ground = SnkEnumeration(n, k)
    # sharing graph: members adjacent iff they have a common cycle
    rows = []
    for i, cids in enumerate(ground.perm_cycles):
        r = 0
        for c in cids:
            r |= ground.incidence_mask(c)
        rows.append(r & ~(1 << i))
    seed = ground.members_with(Cycle((1,)))
    try:
        best, nodes = _max_clique_greedy_colour(rows, ground.full_mask, seed, limits.max_nodes)
    except _Budget:
        return EmcResult(n, k, 1, None, len(seed), size, bound,
                         wall_time=time.perf_counter() - t0,
                         note=f"node budget {limits.max_nodes} exhausted")
    witness = Family.from_ids(ground, best)
    _verify_witness(witness, 1)
    return EmcResult(n, k, 1, len(best), len(best), len(best), bound, witness=witness,
                     nodes=nodes, wall_time=time.perf_counter() - t0)


def grid(n_values: Iterable[int], k_values: Optional[Iterable[int]], s_values: Iterable[int]) -> List[Tuple[int, int, int]]:
    """(n, k, s) triples in sweep order; ``k_values=None`` means every 1 <= k <= n."""
    ks = None if k_values is None else list(k_values)
    ss = list(s_values)
    out = []
    for n in n_values:
        for k in (range(1, n + 1) if ks is None else ks):
            if not 1 <= k <= n:
                continue
            for s in ss:
                out.append((n, k, s))
    return out


def _solve_one(args) -> EmcResult:
    n, k, s, limits = args
    return emc_exact(n, k, s, limits)


def sweep(instances: Iterable[Tuple[int, int, int]], limits: Limits = Limits(), workers: int = 1) -> List[EmcResult]:
    """Solve each (n, k, s); limit hits come back as unknown results, in input order."""
    jobs = [(n, k, s, limits) for n, k, s in instances]
    if workers <= 1 or len(jobs) <= 1:
        return [_solve_one(j) for j in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_solve_one, jobs))
