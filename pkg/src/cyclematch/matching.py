"""Matchings inside a family and the exact matching number.

Two members are adjacent in the disjointness graph when they share no
cycle, so matchings are exactly cliques.  The maximum clique search colours
candidates by shared cycles: all members containing a given cycle are
pairwise non-adjacent, so each such group is a colour class for free.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .bits import bits_from_indices, indices_from_bits
from .errors import CapacityError, InvalidInputError
from .family import Family
from .perms import Cycle, CyclePerm, SnkEnumeration
from .stirling import stirling_unsigned

DEFAULT_NU_CAP = 5 * 10**4


def is_matching(H: Sequence[CyclePerm]) -> bool:
    """True iff the permutations pairwise share no cycle."""
    seen = set()
    for pi in H:
        for c in pi.cycles:
            if c in seen:
                return False
            seen.add(c)
    return True


@dataclass(frozen=True)
class Matching:
    """Pairwise cycle-disjoint members of an enumeration, by id."""

    ground: SnkEnumeration
    ids: Tuple[int, ...]

    def __post_init__(self):
        ids = tuple(sorted(self.ids))
        object.__setattr__(self, "ids", ids)
        if len(set(ids)) != len(ids) or not is_matching([self.ground[i] for i in ids]):
            raise InvalidInputError("members are not pairwise cycle-disjoint")

    @classmethod
    def from_perms(cls, ground: SnkEnumeration, perms: Iterable[CyclePerm]) -> "Matching":
        return cls(ground, tuple(ground.index(p) for p in perms))

    def perms(self) -> List[CyclePerm]:
        return [self.ground[i] for i in self.ids]

    def cycles(self) -> set:
        return {c for i in self.ids for c in self.ground[i].cycles}

    def __len__(self):
        return len(self.ids)

    def __iter__(self):
        return iter(self.perms())


class DisjointnessGraph:
    """Disjointness graph of a family on local vertex ids 0..m-1.

    Local id i is the i-th smallest member id of the family.  Adjacency rows
    are Python-int bitsets, computed on first use.
    """

    def __init__(self, family: Family):
        self.family = family
        self.members: Tuple[int, ...] = family.ids
        pc = family.ground.perm_cycles
        self.vertex_cycles: Tuple[Tuple[int, ...], ...] = tuple(pc[g] for g in self.members)
        holders: Dict[int, List[int]] = {}
        for i, cids in enumerate(self.vertex_cycles):
            for c in cids:
                holders.setdefault(c, []).append(i)
        self.cycle_class: Dict[int, int] = {c: bits_from_indices(v) for c, v in holders.items()}
        self.full = (1 << len(self.members)) - 1
        self._rows: Dict[int, int] = {}

    def __len__(self):
        return len(self.members)

    def row(self, i: int) -> int:
        r = self._rows.get(i)
        if r is None:
            shared = 0
            for c in self.vertex_cycles[i]:
                shared |= self.cycle_class[c]
            r = self.full & ~shared
            self._rows[i] = r
        return r

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.row(i) >> j & 1)

    def cycle_colouring(self, P: int) -> List[int]:
        """Partition ``P`` into classes of members sharing one cycle.

        Greedy: the lowest remaining vertex picks, among its own cycles, the
        one covering most of what remains (ties to the smaller cycle id).
        """
        classes = []
        rem = P
        cc = self.cycle_class
        vc = self.vertex_cycles
        while rem:
            v = (rem & -rem).bit_length() - 1
            best_cls = 0
            best_cnt = -1
            for c in sorted(vc[v]):
                cls = rem & cc[c]
                cnt = cls.bit_count()
                if cnt > best_cnt:
                    best_cls, best_cnt = cls, cnt
            classes.append(best_cls)
            rem ^= best_cls
        return classes

    def to_global(self, local: Iterable[int]) -> Tuple[int, ...]:
        return tuple(self.members[i] for i in local)


class _NodeBudget(Exception):
    pass


def _greedy_clique(g: DisjointnessGraph, order: Iterable[int]) -> List[int]:
    chosen: List[int] = []
    allowed = g.full
    for v in order:
        if allowed >> v & 1:
            chosen.append(v)
            allowed &= g.row(v)
    return chosen


def max_clique(g: DisjointnessGraph, incumbent: Sequence[int] = (), max_nodes: Optional[int] = None) -> List[int]:
    """Exact maximum clique (local ids), branch and bound with colour bound."""
    best = list(incumbent)
    nodes = 0

    def expand(C: List[int], P: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise _NodeBudget
        classes = g.cycle_colouring(P)
        for ci in range(len(classes) - 1, -1, -1):
            for v in reversed(indices_from_bits(classes[ci])):
                if len(C) + ci + 1 <= len(best):
                    return
                C.append(v)
                newP = P & g.row(v)
                if newP:
                    expand(C, newP)
                elif len(C) > len(best):
                    best = list(C)
                C.pop()
                P &= ~(1 << v)

    if g.full:
        try:
            expand([], g.full)
        except _NodeBudget:
            raise CapacityError(f"clique search exceeded {max_nodes} nodes", lower=len(best)) from None
    return sorted(best)


def nu_p(A: Family, cap: int = DEFAULT_NU_CAP, max_nodes: Optional[int] = None) -> Tuple[int, Matching]:
    """Matching number of ``A`` with one maximum matching as witness."""
    if len(A) > cap:
        raise CapacityError(f"family of size {len(A)} exceeds the matching-number cap {cap}")
    if len(A) == 0:
        return 0, Matching(A.ground, ())
    g = DisjointnessGraph(A)
    start = _greedy_clique(g, range(len(g)))
    clique = max_clique(g, start, max_nodes=max_nodes)
    return len(clique), Matching(A.ground, g.to_global(clique))


def greedy_matching_lower_bound(A: Family, restarts: int = 20, seed: int = 0) -> int:
    """Best size over random-order greedy matchings; never exceeds nu_p."""
    if len(A) == 0:
        return 0
    g = DisjointnessGraph(A)
    rng = random.Random(seed)
    order = list(range(len(g)))
    best = len(_greedy_clique(g, order))
    for _ in range(restarts):
        rng.shuffle(order)
        best = max(best, len(_greedy_clique(g, order)))
    return best


def avoid_cycles(A: Family, forbidden: Iterable[Cycle]) -> Optional[CyclePerm]:
    """Lowest-id member of ``A`` containing none of ``forbidden``, else None."""
    bad = 0
    for c in forbidden:
        bad |= A.incidence(c)
    rem = A.mask & ~bad
    if not rem:
        return None
    return A.ground[(rem & -rem).bit_length() - 1]


def _as_perms(H) -> List[CyclePerm]:
    if isinstance(H, Matching):
        return H.perms()
    return list(H)


def _check_anchored(A: Family, b: Cycle) -> None:
    if A.mask & ~A.ground.incidence_mask(b):
        raise InvalidInputError(f"not every member of the family contains {b}")


def extend_matching(A: Family, b: Cycle, H) -> Optional[CyclePerm]:
    """A member pi0 of the ``b``-anchored family ``A`` with {pi0} + H a matching.

    Returns None when no such member exists.
    """
    H = _as_perms(H)
    _check_anchored(A, b)
    if not is_matching(H):
        raise InvalidInputError("H is not a matching")
    for pi in H:
        if b in pi.cycles:
            raise InvalidInputError(f"anchor {b} occurs in H member {pi}")
    return avoid_cycles(A, {c for pi in H for c in pi.cycles})


def extend_matching_multi(families: Sequence[Family], anchors: Sequence[Cycle], H) -> Optional[List[CyclePerm]]:
    """One member per anchored family so that together with H they form a matching.

    Picks from the last family first while avoiding H's cycles and the
    remaining anchors, then recurses with the pick added to H.  Backtracks
    over candidates, so None means no choice exists at all.
    """
    H = _as_perms(H)
    if len(families) != len(anchors):
        raise InvalidInputError("need exactly one anchor per family")
    if len(set(anchors)) != len(anchors):
        raise InvalidInputError("anchors must be pairwise distinct")
    if not is_matching(H):
        raise InvalidInputError("H is not a matching")
    for A, b in zip(families, anchors):
        _check_anchored(A, b)
        for pi in H:
            if b in pi.cycles:
                raise InvalidInputError(f"anchor {b} occurs in H member {pi}")

    def solve(l: int, used: set) -> Optional[List[CyclePerm]]:
        if l == 0:
            return []
        A = families[l - 1]
        bad = 0
        for c in used:
            bad |= A.incidence(c)
        for b in anchors[: l - 1]:
            bad |= A.incidence(b)
        rem = A.mask & ~bad
        for idx in indices_from_bits(rem):
            pick = A.ground[idx]
            rest = solve(l - 1, used | set(pick.cycles))
            if rest is not None:
                return rest + [pick]
        return None

    return solve(len(families), {c for pi in H for c in pi.cycles})


def iter_matchings(A: Family, size: int) -> Iterator[Tuple[int, ...]]:
    """Global-id tuples of all matchings of exactly ``size`` in ``A``, lexicographic."""
    if size < 1:
        raise InvalidInputError("matching size must be >= 1")
    g = DisjointnessGraph(A)

    def rec(chosen: List[int], P: int) -> Iterator[Tuple[int, ...]]:
        need = size - len(chosen)
        if need == 0:
            yield g.to_global(chosen)
            return
        while P and P.bit_count() >= need:
            v = (P & -P).bit_length() - 1
            P ^= 1 << v
            chosen.append(v)
            yield from rec(chosen, P & g.row(v))
            chosen.pop()

    yield from rec([], g.full)


def enumerate_matchings(A: Family, size: int, cap: int = 10**6) -> List[Matching]:
    out = []
    for ids in iter_matchings(A, size):
        if len(out) >= cap:
            raise CapacityError(f"more than {cap} matchings of size {size}")
        out.append(Matching(A.ground, ids))
    return out


def sqrt_n_guard(n: int, k: int, size: int) -> bool:
    """size >= sqrt(n) [n-2, k-2], tested as size^2 >= n [n-2, k-2]^2."""
    t = stirling_unsigned(n - 2, k - 2) if n >= 2 and k >= 2 else 0
    return size * size >= n * t * t


def avoid_hypothesis(n: int, k: int, num_forbidden: int, size: int) -> bool:
    """Conditions under which a member avoiding ``num_forbidden`` disjoint cycles must exist."""
    return k >= 3 and num_forbidden >= 1 and n >= num_forbidden**2 + 1 and sqrt_n_guard(n, k, size)


def extension_hypothesis(n: int, k: int, r: int, size: int) -> bool:
    """Conditions under which extending an r-matching by one anchored member must succeed."""
    return k >= 3 and r >= 1 and n >= (r * k) ** 2 + 1 and sqrt_n_guard(n, k, size)


def multi_extension_hypothesis(n: int, k: int, r: int, sizes: Sequence[int]) -> bool:
    l = len(sizes)
    return (
        k >= 3
        and r >= 1
        and l >= 1
        and n >= ((r + l - 1) * k) ** 2 + 1
        and all(sqrt_n_guard(n, k, m) for m in sizes)
    )
