"""Canonical cycle decompositions and exhaustive enumeration of S_{n,k}.

A cycle is stored rotated so its minimum element comes first; a permutation
is the tuple of its cycles (fixed points included) sorted by minimum.  With
that convention equal permutations have identical stored forms and the
cycle set M(pi) is just the tuple of cycles.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .bits import bits_from_indices
from .errors import CapacityError, InvalidInputError
from .stirling import stirling_unsigned

DEFAULT_ENUM_CAP = 10**7


@dataclass(frozen=True, order=True)
class Cycle:
    """A cyclic sequence of distinct positive integers, minimum first."""

    elements: Tuple[int, ...]

    def __post_init__(self):
        el = self.elements
        if not isinstance(el, tuple):
            object.__setattr__(self, "elements", tuple(el))
            el = self.elements
        if not el:
            raise InvalidInputError("a cycle needs at least one element")
        if len(set(el)) != len(el):
            raise InvalidInputError(f"repeated element in cycle {el}")
        if any(not isinstance(a, int) or a < 1 for a in el):
            raise InvalidInputError(f"cycle elements must be positive integers: {el}")
        if el[0] != min(el):
            raise InvalidInputError(f"cycle {el} is not rotated to its minimum; use Cycle.of")

    @classmethod
    def of(cls, *seq) -> "Cycle":
        """Build from any rotation: ``Cycle.of(3, 1, 2) == Cycle.of(1, 2, 3)``."""
        if len(seq) == 1 and not isinstance(seq[0], int):
            seq = tuple(seq[0])
        if not seq:
            raise InvalidInputError("a cycle needs at least one element")
        i = seq.index(min(seq))
        return cls(tuple(seq[i:]) + tuple(seq[:i]))

    @classmethod
    def _trusted(cls, elements: Tuple[int, ...]) -> "Cycle":
        obj = object.__new__(cls)
        object.__setattr__(obj, "elements", elements)
        return obj

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "(" + " ".join(map(str, self.elements)) + ")"

    def __repr__(self):
        return f"Cycle{self.elements}"


@dataclass(frozen=True, order=True)
class CyclePerm:
    """A permutation of [n] held as its full cycle decomposition."""

    n: int
    cycles: Tuple[Cycle, ...] = field(compare=True)

    def __post_init__(self):
        cyc = tuple(sorted(self.cycles, key=lambda c: c.elements[0]))
        object.__setattr__(self, "cycles", cyc)
        seen = set()
        for c in cyc:
            for a in c.elements:
                if a > self.n or a in seen:
                    raise InvalidInputError(f"cycles do not partition [{self.n}]: {cyc}")
                seen.add(a)
        if len(seen) != self.n:
            raise InvalidInputError(f"cycles do not cover [{self.n}]: {format_perm_cycles(cyc)}")

    @classmethod
    def _trusted(cls, n: int, cycles: Tuple[Cycle, ...]) -> "CyclePerm":
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "cycles", cycles)
        return obj

    @property
    def k(self) -> int:
        return len(self.cycles)

    @property
    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(c.elements for c in self.cycles)

    def __str__(self):
        return format_perm_cycles(self.cycles)

    def __repr__(self):
        return f"CyclePerm({self})"


def format_perm_cycles(cycles: Sequence[Cycle]) -> str:
    return "".join(str(c) for c in cycles)


def _cycles_of_mapping(mapping: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    # mapping[i] is the 0-based image of i; output cycles are 1-based,
    # each started at its least unvisited element, so already canonical.
    n = len(mapping)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = mapping[j]
        out.append(tuple(cyc))
    return tuple(out)


def canonicalize(mapping: Sequence[int]) -> CyclePerm:
    """Cycle form of a one-line permutation (``mapping[i-1]`` is the image of i)."""
    n = len(mapping)
    if sorted(mapping) != list(range(1, n + 1)):
        raise InvalidInputError(f"not a bijection on [{n}]: {list(mapping)}")
    zero = [m - 1 for m in mapping]
    return CyclePerm(n, tuple(Cycle(c) for c in _cycles_of_mapping(zero)))


def to_mapping(pi: CyclePerm) -> Tuple[int, ...]:
    out = [0] * pi.n
    for c in pi.cycles:
        el = c.elements
        for i, a in enumerate(el):
            out[a - 1] = el[(i + 1) % len(el)]
    return tuple(out)


def cycle_set(pi: CyclePerm) -> FrozenSet[Cycle]:
    return frozenset(pi.cycles)


def contains_cycle(pi: CyclePerm, b: Cycle) -> bool:
    return b in pi.cycles


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int | None = None) -> CyclePerm:
    """Parse ``"(1 3 2)(4)"``.  Whitespace is free; commas are accepted as separators.

    Fixed points must be written out unless ``n`` is given, in which case
    missing elements become length-1 cycles.
    """
    if not text.strip():
        raise InvalidInputError("empty permutation text")
    if _CYCLE_RE.sub("", text).strip():
        raise InvalidInputError(f"unparseable permutation text: {text!r}")
    cycles = []
    for grp in _CYCLE_RE.findall(text):
        parts = grp.replace(",", " ").split()
        try:
            nums = [int(p) for p in parts]
        except ValueError as exc:
            raise InvalidInputError(f"non-integer in cycle ({grp})") from exc
        cycles.append(Cycle.of(nums))
    used = {a for c in cycles for a in c.elements}
    size = max(used) if n is None else n
    if n is not None:
        cycles.extend(Cycle((a,)) for a in range(1, n + 1) if a not in used)
    return CyclePerm(size, tuple(cycles))


def parse_cycle(text: str) -> Cycle:
    groups = _CYCLE_RE.findall(text)
    if len(groups) != 1 or _CYCLE_RE.sub("", text).strip():
        raise InvalidInputError(f"expected a single cycle, got {text!r}")
    try:
        return Cycle.of([int(p) for p in groups[0].replace(",", " ").split()])
    except ValueError as exc:
        raise InvalidInputError(f"bad cycle {text!r}") from exc


def all_cycles(n: int) -> Iterator[Cycle]:
    """Every cycle on a subset of [n], by length then support then order."""
    for length in range(1, n + 1):
        for support in combinations(range(1, n + 1), length):
            head, rest = support[0], support[1:]
            for tail in permutations(rest):
                yield Cycle((head,) + tail)


def _mappings(n: int, k: int) -> List[Tuple[int, ...]]:
    """0-based one-line tables of S_{n,k}, built by inserting n into S_{n-1,*}."""
    memo: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {(0, 0): [()]}

    def build(m: int, j: int) -> List[Tuple[int, ...]]:
        if (m, j) in memo:
            return memo[(m, j)]
        if j < 1 or j > m:
            return []
        out = []
        last = m - 1
        # m as a new fixed point
        for sigma in build(m - 1, j - 1):
            out.append(sigma + (last,))
        # m spliced into an existing cycle right after element i
        for sigma in build(m - 1, j):
            for i in range(m - 1):
                tau = list(sigma)
                tau.append(sigma[i])
                tau[i] = last
                out.append(tuple(tau))
        memo[(m, j)] = out
        return out

    return build(n, k)


class CycleRegistry:
    """Dense integer ids for cycles, assigned in first-seen order."""

    def __init__(self):
        self._ids: Dict[Tuple[int, ...], int] = {}
        self._cycles: List[Cycle] = []

    def intern(self, c: Cycle) -> int:
        cid = self._ids.get(c.elements)
        if cid is None:
            cid = len(self._cycles)
            self._ids[c.elements] = cid
            self._cycles.append(c)
        return cid

    def id_of(self, c: Cycle) -> int | None:
        return self._ids.get(c.elements)

    def id_of_elements(self, elements: Tuple[int, ...]) -> int | None:
        return self._ids.get(elements)

    def cycle(self, cid: int) -> Cycle:
        return self._cycles[cid]

    def __len__(self):
        return len(self._cycles)

    def __iter__(self):
        return iter(self._cycles)


class SnkEnumeration:
    """S_{n,k} in lexicographic canonical order, with cycle interning.

    ``perm_cycles[i]`` lists the cycle ids of member i; ``members_with(cid)``
    lists the members containing a cycle.  Treat instances as read-only.
    """

    def __init__(self, n: int, k: int, cap: int = DEFAULT_ENUM_CAP):
        if k < 1 or n < k:
            raise InvalidInputError(f"S_(n,k) needs 1 <= k <= n, got n={n}, k={k}")
        size = stirling_unsigned(n, k)
        if size > cap:
            raise CapacityError(f"|S_({n},{k})| = {size} exceeds enumeration cap {cap}", upper=size)
        keys = sorted(_cycles_of_mapping(m) for m in _mappings(n, k))
        self.n = n
        self.k = k
        self.registry = CycleRegistry()
        perms = []
        perm_cycles = []
        holders: List[List[int]] = []
        for idx, key in enumerate(keys):
            ids = []
            cycles = []
            for el in key:
                cid = self.registry.id_of_elements(el)
                if cid is None:
                    cid = self.registry.intern(Cycle._trusted(el))
                c = self.registry.cycle(cid)
                cycles.append(c)
                if cid == len(holders):
                    holders.append([])
                holders[cid].append(idx)
                ids.append(cid)
            perms.append(CyclePerm._trusted(n, tuple(cycles)))
            perm_cycles.append(tuple(ids))
        self.perms: Tuple[CyclePerm, ...] = tuple(perms)
        self.perm_cycles: Tuple[Tuple[int, ...], ...] = tuple(perm_cycles)
        self._holders = tuple(tuple(h) for h in holders)
        self._index = {p: i for i, p in enumerate(perms)}
        self._masks: Dict[int, int] = {}

    def __len__(self):
        return len(self.perms)

    def __iter__(self):
        return iter(self.perms)

    def __getitem__(self, i: int) -> CyclePerm:
        return self.perms[i]

    def index(self, pi: CyclePerm) -> int:
        try:
            return self._index[pi]
        except KeyError:
            raise InvalidInputError(f"{pi} is not in S_({self.n},{self.k})") from None

    def cycle_id(self, c: Cycle) -> int | None:
        """Id of ``c``, or None when no member of S_{n,k} contains it."""
        return self.registry.id_of(c)

    def members_with(self, c: Cycle | int) -> Tuple[int, ...]:
        cid = c if isinstance(c, int) else self.cycle_id(c)
        if cid is None:
            return ()
        return self._holders[cid]

    def incidence_mask(self, c: Cycle | int) -> int:
        cid = c if isinstance(c, int) else self.cycle_id(c)
        if cid is None:
            return 0
        m = self._masks.get(cid)
        if m is None:
            m = bits_from_indices(self._holders[cid])
            self._masks[cid] = m
        return m

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.perms)) - 1


def enumerate_snk(n: int, k: int, cap: int = DEFAULT_ENUM_CAP) -> List[CyclePerm]:
    """All permutations of [n] with exactly k cycles, lexicographically ordered."""
    return list(SnkEnumeration(n, k, cap).perms)
