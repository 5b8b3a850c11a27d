"""Families of permutations inside a fixed enumeration of S_{n,k}.

A :class:`Family` is a bitmask over the ids of a shared
:class:`~cyclematch.perms.SnkEnumeration`; set operations are integer
bit operations and nothing is copied.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Dict, Iterable, Iterator, List, Sequence, Tuple

from .bits import bits_from_indices, indices_from_bits
from .errors import InvalidInputError
from .perms import Cycle, CyclePerm, SnkEnumeration, parse_perm
from .stirling import stirling_unsigned

MAX_PIE_ANCHORS = 20


class Family:
    """An immutable subset of S_{n,k}."""

    def __init__(self, ground: SnkEnumeration, mask: int = 0):
        if mask < 0 or mask >> len(ground):
            raise InvalidInputError("family mask refers to ids outside the enumeration")
        self.ground = ground
        self.mask = mask

    @classmethod
    def from_ids(cls, ground: SnkEnumeration, ids: Iterable[int]) -> "Family":
        ids = list(ids)
        if any(i < 0 or i >= len(ground) for i in ids):
            raise InvalidInputError("member id outside the enumeration")
        return cls(ground, bits_from_indices(ids))

    @classmethod
    def from_perms(cls, ground: SnkEnumeration, perms: Iterable[CyclePerm]) -> "Family":
        return cls.from_ids(ground, (ground.index(p) for p in perms))

    @classmethod
    def full(cls, ground: SnkEnumeration) -> "Family":
        return cls(ground, ground.full_mask)

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def k(self) -> int:
        return self.ground.k

    @cached_property
    def ids(self) -> Tuple[int, ...]:
        return tuple(indices_from_bits(self.mask))

    def perms(self) -> List[CyclePerm]:
        g = self.ground.perms
        return [g[i] for i in self.ids]

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[CyclePerm]:
        return iter(self.perms())

    def __contains__(self, pi: CyclePerm) -> bool:
        idx = self.ground._index.get(pi)
        return idx is not None and bool(self.mask >> idx & 1)

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return self.ground is other.ground and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.ground), self.mask))

    def __repr__(self):
        return f"Family(n={self.n}, k={self.k}, size={len(self)})"

    def incidence(self, c: Cycle | int) -> int:
        """Bitmask of members containing cycle ``c``."""
        return self.ground.incidence_mask(c) & self.mask

    def _check_compatible(self, other: "Family") -> None:
        if self.ground is not other.ground:
            if (self.n, self.k) != (other.n, other.k):
                raise InvalidInputError(
                    f"families over S_({self.n},{self.k}) and S_({other.n},{other.k}) cannot be combined"
                )
            raise InvalidInputError("families are bound to different enumerations")

    def union(self, other: "Family") -> "Family":
        self._check_compatible(other)
        return Family(self.ground, self.mask | other.mask)

    def intersection(self, other: "Family") -> "Family":
        self._check_compatible(other)
        return Family(self.ground, self.mask & other.mask)

    def difference(self, other: "Family") -> "Family":
        self._check_compatible(other)
        return Family(self.ground, self.mask & ~other.mask)

    def filter(self, pred: Callable[[CyclePerm], bool]) -> "Family":
        g = self.ground.perms
        return Family.from_ids(self.ground, (i for i in self.ids if pred(g[i])))

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    # serialization

    def to_lines(self) -> str:
        return "".join(f"{p}\n" for p in self.perms())

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "k": self.k, "ids": list(self.ids)}, sort_keys=True)


def family_union(a: Family, b: Family) -> Family:
    return a.union(b)


def family_intersection(a: Family, b: Family) -> Family:
    return a.intersection(b)


def family_filter(a: Family, pred: Callable[[CyclePerm], bool]) -> Family:
    return a.filter(pred)


def parse_family_lines(text: str, ground: SnkEnumeration) -> Family:
    """Read the one-permutation-per-line format.  ``#`` starts a comment."""
    ids = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pi = parse_perm(line, n=ground.n)
        except InvalidInputError as exc:
            raise InvalidInputError(f"line {lineno}: {exc}") from None
        if pi.k != ground.k:
            raise InvalidInputError(f"line {lineno}: {pi} has {pi.k} cycles, expected {ground.k}")
        ids.append(ground.index(pi))
    return Family.from_ids(ground, ids)


def family_from_json(text: str, ground: SnkEnumeration) -> Family:
    data = json.loads(text)
    if (data.get("n"), data.get("k")) != (ground.n, ground.k):
        raise InvalidInputError(f"JSON family header {data.get('n')},{data.get('k')} does not match S_({ground.n},{ground.k})")
    return Family.from_ids(ground, data["ids"])


@dataclass(frozen=True)
class AnchorSpec:
    anchors: Tuple[Cycle, ...]

    def __post_init__(self):
        object.__setattr__(self, "anchors", tuple(self.anchors))
        if len(set(self.anchors)) != len(self.anchors):
            raise InvalidInputError("anchors must be pairwise distinct cycles")

    def __len__(self):
        return len(self.anchors)

    @property
    def disjoint_supports(self) -> bool:
        seen = set()
        for b in self.anchors:
            if seen & b.support:
                return False
            seen |= b.support
        return True


def _check_cycle_on(n: int, b: Cycle) -> None:
    if max(b.elements) > n:
        raise InvalidInputError(f"cycle {b} is not on [{n}]")


def anchored_family(ground: SnkEnumeration, b: Cycle) -> Family:
    """All members of S_{n,k} having ``b`` as one of their cycles."""
    _check_cycle_on(ground.n, b)
    return Family(ground, ground.incidence_mask(b))


def extremal_family(ground: SnkEnumeration, T: Iterable[int]) -> Family:
    """Union over t in T of the members fixing t (i.e. containing the cycle (t))."""
    T = sorted(set(T))
    if not T:
        raise InvalidInputError("T must be nonempty")
    if T[0] < 1 or T[-1] > ground.n:
        raise InvalidInputError(f"T must be a subset of [{ground.n}], got {T}")
    mask = 0
    for t in T:
        mask |= ground.incidence_mask(Cycle((t,)))
    return Family(ground, mask)


def union_size_pie(n: int, k: int, anchors: AnchorSpec | Sequence[Cycle]) -> int:
    """|union of anchored families| by inclusion-exclusion, from Stirling numbers alone.

    Valid only for anchors with pairwise disjoint supports: then the members
    containing every anchor in V are counted by [n - sum |N(b_v)|, k - |V|].
    """
    if not isinstance(anchors, AnchorSpec):
        anchors = AnchorSpec(tuple(anchors))
    s = len(anchors)
    if s == 0:
        return 0
    if s > MAX_PIE_ANCHORS:
        raise InvalidInputError(f"at most {MAX_PIE_ANCHORS} anchors supported, got {s}")
    for b in anchors.anchors:
        _check_cycle_on(n, b)
    if not anchors.disjoint_supports:
        raise InvalidInputError("inclusion-exclusion formula requires pairwise disjoint anchor supports")
    lengths = [len(b) for b in anchors.anchors]
    total = 0
    for size in range(1, s + 1):
        sign = 1 if size % 2 else -1
        for V in combinations(lengths, size):
            m = n - sum(V)
            j = k - size
            if m >= 0:
                total += sign * stirling_unsigned(m, j)
    return total


def enumerated_union_size(ground: SnkEnumeration, anchors: Sequence[Cycle]) -> int:
    mask = 0
    for b in anchors:
        mask |= ground.incidence_mask(b)
    return mask.bit_count()


_ENUM_CACHE: Dict[Tuple[int, int], SnkEnumeration] = {}


def shared_enumeration(n: int, k: int) -> SnkEnumeration:
    """Process-wide cached enumeration (convenience for callers without one)."""
    key = (n, k)
    e = _ENUM_CACHE.get(key)
    if e is None:
        e = SnkEnumeration(n, k)
        _ENUM_CACHE[key] = e
    return e
