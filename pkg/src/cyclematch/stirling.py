"""Unsigned Stirling numbers of the first kind and the alternating-sum bound.

Everything here is exact integer arithmetic.  Inequalities with rational
factors are checked after clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import List, Tuple

from .errors import CapacityError, InvalidInputError

__all__ = [
    "StirlingTable",
    "BoundValue",
    "stirling_unsigned",
    "binomial",
    "emc_bound",
    "threshold_met",
    "check_lemma_ratio_down",
    "check_lemma_ratio_diag",
    "check_alternating_lower_bound",
]


def _extend_rows(rows: List[Tuple[int, ...]], max_n: int) -> None:
    # rows[n][k] for 0 <= k <= n
    if not rows:
        rows.append((1,))
    while len(rows) <= max_n:
        n = len(rows)
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            up_left = prev[k - 1]
            up = prev[k] if k < n else 0
            row[k] = up_left + (n - 1) * up
        rows.append(tuple(row))


class StirlingTable:
    """Eagerly built, immutable triangle of [n k] for 0 <= k <= n <= max_n.

    Queries outside the triangle follow the usual convention and return 0;
    queries with n > max_n raise :class:`CapacityError`.
    """

    __slots__ = ("max_n", "_rows")

    def __init__(self, max_n: int):
        if max_n < 0:
            raise InvalidInputError(f"max_n must be nonnegative, got {max_n}")
        rows: List[Tuple[int, ...]] = []
        _extend_rows(rows, max_n)
        self.max_n = max_n
        self._rows = tuple(rows)

    def __call__(self, n: int, k: int) -> int:
        return self.value(n, k)

    def value(self, n: int, k: int) -> int:
        if k < 0 or n < k:
            return 0
        if n > self.max_n:
            raise CapacityError(f"[{n} {k}] requested from a table built to max_n={self.max_n}")
        return self._rows[n][k]

    def row(self, n: int) -> Tuple[int, ...]:
        if n > self.max_n:
            raise CapacityError(f"row {n} requested from a table built to max_n={self.max_n}")
        return self._rows[n]

    def rows(self):
        return iter(self._rows)


# Full rows are memoized up to _SMALL_N.  Past that a query streams rows
# from the last memoized one, keeping only columns 0..k (column k of row n
# needs only columns k-1, k of row n-1), and only the answer is cached.
_SMALL_N = 256
_SMALL_ROWS: List[Tuple[int, ...]] = []


@lru_cache(maxsize=4096)
def _stream(n: int, k: int) -> int:
    prev = list(_SMALL_ROWS[_SMALL_N][: k + 1])
    prev += [0] * (k + 1 - len(prev))
    for m in range(_SMALL_N + 1, n + 1):
        row = [0] * (k + 1)
        for j in range(1, k + 1):
            row[j] = prev[j - 1] + (m - 1) * prev[j]
        prev = row
    return prev[k]


def stirling_unsigned(n: int, k: int) -> int:
    """Number of permutations of an n-set with exactly k cycles."""
    if n < 0:
        raise InvalidInputError(f"n must be nonnegative, got {n}")
    if k < 0 or n < k:
        return 0
    if not _SMALL_ROWS:
        _extend_rows(_SMALL_ROWS, _SMALL_N)
    if n <= _SMALL_N:
        return _SMALL_ROWS[n][k]
    return _stream(n, k)


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise InvalidInputError(f"n must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _stirling_or_zero(n: int, k: int) -> int:
    # Shifted arguments such as [n-i, k-i] may go negative in both slots.
    if k < 0 or n < k:
        return 0
    return stirling_unsigned(n, k)


@dataclass(frozen=True)
class BoundValue:
    n: int
    k: int
    s: int
    value: int
    terms: Tuple[int, ...]

    @property
    def threshold_met(self) -> bool:
        return threshold_met(self.n, self.k, self.s)


def emc_bound(n: int, k: int, s: int) -> BoundValue:
    """Alternating sum  sum_{i=1..s} (-1)^(i-1) C(s,i) [n-i, k-i].

    ``terms`` holds the signed summands in order i = 1..s.
    """
    if k < 1 or n < k or s < 1:
        raise InvalidInputError(f"emc_bound needs n >= k >= 1 and s >= 1, got n={n}, k={k}, s={s}")
    terms = []
    for i in range(1, s + 1):
        sign = 1 if i % 2 == 1 else -1
        terms.append(sign * comb(s, i) * _stirling_or_zero(n - i, k - i))
    return BoundValue(n, k, s, sum(terms), tuple(terms))


def threshold_met(n: int, k: int, s: int) -> bool:
    """Whether n >= 4 s^2 k^6, the regime where the bound is proven tight."""
    return n >= 4 * s * s * k**6


def check_lemma_ratio_down(n: int, k: int) -> bool:
    """k^2 [n, k+1] >= [n, k]   (hypothesis n >= k+1, k >= 1)."""
    if k < 1 or n < k + 1:
        raise InvalidInputError(f"requires n >= k+1 and k >= 1, got n={n}, k={k}")
    return k * k * stirling_unsigned(n, k + 1) >= stirling_unsigned(n, k)


def check_lemma_ratio_diag(n: int, k: int) -> bool:
    """k^2 [n, k] > n [n-1, k-1]   (hypothesis n >= k+1, k >= 2)."""
    if k < 2 or n < k + 1:
        raise InvalidInputError(f"requires n >= k+1 and k >= 2, got n={n}, k={k}")
    return k * k * stirling_unsigned(n, k) > n * stirling_unsigned(n - 1, k - 1)


def check_alternating_lower_bound(n: int, k: int, s: int) -> bool:
    """emc_bound(n,k,s) >= s [n-1,k-1] - s(s-1)/2 [n-2,k-2]  for n >= s k^2, k >= 3.

    Both sides are doubled to keep the comparison integral.
    """
    if k < 3 or s < 1 or n < s * k * k:
        raise InvalidInputError(f"requires k >= 3, s >= 1, n >= s*k^2, got n={n}, k={k}, s={s}")
    lhs = 2 * emc_bound(n, k, s).value
    rhs = 2 * s * _stirling_or_zero(n - 1, k - 1) - s * (s - 1) * _stirling_or_zero(n - 2, k - 2)
    return lhs >= rhs
