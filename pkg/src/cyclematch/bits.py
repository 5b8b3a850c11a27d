"""Python-int bitset helpers."""

from __future__ import annotations

from typing import Iterable, List


def bits_from_indices(indices: Iterable[int]) -> int:
    idx = list(indices)
    if not idx:
        return 0
    buf = bytearray(max(idx) // 8 + 1)
    for i in idx:
        buf[i >> 3] |= 1 << (i & 7)
    return int.from_bytes(buf, "little")


def indices_from_bits(x: int) -> List[int]:
    """Set bit positions of ``x`` in increasing order."""
    if x < 0:
        raise ValueError("negative bitset")
    if x == 0:
        return []
    if x.bit_count() < 64:
        out = []
        while x:
            low = x & -x
            out.append(low.bit_length() - 1)
            x ^= low
        return out
    s = bin(x)[:1:-1]
    return [i for i, ch in enumerate(s) if ch == "1"]


def lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1
