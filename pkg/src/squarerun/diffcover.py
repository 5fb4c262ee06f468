"""The t-cover D(t): a sparse position sample with a synchronizing offset."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import FrozenSet, List

from .oracle import InputError


@dataclass(frozen=True)
class Cover:
    n: int
    t: int
    r: int
    members: List[int] = field(repr=False)
    _set: FrozenSet[int] = field(repr=False, compare=False)

    def __contains__(self, i: int) -> bool:
        return i in self._set

    def __len__(self) -> int:
        return len(self.members)

    def size_bound(self) -> int:
        # multiples of r, plus r-1 further members per r*r block, counting
        # the partial block that holds 1..r-1
        r = self.r
        return self.n // r + (self.n // (r * r) + 1) * (r - 1)


def is_member(i: int, r: int) -> bool:
    return i % r == 0 or i % (r * r) < r


def cover_positions(lo: int, hi: int, t: int) -> List[int]:
    """Members of D(t) inside [lo, hi], enumerated directly."""
    if t < 4:
        raise InputError("t must be at least 4")
    r = isqrt(t)
    rr = r * r
    out = set(range(lo + (-lo) % r, hi + 1, r))
    base = lo - lo % rr
    while base <= hi:
        out.update(range(max(base, lo), min(base + r - 1, hi) + 1))
        base += rr
    return sorted(out)


def build_cover(n: int, t: int) -> Cover:
    if t < 4:
        raise InputError("t must be at least 4 so that r >= 2")
    if not 1 <= t <= n:
        raise InputError("need 1 <= t <= n")
    members = cover_positions(1, n, t)
    return Cover(n, t, isqrt(t), members, frozenset(members))


def h(cover: Cover, i: int, j: int) -> int:
    """Offset 0 <= h < t with i+h and j+h both in the cover."""
    limit = cover.n - cover.t + 1
    if not (1 <= i <= limit and 1 <= j <= limit):
        raise InputError(f"arguments must lie in 1..{limit}")
    return offset(cover.r, i, j)


def offset(r: int, i: int, j: int) -> int:
    a = (r - i) % r
    b = (r - (j + a) // r) % r
    return a + b * r
