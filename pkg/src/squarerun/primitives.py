"""Comparison-based building blocks: LCE, prefix tables, Main-Lorentz.

Ranges are 1-based inclusive ``(lo, hi)`` pairs.  Positions in returned
squares and runs are absolute positions of the underlying EqString, while
maximality is judged with the range treated as a standalone string.
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional, Tuple

from .oracle import EqString, InputError

Range = Tuple[int, int]


class Run(NamedTuple):
    s: int
    e: int
    p: int


class Square(NamedTuple):
    s: int
    half: int


def _check_range(s: EqString, rng: Range, allow_empty: bool = False) -> Tuple[int, int]:
    lo, hi = rng
    if not (1 <= lo and hi <= s.n):
        raise InputError(f"range {rng} outside 1..{s.n}")
    if hi < lo and not (allow_empty and hi == lo - 1):
        raise InputError(f"empty or reversed range {rng}")
    return lo, hi


# -- prefix tables --------------------------------------------------------
#
# Sequences are arithmetic walks over positions: element k sits at
# start + step*k with step = +1 (forward) or -1 (reversed).

def _z_array(eq, start: int, step: int, m: int) -> List[int]:
    """Z-array of the walk: z[k] = lcp(seq[k:], seq)."""
    z = [0] * m
    if m == 0:
        return z
    z[0] = m
    l = r = 0
    for k in range(1, m):
        length = 0
        if k < r:
            zk = z[k - l]
            if zk < r - k:
                z[k] = zk
                continue
            if zk > r - k:
                # seq[r] differs from seq[r-l] = seq[r-k]; no comparison needed
                z[k] = r - k
                continue
            length = r - k
        a = start + step * (k + length)
        b = start + step * length
        while k + length < m and eq(a, b):
            length += 1
            a += step
            b += step
        z[k] = length
        l, r = k, k + length
    return z


def _z_match(eq, tstart: int, tstep: int, tlen: int,
             pstart: int, pstep: int, plen: int, zp: List[int], need: int) -> List[int]:
    """res[k] = lcp(text[k:], pattern) for k < need, given the pattern's Z-array."""
    res = [0] * need
    l = r = 0
    for k in range(need):
        length = 0
        if k < r:
            zk = zp[k - l]
            if zk < r - k:
                res[k] = zk
                continue
            if zk > r - k:
                res[k] = r - k
                continue
            length = r - k
        a = tstart + tstep * (k + length)
        b = pstart + pstep * length
        while length < plen and k + length < tlen and eq(a, b):
            length += 1
            a += tstep
            b += pstep
        res[k] = length
        if k + length > r:
            l, r = k, k + length
    return res


def prefix_table(s: EqString, rng: Range) -> List[int]:
    """Entry k is the longest common prefix of T[lo+k..hi] and T[lo..hi]."""
    lo, hi = _check_range(s, rng)
    return _z_array(s.eq, lo, 1, hi - lo + 1)


def lce(s: EqString, i: int, j: int, limit: Optional[int] = None) -> int:
    """Longest common extension of positions i and j (optionally capped)."""
    n = s.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise InputError(f"position out of range: ({i}, {j})")
    bound = n - max(i, j) + 1
    if limit is not None:
        bound = min(bound, limit)
    if i == j:
        return bound
    eq = s.eq
    k = 0
    while k < bound and eq(i + k, j + k):
        k += 1
    return k


# -- crossing tests -------------------------------------------------------

def _split(s: EqString, x_range: Range, y_range: Range) -> Tuple[int, int, int]:
    lo, a = x_range
    b, hi = y_range
    if b != a + 1:
        raise InputError(f"ranges {x_range} and {y_range} are not adjacent")
    if lo < 1 or hi > s.n or lo > a or b > hi:
        raise InputError(f"bad ranges {x_range}, {y_range}")
    return lo, a, hi


def _left_tables(eq, lo: int, a: int, hi: int):
    """Tables for periods whose window ends at the boundary."""
    X, Y = a - lo + 1, hi - a
    zy = _z_array(eq, a + 1, 1, Y)
    pref = _z_match(eq, lo, 1, hi - lo + 1, a + 1, 1, Y, zy, X)
    zrx = _z_array(eq, a, -1, X)
    return zy, pref, zrx


def _right_suffixes(eq, lo: int, a: int, hi: int, zrx: List[int]) -> List[int]:
    X, Y = a - lo + 1, hi - a
    return _z_match(eq, hi, -1, hi - lo + 1, a, -1, X, zrx, Y)


def crossing_square(s: EqString, x_range: Range, y_range: Range) -> Optional[Square]:
    """Some square of xy that is neither inside x nor inside y, or None."""
    lo, a, hi = _split(s, x_range, y_range)
    eq = s.eq
    X, Y = a - lo + 1, hi - a
    zy, pref, zrx = _left_tables(eq, lo, a, hi)
    for p in range(1, X + 1):
        pr = pref[X - p]
        if pr == 0:
            continue
        sf = zrx[p] if p < X else 0
        if pr + sf >= p:
            start = a - p + 1 - sf
            return Square(max(start, a + 2 - 2 * p), p)
    suf = _right_suffixes(eq, lo, a, hi, zrx)
    for p in range(1, Y + 1):
        sf = suf[Y - p]
        if sf == 0:
            continue
        pr = zy[p] if p < Y else 0
        if pr + sf >= p:
            start = a + 1 - sf
            return Square(max(start, a + 2 - 2 * p), p)
    return None


def boundary_runs(s: EqString, x_range: Range, y_range: Range) -> List[Run]:
    """All runs of xy containing the last position of x or the first of y."""
    lo, a, hi = _split(s, x_range, y_range)
    eq = s.eq
    X, Y = a - lo + 1, hi - a
    zy, pref, zrx = _left_tables(eq, lo, a, hi)
    suf = _right_suffixes(eq, lo, a, hi, zrx)
    seen: Dict[Tuple[int, int], int] = {}
    for p in range(1, X + 1):
        pr = pref[X - p]
        sf = zrx[p] if p < X else 0
        if pr + sf >= p:
            st = a - p + 1 - sf
            en = a + pr
            if st + (en - st + 1) // 2 <= a + 1 and (st, en) not in seen:
                seen[(st, en)] = p
    for p in range(1, Y + 1):
        sf = suf[Y - p]
        pr = zy[p] if p < Y else 0
        if pr + sf >= p:
            st = a + 1 - sf
            en = a + p + pr
            if st + (en - st + 1) // 2 > a + 1 and (st, en) not in seen:
                seen[(st, en)] = p
    return [Run(st, en, p) for (st, en), p in seen.items()]


# -- divide and conquer ---------------------------------------------------

def main_lorentz_square(s: EqString, rng: Optional[Range] = None) -> Optional[Square]:
    """Some square inside the range, or None if the range is square-free."""
    lo, hi = _check_range(s, rng or (1, s.n))

    def rec(lo: int, hi: int) -> Optional[Square]:
        if hi - lo < 1:
            return None
        mid = lo + (hi - lo + 1) // 2 - 1
        return (rec(lo, mid) or rec(mid + 1, hi)
                or crossing_square(s, (lo, mid), (mid + 1, hi)))

    return rec(lo, hi)


def divide_conquer_runs(s: EqString, rng: Optional[Range] = None) -> List[Run]:
    """All runs of the range, treated as a standalone string."""
    lo, hi = _check_range(s, rng or (1, s.n))

    def rec(lo: int, hi: int) -> List[Run]:
        if hi - lo < 1:
            return []
        mid = lo + (hi - lo + 1) // 2 - 1
        out = [r for r in rec(lo, mid) if r.e < mid]
        out += [r for r in rec(mid + 1, hi) if r.s > mid + 1]
        out += boundary_runs(s, (lo, mid), (mid + 1, hi))
        return out

    return rec(lo, hi)


# -- brute-force oracles --------------------------------------------------

def brute_squares(s: EqString, rng: Optional[Range] = None) -> List[Square]:
    """Every square occurrence in the range, by definition scan."""
    lo, hi = _check_range(s, rng or (1, s.n))
    eq = s.eq
    out = []
    for half in range(1, (hi - lo + 1) // 2 + 1):
        # streak[i]: how many k >= i in a row have T[k] = T[k+half]
        streak = 0
        starts = []
        for i in range(hi - half, lo - 1, -1):
            streak = streak + 1 if eq(i, i + half) else 0
            if streak >= half:
                starts.append(i)
        out.extend(Square(i, half) for i in reversed(starts))
    out.sort()
    return out


def brute_runs(s: EqString, rng: Optional[Range] = None) -> List[Run]:
    """Every run of the range, by definition scan over all periods."""
    lo, hi = _check_range(s, rng or (1, s.n))
    eq = s.eq
    seen: Dict[Tuple[int, int], int] = {}
    for p in range(1, (hi - lo + 1) // 2 + 1):
        i = lo
        while i + p <= hi:
            j = i
            while j + p <= hi and eq(j, j + p):
                j += 1
            if j - i >= p and (i, j - 1 + p) not in seen:
                seen[(i, j - 1 + p)] = p
            i = j + 1
    return sorted(Run(st, en, p) for (st, en), p in seen.items())


def smallest_period(s: EqString, rng: Optional[Range] = None) -> int:
    lo, hi = _check_range(s, rng or (1, s.n))
    eq = s.eq
    for p in range(1, hi - lo + 1):
        if all(eq(k, k + p) for k in range(lo, hi - p + 1)):
            return p
    return hi - lo + 1


def is_square(s: EqString, sq: Square) -> bool:
    """Direct scan check of a square witness."""
    st, half = sq
    if half < 1 or st < 1 or st + 2 * half - 1 > s.n:
        return False
    return all(s.eq(st + k, st + half + k) for k in range(half))
