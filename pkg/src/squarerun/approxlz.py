"""Delta-approximate LZ factorisation and the exact factorisation oracles.

A phrase is a head of fewer than Delta symbols followed by a tail that
occurs earlier, and it reaches at least one short of where the exact LZ
phrase starting at the same position would end.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .diffcover import cover_positions
from .oracle import EqString, InputError
from .primitives import Range, _z_array, _z_match
from .sst import BudgetExceeded, CapExceeded, build_sparse, src_len_labels


class Phrase(NamedTuple):
    s: int
    e: int
    head_len: int
    tail_src: Optional[int]

    @property
    def tail_start(self) -> int:
        return self.s + self.head_len

    @property
    def tail_len(self) -> int:
        return self.e - self.s - self.head_len + 1


class SigmaExceeded(NamedTuple):
    """The alphabet estimate was too small: degree cap or budget was hit."""
    reason: str
    negatives: int


class Violation(NamedTuple):
    index: int
    kind: str
    detail: str


class Validation(NamedTuple):
    ok: bool
    violation: Optional[Violation]

    def __bool__(self) -> bool:
        return self.ok


# -- exact oracles ----------------------------------------------------------

def longest_previous_factor(s: EqString, p: int, lo: int, hi: int) -> int:
    """max over lo <= q < p of the common extension of q and p inside [lo, hi]."""
    eq = s.eq
    best = 0
    cap = hi - p + 1
    for q in range(lo, p):
        k = 0
        while k < cap and eq(q + k, p + k):
            k += 1
        if k > best:
            best = k
            if best == cap:
                break
    return best


def lz_phrase_end(s: EqString, p: int, lo: int, hi: int) -> int:
    return min(p + longest_previous_factor(s, p, lo, hi), hi)


def exact_lz(s: EqString, rng: Optional[Range] = None) -> List[Tuple[int, int]]:
    """LZ phrases: T[s..e-1] occurs at least twice in T[lo..e-1], e maximal."""
    lo, hi = rng or (1, s.n)
    out = []
    p = lo
    while p <= hi:
        e = lz_phrase_end(s, p, lo, hi)
        out.append((p, e))
        p = e + 1
    return out


def f_factorization(s: EqString, rng: Optional[Range] = None) -> List[Tuple[int, int]]:
    """Factors are fresh single symbols or longest earlier-occurring fragments."""
    lo, hi = rng or (1, s.n)
    out = []
    p = lo
    while p <= hi:
        l = longest_previous_factor(s, p, lo, hi)
        e = p + max(l, 1) - 1
        out.append((p, e))
        p = e + 1
    return out


# -- approximate factorisation ---------------------------------------------

def _sample(lo: int, hi: int, delta: int) -> List[int]:
    if delta < 4:
        # the cover needs t >= 4; sampling everything keeps the offset < delta
        return list(range(lo, hi + 1))
    return cover_positions(lo, hi, delta)


def _check_params(s: EqString, rng: Range, delta: int) -> Tuple[int, int]:
    lo, hi = rng
    if not (1 <= lo <= hi <= s.n):
        raise InputError(f"bad range {rng}")
    if delta < 2:
        raise InputError("delta must be at least 2")
    return lo, hi


def _greedy(lo: int, hi: int, delta: int, samples: List[int],
            labels) -> List[Phrase]:
    phrases = []
    p = lo
    while p <= hi:
        best = None
        reach = p + delta - 1  # the candidate must end beyond this
        a = bisect_left(samples, p)
        while a < len(samples) and samples[a] < p + delta:
            i = samples[a]
            lab = labels.get(i)
            if lab is not None and lab[1] > 0 and i + lab[1] > reach:
                if best is None or i + lab[1] > best[0] + best[1][1]:
                    best = (i, lab)
            a += 1
        if best is not None:
            i, (src, length) = best
            e = min(i + length - 1, hi)
            phrases.append(Phrase(p, e, i - p, src))
            p = e + 1
        else:
            e = min(p + delta - 2, hi)
            phrases.append(Phrase(p, e, e - p + 1, None))
            p = e + 1
    return phrases


def factorize(s: EqString, rng: Optional[Range], delta: int,
              sigma_cap: Optional[int] = None, neg_budget: Optional[int] = None
              ) -> List[Phrase]:
    """A Delta-approximate LZ factorisation of the range.

    Raises CapExceeded or BudgetExceeded when the optional limits are hit.
    """
    lo, hi = _check_params(s, rng or (1, s.n), delta)
    samples = _sample(lo, hi, delta)
    if not samples:
        # short window between cover positions: head-only phrases
        return _greedy(lo, hi, delta, samples, {})
    r = 1 if delta < 4 else math.isqrt(delta)
    tree = build_sparse(s, samples, sigma_cap=sigma_cap, end=hi, neg_budget=neg_budget,
                        cover_r=r)
    labels = src_len_labels(tree)
    return _greedy(lo, hi, delta, samples, labels)


def budget(m: int, delta: int, sigma_est: int, c: float) -> int:
    return math.ceil(c * m * sigma_est * math.log2(m + 1) / math.sqrt(delta))


def factorize_budgeted(s: EqString, rng: Optional[Range], delta: int, sigma_est: int,
                       budget_c: float):
    """factorize under a degree cap and a negative-comparison budget.

    Returns a phrase list, or SigmaExceeded when the string turned out to
    use more than ``sigma_est`` symbols (or the budget ran out).
    """
    lo, hi = _check_params(s, rng or (1, s.n), delta)
    if sigma_est < 1:
        raise InputError("sigma_est must be positive")
    neg0 = s.negative
    try:
        return factorize(s, (lo, hi), delta, sigma_cap=sigma_est,
                         neg_budget=budget(hi - lo + 1, delta, sigma_est, budget_c))
    except CapExceeded:
        return SigmaExceeded("degree", s.negative - neg0)
    except BudgetExceeded:
        return SigmaExceeded("budget", s.negative - neg0)


# -- validation -------------------------------------------------------------

def _occurs_before(s: EqString, lo: int, start: int, length: int) -> bool:
    """Does T[start..start+length) also start somewhere in [lo, start)?"""
    if start == lo:
        return False
    eq = s.eq
    zp = _z_array(eq, start, 1, length)
    tlen = start - lo + length - 1
    res = _z_match(eq, lo, 1, tlen, start, 1, length, zp, start - lo)
    return any(v == length for v in res)


def validate_delta_lz(s: EqString, phrases: Sequence[Phrase], delta: int,
                      rng: Optional[Range] = None) -> Validation:
    """Check cover, head length, tail occurrence and the LZ-length condition."""
    if not phrases:
        ok = rng is None or rng[1] < rng[0]
        return Validation(ok, None if ok else Violation(0, "cover", "no phrases"))
    lo, hi = rng or (phrases[0].s, phrases[-1].e)

    def bad(k, kind, detail):
        return Validation(False, Violation(k, kind, detail))

    eq = s.eq
    expect = lo
    for k, ph in enumerate(phrases):
        if ph.s != expect or ph.e < ph.s or ph.e > hi:
            return bad(k, "cover", f"phrase {ph} does not continue at {expect}")
        expect = ph.e + 1
        if not 0 <= ph.head_len < delta or ph.head_len > ph.e - ph.s + 1:
            return bad(k, "head", f"head length {ph.head_len}")
        a2, tl = ph.tail_start, ph.tail_len
        if tl == 0:
            if ph.tail_src is not None:
                return bad(k, "tail", "empty tail with a source")
        else:
            src = ph.tail_src
            if src is None or not lo <= src < a2:
                return bad(k, "tail", f"tail source {src} not before {a2}")
            if not all(eq(src + j, a2 + j) for j in range(tl)):
                return bad(k, "tail", f"T[{src}..] does not match the tail")
        # e' - 1 <= e fails iff e <= hi - 2 and T[s..e+1] occurs earlier
        if ph.e < hi - 1 and _occurs_before(s, lo, ph.s, ph.e - ph.s + 2):
            return bad(k, "LZ-length", f"T[{ph.s}..{ph.e + 1}] occurs earlier")
    if expect != hi + 1:
        return bad(len(phrases), "cover", f"phrases stop at {expect - 1}, not {hi}")
    return Validation(True, None)
