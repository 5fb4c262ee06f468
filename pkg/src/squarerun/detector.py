"""Square detection: long squares from a factorisation, the simple
known-alphabet algorithm, and the phased algorithm for unknown alphabets."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .approxlz import Phrase, SigmaExceeded, factorize, factorize_budgeted
from .oracle import EqString, InputError
from .primitives import Range, Square, crossing_square, main_lorentz_square

DEFAULT_BUDGET_C = 4.0
TERMINAL_SIGMA = 256
BUDGET_ENV = "SQUARERUN_BUDGET_C"


def default_budget_c() -> float:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET_C
    try:
        value = float(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV}={raw!r} is not a number") from None
    if value <= 0:
        raise InputError(f"{BUDGET_ENV} must be positive")
    return value


def sigma_tilde(sigma_t: int) -> int:
    """floor(sigma_t^(1/4) / log2 sigma_t), at least 1, in exact integers."""
    e = sigma_t.bit_length() - 1  # sigma_t is a power of two
    if e % 4 == 0:
        return max(1, (1 << (e // 4)) // e)
    return max(1, math.floor(sigma_t ** 0.25 / e))


@dataclass(frozen=True)
class PhaseConfig:
    """Knobs of the phased algorithms.

    ``sigma_est`` replaces the alphabet estimate for a phase (given sigma_t);
    at laptop sizes the default estimate is 1 in every processed phase,
    so tests use it to exercise the factorisation machinery.
    """
    terminal_sigma: int = TERMINAL_SIGMA
    budget_c: float = field(default_factory=default_budget_c)
    sigma_est: Optional[Callable[[int], int]] = None

    def __post_init__(self):
        if self.terminal_sigma < 4:
            raise InputError("terminal_sigma must be at least 4")

    def estimate(self, sigma_t: int) -> int:
        return self.sigma_est(sigma_t) if self.sigma_est else sigma_tilde(sigma_t)


class PhaseSchedule:
    """Phases t = 0..K with sigma_t = 2^(2^(K-t)), blocks of length sigma_t^2."""

    def __init__(self, n: int):
        if n < 1:
            raise InputError("n must be positive")
        self.n = n
        k = 0
        while (1 << (1 << k)) < n:
            k += 1
        self.K = k
        self._marks: Dict[int, bytearray] = {}

    def sigma(self, t: int) -> int:
        return 1 << (1 << (self.K - t))

    def block(self, t: int) -> int:
        return self.sigma(t) ** 2

    def num_blocks(self, t: int) -> int:
        return -(-self.n // self.block(t))

    def num_pairs(self, t: int) -> int:
        return max(1, self.num_blocks(t) - 1)

    def span(self, t: int, j: int) -> Range:
        if self.num_blocks(t) == 1:
            return (1, self.n)
        b = self.block(t)
        return (b * (j - 1) + 1, min(self.n, b * (j + 1)))

    def _mark(self, t: int) -> bytearray:
        if t not in self._marks:
            self._marks[t] = bytearray(self.num_pairs(t) + 1)
        return self._marks[t]

    def marked(self, t: int, j: int) -> bool:
        return t in self._marks and bool(self._marks[t][j])

    def covering(self, t: int, j: int) -> List[int]:
        """Pairs of phase t-1 that contain pair j of phase t."""
        if t == 0:
            return []
        x, y = self.span(t, j)
        j0 = (x - 1) // self.block(t - 1) + 1
        out = []
        for J in (j0 - 1, j0):
            if 1 <= J <= self.num_pairs(t - 1):
                a, b = self.span(t - 1, J)
                if a <= x and y <= b:
                    out.append(J)
        return out

    def is_active(self, t: int, j: int) -> bool:
        if self.marked(t, j):
            return False
        if any(self.marked(t - 1, J) for J in self.covering(t, j)):
            self._mark(t)[j] = 1
            return False
        return True

    def deactivate_inside(self, t: int, a: int, b: int) -> int:
        """Mark every pair of phase t lying inside [a, b]; returns the count."""
        if t > self.K or b < a:
            return 0
        if self.num_blocks(t) == 1:
            return 0
        blk = self.block(t)
        j = max(1, -(-(a - 1) // blk) + 1)
        count = 0
        marks = self._mark(t)
        while j <= self.num_pairs(t):
            x, y = self.span(t, j)
            if y > b:
                break
            if x >= a and not marks[j]:
                marks[j] = 1
                count += 1
            j += 1
        return count


@dataclass
class PhaseRecord:
    t: int
    sigma_t: int
    kind: str  # skipped, factorized, terminal, fallback
    delta: int = 0
    sigma_est: int = 0
    pairs: int = 0
    processed: int = 0
    inactive: int = 0
    negative: int = 0
    merging: int = 0
    sigma_exceeded: bool = False
    active_pairs: List[int] = field(default_factory=list)


@dataclass
class DetectionReport:
    n: int
    phases: List[PhaseRecord] = field(default_factory=list)
    fallback_used: bool = False
    witness: Optional[Square] = None
    comparisons_negative: int = 0
    comparisons_merging: int = 0
    max_deactivations: int = 0
    found: List[Square] = field(default_factory=list)

    @property
    def phases_run(self) -> int:
        return sum(1 for p in self.phases if p.kind != "skipped")

    @property
    def charged(self) -> int:
        return self.comparisons_negative + self.comparisons_merging


def detect_long(s: EqString, phrases: Sequence[Phrase], delta: int,
                window: Optional[Range] = None) -> Optional[Square]:
    """Squares of length >= 8*delta around the long tails of a factorisation."""
    x, y = window or (1, s.n)
    for ph in phrases:
        k = ph.tail_len
        if k < delta:
            continue
        a2, a3 = ph.tail_start, ph.e
        lo = max(x, a2 - 8 * k)
        hi = min(y, a3 + 4 * k - 1)
        sq = crossing_square(s, (lo, a2 - 1), (a2, hi))
        if sq is None and a3 > lo:
            sq = crossing_square(s, (lo, a3 - 1), (a3, hi))
        if sq is not None:
            return sq
    return None


def simple_delta(n: int, sigma: int) -> int:
    if n < 2:
        return 2
    return max(2, math.ceil((sigma * math.log2(n)) ** 2))


def detect_simple(s: EqString, sigma: int, delta: Optional[int] = None) -> Optional[Square]:
    """Known-alphabet detector: Main-Lorentz on block pairs of length 16*delta
    for short squares, one factorisation of the whole string for long ones."""
    if sigma < 1:
        raise InputError("sigma must be positive")
    n = s.n
    delta = delta or simple_delta(n, sigma)
    blk = 8 * delta
    nb = -(-n // blk)
    if nb <= 2:
        sq = main_lorentz_square(s)
        if sq is not None or n < 8 * delta:
            return sq
    else:
        for j in range(1, nb):
            sq = main_lorentz_square(s, (blk * (j - 1) + 1, min(n, blk * (j + 1))))
            if sq is not None:
                return sq
    phrases = factorize(s, (1, n), delta)
    return detect_long(s, phrases, delta, (1, n))


def _sweep(s: EqString, sched: PhaseSchedule, t: int, only_active: bool,
           rec: PhaseRecord, report: DetectionReport, exhaustive: bool) -> Optional[Square]:
    found = None
    for j in range(1, sched.num_pairs(t) + 1):
        if only_active and not sched.is_active(t, j):
            rec.inactive += 1
            continue
        rec.processed += 1
        rec.active_pairs.append(j)
        sq = main_lorentz_square(s, sched.span(t, j))
        if sq is not None:
            report.found.append(sq)
            found = found or sq
            if not exhaustive:
                return sq
    return found


def detect(s: EqString, config: Optional[PhaseConfig] = None,
           exhaustive: bool = False) -> Tuple[Optional[Square], DetectionReport]:
    """Some square of s, or None if s is square-free, without knowing sigma.

    With ``exhaustive`` the phases keep going after a square was found
    (used to audit deactivation); the first square is still returned.
    """
    cfg = config or PhaseConfig()
    n = s.n
    report = DetectionReport(n=n)
    neg0, mer0 = s.negative, s.positive_merging
    sched = PhaseSchedule(n)
    depth = [0] * (n + 2)  # difference array of deactivated fragments
    result: Optional[Square] = None

    def close(rec, a, b):
        rec.negative = s.negative - a
        rec.merging = s.positive_merging - b

    for t in range(sched.K + 1):
        sig = sched.sigma(t)
        a, b = s.negative, s.positive_merging
        if sig <= cfg.terminal_sigma:
            rec = PhaseRecord(t, sig, "terminal", pairs=sched.num_pairs(t))
            report.phases.append(rec)
            report.fallback_used = True
            sq = _sweep(s, sched, t, True, rec, report, exhaustive)
            result = result or sq
            close(rec, a, b)
            break
        if sig > n:
            report.phases.append(PhaseRecord(t, sig, "skipped"))
            continue
        assert sig % 8 == 0
        delta = sig // 8
        est = cfg.estimate(sig)
        rec = PhaseRecord(t, sig, "factorized", delta=delta, sigma_est=est,
                          pairs=sched.num_pairs(t))
        report.phases.append(rec)
        half = math.isqrt(sig)
        exceeded = False
        for j in range(1, sched.num_pairs(t) + 1):
            if not sched.is_active(t, j):
                rec.inactive += 1
                continue
            rec.processed += 1
            rec.active_pairs.append(j)
            window = sched.span(t, j)
            res = factorize_budgeted(s, window, delta, est, cfg.budget_c)
            if isinstance(res, SigmaExceeded):
                exceeded = True
                break
            sq = detect_long(s, res, delta, window)
            if sq is not None:
                report.found.append(sq)
                result = result or sq
                if not exhaustive:
                    break
            for ph in res:
                if ph.tail_len >= delta:
                    sched.deactivate_inside(t + 2, ph.tail_start, ph.e)
                    lo, hi = ph.tail_start + 2 * half, ph.e - 2 * half
                    if lo <= hi:
                        depth[lo] += 1
                        depth[hi + 1] -= 1
        if exceeded:
            rec.sigma_exceeded = True
            rec.kind = "fallback"
            report.fallback_used = True
            rec.active_pairs = []
            rec.processed = rec.inactive = 0
            sq = _sweep(s, sched, t, False, rec, report, exhaustive)
            result = result or sq
            close(rec, a, b)
            break
        close(rec, a, b)
        if result is not None and not exhaustive:
            break
    run = best = 0
    for v in depth:
        run += v
        best = max(best, run)
    report.max_deactivations = best
    report.witness = result
    report.comparisons_negative = s.negative - neg0
    report.comparisons_merging = s.positive_merging - mer0
    return result, report
