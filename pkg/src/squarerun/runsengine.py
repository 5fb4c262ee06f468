"""All runs of a string via phased factorisations and copying.

Long runs come from the tails of approximate LZ factorisations of block
pairs, short ones from divide and conquer at the end.  Runs hidden
strictly inside a tail are copied afterwards from the tail's earlier
occurrence, scanning positions left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple

from .approxlz import Phrase, SigmaExceeded, factorize_budgeted
from .detector import PhaseConfig, PhaseRecord, PhaseSchedule
from .oracle import EqString
from .primitives import Range, Run, boundary_runs, divide_conquer_runs


class TailRecord(NamedTuple):
    s: int
    e: int
    d: int  # T[s..e] = T[s-d..e-d]


@dataclass
class RunsReport:
    n: int
    phases: List[PhaseRecord] = field(default_factory=list)
    fallback_used: bool = False
    collected: int = 0
    duplicates: int = 0
    copied: int = 0
    tails: int = 0
    comparisons_negative: int = 0
    comparisons_merging: int = 0

    @property
    def charged(self) -> int:
        return self.comparisons_negative + self.comparisons_merging


def long_runs_from_factorization(s: EqString, phrases: Sequence[Phrase], delta: int,
                                 window: Optional[Range] = None
                                 ) -> Tuple[List[Run], List[TailRecord]]:
    """Runs of length >= 8*delta not strictly inside a tail, plus the long tails."""
    x, y = window or (1, s.n)
    n = s.n
    runs: List[Run] = []
    tails: List[TailRecord] = []
    for ph in phrases:
        k = ph.tail_len
        if k < delta:
            continue
        a2, a3 = ph.tail_start, ph.e
        tails.append(TailRecord(a2, a3, a2 - ph.tail_src))
        lo = max(x, a2 - 8 * k)
        hi = min(y, a3 + 4 * k)
        found = boundary_runs(s, (lo, a2 - 1), (a2, hi))
        found += boundary_runs(s, (lo, a3 - 1), (a3, hi))
        for r in found:
            if (r.s == lo and lo > 1) or (r.e == hi and hi < n):
                continue
            runs.append(r)
    return runs, tails


def _radix_dedupe(runs: List[Run], n: int) -> Tuple[List[Run], int]:
    """Sort by (s, e) with two counting passes and drop duplicates."""
    buckets: List[List[Run]] = [[] for _ in range(n + 2)]
    for r in runs:
        buckets[r.e].append(r)
    by_e = [r for b in buckets for r in b]
    buckets = [[] for _ in range(n + 2)]
    for r in by_e:
        buckets[r.s].append(r)
    out: List[Run] = []
    for b in buckets:
        for r in b:
            if out and out[-1].s == r.s and out[-1].e == r.e:
                assert out[-1].p == r.p, f"period mismatch for {r} and {out[-1]}"
                continue
            out.append(r)
    return out, len(runs) - len(out)


def _copy_step(n: int, runs: List[Run], tails: Sequence[TailRecord],
               oracle: Optional[Dict[int, List[Tuple[int, int]]]] = None
               ) -> Tuple[List[Run], int]:
    best_e = [0] * (n + 2)
    best_d = [0] * (n + 2)
    for t in tails:
        for i in range(t.s + 1, t.e):
            if t.e > best_e[i]:
                best_e[i] = t.e
                best_d[i] = t.d
    lists: List[List[Tuple[int, int]]] = [[] for _ in range(n + 2)]
    for r in runs:  # sorted by (s, e)
        lists[r.s].append((r.e, r.p))
    copied = 0
    for i in range(1, n + 1):
        e_star = best_e[i]
        if e_star:
            d = best_d[i]
            own = lists[i]
            merged: List[Tuple[int, int]] = []
            a = 0
            for e0, p in lists[i - d]:
                er = e0 + d
                if er >= e_star:
                    break
                while a < len(own) and own[a][0] < er:
                    merged.append(own[a])
                    a += 1
                if a < len(own) and own[a][0] == er:
                    assert own[a][1] == p, "copied run disagrees on the period"
                    continue
                merged.append((er, p))
                copied += 1
            merged.extend(own[a:])
            lists[i] = merged
        if oracle is not None:
            want = oracle.get(i, [])
            assert lists[i] == want, f"position {i}: have {lists[i]}, want {want}"
    out = [Run(i, e, p) for i in range(1, n + 1) for e, p in lists[i]]
    return out, copied


def _pair_filter(runs: Sequence[Run], window: Range, n: int) -> List[Run]:
    x, y = window
    return [r for r in runs if not ((r.s == x and x > 1) or (r.e == y and y < n))]


def compute_runs_report(s: EqString, config: Optional[PhaseConfig] = None,
                        debug_oracle: Optional[Sequence[Run]] = None
                        ) -> Tuple[List[Run], RunsReport]:
    cfg = config or PhaseConfig()
    n = s.n
    report = RunsReport(n=n)
    neg0, mer0 = s.negative, s.positive_merging
    sched = PhaseSchedule(n)
    collected: List[Run] = []
    tails: List[TailRecord] = []

    def sweep(t, rec):
        for j in range(1, sched.num_pairs(t) + 1):
            rec.processed += 1
            w = sched.span(t, j)
            collected.extend(_pair_filter(divide_conquer_runs(s, w), w, n))

    for t in range(sched.K + 1):
        sig = sched.sigma(t)
        a, b = s.negative, s.positive_merging
        if sig <= cfg.terminal_sigma:
            rec = PhaseRecord(t, sig, "terminal", pairs=sched.num_pairs(t))
            report.phases.append(rec)
            report.fallback_used = True
            sweep(t, rec)
            rec.negative, rec.merging = s.negative - a, s.positive_merging - b
            break
        if sig > n:
            report.phases.append(PhaseRecord(t, sig, "skipped"))
            continue
        delta = sig // 8
        est = cfg.estimate(sig)
        rec = PhaseRecord(t, sig, "factorized", delta=delta, sigma_est=est,
                          pairs=sched.num_pairs(t))
        report.phases.append(rec)
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
            found, tl = long_runs_from_factorization(s, res, delta, window)
            collected.extend(_pair_filter(found, window, n))
            tails.extend(tl)
            for tr in tl:
                sched.deactivate_inside(t + 3, tr.s + 1, tr.e - 1)
        if exceeded:
            rec.kind = "fallback"
            rec.sigma_exceeded = True
            rec.processed = rec.inactive = 0
            rec.active_pairs = []
            report.fallback_used = True
            sweep(t, rec)
            rec.negative, rec.merging = s.negative - a, s.positive_merging - b
            break
        rec.negative, rec.merging = s.negative - a, s.positive_merging - b

    report.collected = len(collected)
    report.tails = len(tails)
    unique, report.duplicates = _radix_dedupe(collected, n)
    oracle = None
    if debug_oracle is not None:
        oracle = {}
        for r in sorted(debug_oracle):
            oracle.setdefault(r.s, []).append((r.e, r.p))
    runs, report.copied = _copy_step(n, unique, tails, oracle)
    report.comparisons_negative = s.negative - neg0
    report.comparisons_merging = s.positive_merging - mer0
    return runs, report


def compute_runs(s: EqString, config: Optional[PhaseConfig] = None) -> List[Run]:
    """Every run of s, sorted by (start, end)."""
    return compute_runs_report(s, config)[0]
