"""squarerun command line: gen, squares, runs, bench."""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from typing import List, Optional, Sequence

from . import corpus
from .adversary import (ALPHABET, SQUARE, QueryLimitReached, adversary_oracle,
                        distinct_count_strategy)
from .corpus import ParseError
from .detector import detect, detect_simple
from .oracle import EqString, InputError, from_symbols
from .primitives import brute_runs, brute_squares, divide_conquer_runs, main_lorentz_square
from .runsengine import compute_runs

SCHEMA = "# squarerun-report v1"
SQUARE_FIELDS = ["algo", "n", "found", "witness_s", "witness_half",
                 "comparisons_negative", "comparisons_merging", "seconds"]
RUNS_FIELDS = ["algo", "n", "runs", "comparisons_negative", "comparisons_merging", "seconds"]
BENCH_FIELDS = ["suite", "algo", "n", "sigma", "seed", "comparisons_negative",
                "comparisons_merging", "per_n", "bound", "ok", "seconds"]
DEFAULT_SEED = 0

# the lower-square suite always includes a cell where the bound is positive
ANCHOR = (65536, 64)


class UsageError(Exception):
    pass


def _emit(fields: Sequence[str], rows: List[dict], out) -> None:
    out.write(SCHEMA + "\n")
    w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)


def _report(fields, rows, csv_path: Optional[str], default) -> None:
    if csv_path:
        with open(csv_path, "w", newline="") as f:
            _emit(fields, rows, f)
    else:
        _emit(fields, rows, default)


def _sizes(text: str) -> List[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            ea, eb = (int(x.split("^")[1]) for x in (a, b))
            out += [2 ** e for e in range(ea, eb + 1)]
        elif part.startswith("2^"):
            out.append(2 ** int(part[2:]))
        else:
            out.append(int(part))
    return out


# -- gen ------------------------------------------------------------------

def cmd_gen(kind: str, n: int, sigma: Optional[int], seed: int, out_path: Optional[str],
            period: Optional[int] = None) -> List[int]:
    if n < 1:
        raise UsageError("--n must be positive")
    if kind == "tm3":
        tokens = corpus.ternary_thue_morse(n)
    elif kind == "random":
        if not sigma or sigma < 1:
            raise UsageError("random needs --sigma >= 1")
        tokens = corpus.random_string(n, sigma, seed)
    elif kind == "unary":
        tokens = corpus.unary(n)
    elif kind == "periodic":
        if not period or period < 1:
            raise UsageError("periodic needs --period >= 1")
        tokens = corpus.periodic(n, period, seed, sigma)
    elif kind == "fib":
        tokens = corpus.fibonacci_word(n)
    else:
        raise UsageError(f"unknown kind {kind!r}")
    if out_path:
        corpus.write_tokens(out_path, tokens)
    else:
        sys.stdout.write(" ".join(map(str, tokens)) + "\n")
    return tokens


# -- squares / runs -------------------------------------------------------

def _load(path: str, raw: bool) -> EqString:
    return from_symbols(corpus.read_tokens(path, raw=raw))


def cmd_squares(in_path: str, algo: str, sigma: Optional[int] = None, raw: bool = False,
                csv_path: Optional[str] = None) -> int:
    if algo == "simple" and sigma is None:
        raise UsageError("--algo simple needs --sigma")
    s = _load(in_path, raw)
    t0 = time.perf_counter()
    if algo == "brute":
        sq = next(iter(brute_squares(s, (1, s.n))), None)
    elif algo == "ml":
        sq = main_lorentz_square(s)
    elif algo == "simple":
        sq = detect_simple(s, sigma)
    elif algo == "phased":
        sq, _ = detect(s)
    else:
        raise UsageError(f"unknown algo {algo!r}")
    dt = time.perf_counter() - t0
    st = s.stats()
    row = dict(algo=algo, n=s.n, found=int(sq is not None),
               witness_s=sq.s if sq else "", witness_half=sq.half if sq else "",
               comparisons_negative=st.negative, comparisons_merging=st.positive_merging,
               seconds=f"{dt:.4f}")
    _report(SQUARE_FIELDS, [row], csv_path, sys.stdout)
    return 1 if sq is not None else 0


def cmd_runs(in_path: str, algo: str, raw: bool = False, csv_path: Optional[str] = None) -> int:
    s = _load(in_path, raw)
    t0 = time.perf_counter()
    if algo == "brute":
        runs = brute_runs(s, (1, s.n))
    elif algo == "dc":
        runs = sorted(divide_conquer_runs(s))
    elif algo == "phased":
        runs = compute_runs(s)
    else:
        raise UsageError(f"unknown algo {algo!r}")
    dt = time.perf_counter() - t0
    for r in runs:
        sys.stdout.write(f"{r.s} {r.e} {r.p}\n")
    st = s.stats()
    row = dict(algo=algo, n=s.n, runs=len(runs), comparisons_negative=st.negative,
               comparisons_merging=st.positive_merging, seconds=f"{dt:.4f}")
    # stdout carries the runs themselves, so the report goes elsewhere
    _report(RUNS_FIELDS, [row], csv_path, sys.stderr)
    return 0


# -- bench ----------------------------------------------------------------

def square_lower_bound(n: int, sigma: int) -> float:
    return n * math.log(sigma) - 3.6 * n


def _upper_input(n: int, sigma: int, seed: int) -> List[int]:
    if sigma == 3:
        return corpus.ternary_thue_morse(n)
    return corpus.random_string(n, sigma, seed)


def _bench_upper(sizes, sigmas, seed) -> List[dict]:
    rows = []
    for sigma in sigmas:
        for n in sizes:
            tokens = _upper_input(n, sigma, seed)
            for algo in ("phased-squares", "phased-runs"):
                s = from_symbols(tokens)
                t0 = time.perf_counter()
                if algo == "phased-squares":
                    detect(s)
                else:
                    compute_runs(s)
                st = s.stats()
                rows.append(dict(suite="upper", algo=algo, n=n, sigma=sigma, seed=seed,
                                 comparisons_negative=st.negative,
                                 comparisons_merging=st.positive_merging,
                                 per_n=f"{st.charged / n:.4f}", bound="", ok=1,
                                 seconds=f"{time.perf_counter() - t0:.3f}"))
    return rows


def _bench_lower_square(sizes, sigmas, seed, anchor=True) -> List[dict]:
    cells = [(n, sg) for sg in sigmas for n in sizes]
    if anchor and ANCHOR not in cells:
        cells.append(ANCHOR)
    rows = []
    for n, sigma in cells:
        bound = square_lower_bound(n, sigma)
        for algo in ("phased", "ml"):
            g = adversary_oracle(SQUARE, n, sigma)
            t0 = time.perf_counter()
            if algo == "phased":
                detect(g.s)
            else:
                main_lorentz_square(g.s)
            st = g.s.stats()
            rows.append(dict(suite="lower-square", algo=algo, n=n, sigma=sigma, seed=seed,
                             comparisons_negative=st.negative,
                             comparisons_merging=st.positive_merging,
                             per_n=f"{st.charged / n:.4f}", bound=f"{bound:.1f}",
                             ok=int(st.charged >= bound),
                             seconds=f"{time.perf_counter() - t0:.3f}"))
    return rows


def ambiguity_horizon(n: int, sigma: int) -> int:
    """Answers the distinct-count strategy gets from the alphabet adversary
    before the large witness drops below n/2 distinct symbols."""
    g = adversary_oracle(ALPHABET, n, sigma)
    g.watch = lambda g: g.large_witness_size() < n / 2
    try:
        distinct_count_strategy(g.s)
    except QueryLimitReached:
        return g.answered - 1
    return g.answered


def _bench_lower_alpha(sizes, sigmas, seed) -> List[dict]:
    rows = []
    for sigma in sigmas:
        for n in sizes:
            t0 = time.perf_counter()
            h = ambiguity_horizon(n, sigma)
            bound = n * sigma / 8
            rows.append(dict(suite="lower-alpha", algo="distinct-count", n=n, sigma=sigma,
                             seed=seed, comparisons_negative=h, comparisons_merging=0,
                             per_n=f"{h / n:.4f}", bound=f"{bound:.1f}", ok=int(h > bound),
                             seconds=f"{time.perf_counter() - t0:.3f}"))
    return rows


DEFAULTS = {
    "upper": ("2^10..2^14", "3"),
    "lower-square": ("4096", "16"),
    "lower-alpha": ("1024", "4"),
}


def cmd_bench(suite: str, sizes: Optional[str], sigmas: Optional[str], seed: int,
              csv_path: Optional[str], anchor: bool = True) -> int:
    if suite not in DEFAULTS:
        raise UsageError(f"unknown suite {suite!r}")
    sz = _sizes(sizes or DEFAULTS[suite][0])
    sg = [int(x) for x in (sigmas or DEFAULTS[suite][1]).split(",")]
    if suite == "upper":
        rows = _bench_upper(sz, sg, seed)
    elif suite == "lower-square":
        rows = _bench_lower_square(sz, sg, seed, anchor)
    else:
        rows = _bench_lower_alpha(sz, sg, seed)
    _report(BENCH_FIELDS, rows, csv_path, sys.stdout)
    bad = [r for r in rows if not r["ok"]]
    for r in bad:
        sys.stderr.write(f"bound violated: {r}\n")
    return 1 if bad else 0


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="squarerun")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="write a token file")
    g.add_argument("kind", choices=["tm3", "random", "unary", "periodic", "fib"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--sigma", type=int)
    g.add_argument("--period", type=int)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--out")

    q = sub.add_parser("squares", help="decide square-freeness")
    q.add_argument("input")
    q.add_argument("--algo", choices=["brute", "ml", "simple", "phased"], default="phased")
    q.add_argument("--sigma", type=int)
    q.add_argument("--raw", action="store_true", help="treat the file as raw bytes")
    q.add_argument("--csv")

    r = sub.add_parser("runs", help="list all runs as 's e p' lines")
    r.add_argument("input")
    r.add_argument("--algo", choices=["brute", "dc", "phased"], default="phased")
    r.add_argument("--raw", action="store_true")
    r.add_argument("--csv")

    b = sub.add_parser("bench", help="comparison-count experiments")
    b.add_argument("--suite", choices=list(DEFAULTS), required=True)
    b.add_argument("--sizes", help="e.g. 1024,4096 or 2^10..2^18")
    b.add_argument("--sigmas", help="comma separated")
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--csv")
    b.add_argument("--no-anchor", dest="anchor", action="store_false",
                   help="skip the n=65536, sigma=64 lower-square cell")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        if a.cmd == "gen":
            cmd_gen(a.kind, a.n, a.sigma, a.seed, a.out, a.period)
            return 0
        if a.cmd == "squares":
            return cmd_squares(a.input, a.algo, a.sigma, a.raw, a.csv)
        if a.cmd == "runs":
            return cmd_runs(a.input, a.algo, a.raw, a.csv)
        return cmd_bench(a.suite, a.sizes, a.sigmas, a.seed, a.csv, a.anchor)
    except (UsageError, InputError, ParseError, OSError) as e:
        sys.stderr.write(f"squarerun: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
