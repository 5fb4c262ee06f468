"""Shared oracles written independently of the library (numpy, direct
definitions) so that agreement with them means something."""

import numpy as np
import pytest

from squarerun.corpus import fibonacci_word, periodic, random_string, ternary_thue_morse


def _streaks(mask: np.ndarray):
    """(start, length) of maximal True stretches."""
    if not mask.any():
        return []
    padded = np.concatenate(([False], mask, [False]))
    d = np.diff(padded.astype(np.int8))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1)
    return list(zip(starts.tolist(), (ends - starts).tolist()))


def _all_streaks(a: np.ndarray):
    """Maximal stretches of T[i] == T[i+p] for every p <= n/2 at once.

    Returns arrays (p, start, length), 0-based starts, rows in increasing p.
    """
    n = len(a)
    half = n // 2
    if half == 0:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z
    ps = np.arange(1, half + 1, dtype=np.int32)[:, None]
    j = np.arange(n, dtype=np.int32)[None, :] + ps
    valid = j < n
    eq = (a[None, :] == a[np.minimum(j, n - 1)]) & valid
    d = np.diff(np.pad(eq, ((0, 0), (1, 1))).astype(np.int8), axis=1)
    st = np.argwhere(d == 1)
    en = np.argwhere(d == -1)
    return st[:, 0] + 1, st[:, 1], en[:, 1] - st[:, 1]


def _streaks_loop(a: np.ndarray):
    out_p, out_s, out_l = [], [], []
    n = len(a)
    for p in range(1, n // 2 + 1):
        for s, length in _streaks(a[:-p] == a[p:]):
            out_p.append(p)
            out_s.append(s)
            out_l.append(length)
    return np.array(out_p, dtype=np.int64), np.array(out_s, dtype=np.int64), np.array(out_l, dtype=np.int64)


def np_has_square(tokens) -> bool:
    a = np.asarray(tokens)
    n = len(a)
    # most random strings have a short square; look there first
    for p in range(1, min(n // 2, 8) + 1):
        for _, length in _streaks(a[:-p] == a[p:]):
            if length >= p:
                return True
    if n <= 4096:
        p, _, length = _all_streaks(a)
        return bool((length >= p).any())
    for p in range(1, n // 2 + 1):
        for _, length in _streaks(a[:-p] == a[p:]):
            if length >= p:
                return True
    return False


def np_runs(tokens):
    """All runs as (s, e, p), 1-based: maximal period-p stretches of length
    >= 2p, keeping the smallest p for each (s, e)."""
    a = np.asarray(tokens)
    n = len(a)
    p, st, length = _all_streaks(a) if n <= 4096 else _streaks_loop(a)
    keep = length >= p
    p, st, length = p[keep], st[keep], length[keep]
    s = st + 1
    e = st + length + p
    order = np.lexsort((p, e, s))
    s, e, p = s[order], e[order], p[order]
    first = np.ones(len(s), dtype=bool)
    first[1:] = (s[1:] != s[:-1]) | (e[1:] != e[:-1])
    return list(zip(s[first].tolist(), e[first].tolist(), p[first].tolist()))


def text(word: str):
    return [ord(c) for c in word]


def structured_corpus(max_n=1024):
    """Named token lists with known shape: square-free, periodic, Fibonacci."""
    out = []
    for n in (1, 2, 7, 64, 255, 256, 1024):
        if n <= max_n:
            out.append((f"tm3-{n}", ternary_thue_morse(n)))
    for n in (1, 8, 100):
        out.append((f"unary-{n}", [0] * n))
    for n in (13, 233, 987):
        if n <= max_n:
            out.append((f"fib-{n}", fibonacci_word(n)))
    for n, p in ((64, 3), (300, 7), (1024, 33)):
        if n <= max_n:
            out.append((f"periodic-{n}-{p}", periodic(n, p, seed=n, sigma=4)))
    # long planted squares in otherwise square-poor text
    for n, l in ((256, 40), (1024, 200)):
        if n <= max_n:
            base = ternary_thue_morse(n)
            w = random_string(l, 64, n)
            mid = n // 3
            out.append((f"planted-{n}-{l}", base[:mid] + [x + 3 for x in w * 2] + base[mid:n - 2 * l]))
    return out


@pytest.fixture(scope="session")
def corpus_small():
    return structured_corpus(1024)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[0][1:])):
            terminalreporter.write_line(line)
