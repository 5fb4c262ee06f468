"""Adversaries that answer equality queries so as to keep the algorithm
uncertain, plus the string reductions used for the factorisation bounds.

The adversary keeps a conflict graph: an edge for every "no" it gave and a
partial colouring.  It answers "yes" exactly when both positions already
carry the same colour.  A node gets a colour once its degree reaches a
threshold, which is what forces an algorithm to spend many comparisons.
"""

from __future__ import annotations

import math
import random
from array import array
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

from .corpus import ternary_thue_morse
from .oracle import EqString, InputError

ALPHABET = "alphabet"
SQUARE = "square"


class QueryLimitReached(Exception):
    """The adversary was configured to stop after a fixed number of answers."""


class WitnessUnavailable(Exception):
    pass


class ConflictGraph:
    def __init__(self, mode: str, n: int, sigma: int, query_limit: Optional[int] = None):
        if mode == ALPHABET:
            if not 2 <= sigma < n / 2:
                raise InputError("alphabet mode needs 2 <= sigma < n/2")
            self.threshold = sigma - 1
        elif mode == SQUARE:
            if sigma < 8 or sigma > n or sigma % 4:
                raise InputError("square mode needs 8 <= sigma <= n and 4 | sigma")
            self.threshold = sigma // 4
        else:
            raise InputError(f"unknown mode {mode!r}")
        self.mode = mode
        self.n = n
        self.sigma = sigma
        self.query_limit = query_limit
        # called after every answer; returning True stops the run
        self.watch = None
        self._ncolored = 0
        self._used: Set[int] = set()
        self.color = array("i", [-1]) * (n + 1)
        # distinct neighbours, kept only while a node is uncoloured
        self.nbrs: Dict[int, Set[int]] = {}
        self.queries = array("i")
        self.answers = bytearray()
        self.block = sigma // 4 if mode == SQUARE else 0
        self._block_colors: Dict[int, Set[int]] = {}
        if mode == SQUARE:
            seps = ternary_thue_morse(-(-n // self.block))
            for k, c in enumerate(seps):
                self.color[1 + k * self.block] = c
                self._ncolored += 1
                self._used.add(c)
        self.s = EqString(n, oracle=self.answer)

    # -- answering --------------------------------------------------------

    def answer(self, i: int, j: int) -> bool:
        if self.query_limit is not None and len(self.answers) >= self.query_limit:
            raise QueryLimitReached(len(self.answers))
        ci, cj = self.color[i], self.color[j]
        yes = ci >= 0 and ci == cj
        self.queries.append(i)
        self.queries.append(j)
        self.answers.append(1 if yes else 0)
        if not yes:
            self._add_edge(i, j)
        if self.watch is not None and self.watch(self):
            raise QueryLimitReached(len(self.answers))
        return yes

    def _add_edge(self, i: int, j: int) -> None:
        color = self.color
        for a, b in ((i, j), (j, i)):
            if color[a] < 0:
                nb = self.nbrs.setdefault(a, set())
                nb.add(b)
        for a in (i, j):
            if color[a] < 0 and len(self.nbrs.get(a, ())) >= self.threshold:
                self._color_node(a)

    def _block_of(self, i: int) -> int:
        return (i - 1) // self.block

    def _admissible(self, i: int, avoid: Set[int]) -> int:
        if self.mode == ALPHABET:
            palette = range(self.sigma)
        else:
            palette = range(3, self.sigma)
            used = self._block_colors.get(self._block_of(i), set())
            avoid = avoid | used
            assert self.sigma - 3 - len(avoid) >= 1, "no admissible colour left"
        for c in palette:
            if c not in avoid:
                return c
        raise AssertionError("no admissible colour left")

    def _color_node(self, i: int) -> None:
        nb = self.nbrs.pop(i, set())
        avoid = {self.color[v] for v in nb if self.color[v] >= 0}
        c = self._admissible(i, avoid)
        self.color[i] = c
        self._ncolored += 1
        self._used.add(c)
        if self.mode == SQUARE:
            self._block_colors.setdefault(self._block_of(i), set()).add(c)

    # -- inspection -------------------------------------------------------

    @property
    def answered(self) -> int:
        return len(self.answers)

    def transcript(self) -> Iterator[Tuple[int, int, bool]]:
        q = self.queries
        for k, a in enumerate(self.answers):
            yield q[2 * k], q[2 * k + 1], bool(a)

    def colored(self) -> List[int]:
        return [i for i in range(1, self.n + 1) if self.color[i] >= 0]

    def uncolored(self) -> List[int]:
        return [i for i in range(1, self.n + 1) if self.color[i] < 0]

    def large_witness_size(self) -> int:
        """Distinct symbols in the fresh-colour completion."""
        return len(self._used) + self.n - self._ncolored

    def dump_transcript(self, path: str) -> None:
        with open(path, "w") as f:
            for i, j, a in self.transcript():
                f.write(f"{i} {j} {int(a)}\n")

    def neighbors(self, i: int) -> Set[int]:
        return self.nbrs.get(i, set())

    def edge(self, i: int, j: int) -> bool:
        """Known inequality between an uncoloured node and any node."""
        if self.color[i] < 0:
            return j in self.nbrs.get(i, ())
        if self.color[j] < 0:
            return i in self.nbrs.get(j, ())
        raise InputError("edges between two coloured nodes are not kept")

    def _greedy_complete(self, tokens: List[int], palette: Sequence[int],
                         block_distinct: bool) -> List[int]:
        """Colour every still-free node avoiding its neighbours' colours."""
        used: Dict[int, Set[int]] = {}
        if block_distinct:
            for i in range(1, self.n + 1):
                if tokens[i] >= 3:
                    used.setdefault(self._block_of(i), set()).add(tokens[i])
        for i in range(1, self.n + 1):
            if tokens[i] >= 0:
                continue
            avoid = {tokens[v] for v in self.nbrs.get(i, ()) if tokens[v] >= 0}
            if block_distinct:
                avoid |= used.get(self._block_of(i), set())
            c = next(c for c in palette if c not in avoid)
            tokens[i] = c
            if block_distinct:
                used.setdefault(self._block_of(i), set()).add(c)
        return tokens[1:]

    def replay_consistent(self, tokens: Sequence[int]) -> bool:
        """Every recorded answer agrees with the equality of ``tokens``."""
        if len(tokens) != self.n:
            return False
        for i, j, a in self.transcript():
            if (tokens[i - 1] == tokens[j - 1]) != a:
                return False
        return True


def adversary_oracle(mode: str, n: int, sigma: int,
                     query_limit: Optional[int] = None) -> ConflictGraph:
    """A conflict-graph adversary; its EqString is ``g.s``."""
    return ConflictGraph(mode, n, sigma, query_limit)


def witness_small(g: ConflictGraph) -> List[int]:
    """A consistent string over at most sigma symbols."""
    if g.mode != ALPHABET:
        raise InputError("alphabet mode only")
    tokens = list(g.color)
    tokens[0] = 0
    return g._greedy_complete(tokens, range(g.sigma), False)


def witness_large(g: ConflictGraph) -> List[int]:
    """A consistent string with at least n/2 distinct symbols."""
    if g.mode != ALPHABET:
        raise InputError("alphabet mode only")
    if g.answered > g.n * g.sigma // 8:
        raise WitnessUnavailable(f"{g.answered} answers exceed n*sigma/8")
    out = []
    fresh = g.sigma
    for i in range(1, g.n + 1):
        c = g.color[i]
        if c < 0:
            c = fresh
            fresh += 1
        out.append(c)
    return out


def square_free_completion(g: ConflictGraph) -> List[int]:
    """Square mode: a consistent completion with distinct symbols per block."""
    if g.mode != SQUARE:
        raise InputError("square mode only")
    tokens = list(g.color)
    tokens[0] = 0
    return g._greedy_complete(tokens, range(3, g.sigma), True)


def colorless_ranges(g: ConflictGraph) -> List[Tuple[int, int]]:
    out = []
    i = 1
    while i <= g.n:
        if g.color[i] < 0:
            j = i
            while j + 1 <= g.n and g.color[j + 1] < 0:
                j += 1
            out.append((i, j))
            i = j + 1
        else:
            i += 1
    return out


class EliminationBound(NamedTuple):
    required: float
    edges_by_shift: Dict[int, int]
    satisfied: bool


class EnforcedSquare(NamedTuple):
    s: int
    half: int
    tokens: List[int]
    choices: Dict[int, List[int]]  # admissible colours per square column


def required_edges(m: int) -> float:
    return sum((m - 2 * l + 1) / l for l in range(1, m // 2 + 1))


def eliminability_check(g: ConflictGraph, rng: Tuple[int, int]
                        ) -> Union[EliminationBound, EnforcedSquare]:
    """Either every square inside the colourless range has been ruled out by
    an edge (and the edge count meets the lower bound), or a consistent
    string with a square there."""
    if g.mode != SQUARE:
        raise InputError("square mode only")
    lo, hi = rng
    if any(g.color[i] >= 0 for i in range(lo, hi + 1)):
        raise InputError("range must be colourless")
    m = hi - lo + 1
    counts: Dict[int, int] = {}
    for l in range(1, m // 2 + 1):
        has = [g.edge(y, y + l) for y in range(lo, hi - l + 1)]
        counts[l] = sum(has)
        # sliding count of edges (y, y+l) with y in [x, x+l)
        window = sum(has[:l])
        for x in range(lo, hi - 2 * l + 2):
            if window == 0:
                return _enforce(g, x, l)
            window -= has[x - lo]
            if x - lo + l < len(has):
                window += has[x - lo + l]
    req = required_edges(m)
    ok = all(counts[l] >= (m - 2 * l + 1) / l for l in counts)
    return EliminationBound(req, counts, ok)


def _enforce(g: ConflictGraph, x: int, l: int) -> EnforcedSquare:
    tokens = list(g.color)
    tokens[0] = 0
    choices: Dict[int, List[int]] = {}
    for k in range(l):
        a, b = x + k, x + l + k
        avoid = {tokens[v] for v in g.neighbors(a) | g.neighbors(b) if tokens[v] >= 0}
        options = [c for c in range(g.sigma) if c not in avoid]
        assert options, "no colour can enforce the square"
        choices[k] = options
        tokens[a] = tokens[b] = options[0]
    done = g._greedy_complete(tokens, range(g.sigma), False)
    return EnforcedSquare(x, l, done, choices)


# -- query strategies ---------------------------------------------------------

def sequential_strategy(s: EqString) -> None:
    """Compare every pair at distance 1, then 2, and so on."""
    for d in range(1, s.n):
        for i in range(1, s.n - d + 1):
            s.eq(i, i + d)


def random_strategy(s: EqString, seed: int = 0) -> None:
    rng = random.Random(seed)
    while True:
        i, j = rng.randint(1, s.n), rng.randint(1, s.n)
        if i != j:
            s.eq(i, j)


def distinct_count_strategy(s: EqString) -> int:
    """Count distinct symbols by comparing each position with one
    representative per class found so far."""
    reps: List[int] = []
    for i in range(1, s.n + 1):
        if not any(s.eq(r, i) for r in reps):
            reps.append(i)
    return len(reps)


# -- reductions -----------------------------------------------------------------

def reduction_double(tokens: Sequence[int]) -> List[int]:
    return [t for t in tokens for _ in range(2)]


def reduction_separator(tokens: Sequence[int]) -> List[int]:
    sep = max(tokens, default=-1) + 1
    out = []
    for t in tokens:
        out += [t, t, sep]
    return out
