"""Equality-only access to a string, with comparison counting.

Every algorithm in the package sees its input through an EqString.  The
only question it can ask is whether two positions hold the same symbol.
Answers are memoized in a union-find structure so that positions already
known to be equal never cost another oracle call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence


class InputError(ValueError):
    """Raised for out-of-range positions, empty inputs and similar misuse."""


@dataclass(frozen=True)
class ComparisonStats:
    total: int
    negative: int
    positive_merging: int
    positive_repeat: int

    @property
    def charged(self) -> int:
        # negative + merging answers: the count the bounds talk about
        return self.negative + self.positive_merging


class EqString:
    """A length-n string reachable only through ``eq(i, j)``, 1-based.

    Either ``tokens`` (a concrete sequence) or ``oracle`` (a callable
    answering equality of two positions) backs the string.  The callable
    form is how the adversaries plug in.
    """

    __slots__ = (
        "n", "_tokens", "_oracle", "_parent", "_size", "_memo",
        "negative", "positive_merging", "positive_repeat",
    )

    def __init__(self, n: int, tokens: Optional[Sequence[int]] = None,
                 oracle: Optional[Callable[[int, int], bool]] = None,
                 memo: bool = True):
        if n < 1:
            raise InputError("string must be non-empty")
        if (tokens is None) == (oracle is None):
            raise InputError("give exactly one of tokens or oracle")
        self.n = n
        # index 0 is padding so positions index directly
        self._tokens = None if tokens is None else [None, *tokens]
        self._oracle = oracle
        self._parent = list(range(n + 1))
        self._size = [1] * (n + 1)
        self._memo = memo
        self.negative = 0
        self.positive_merging = 0
        self.positive_repeat = 0

    def __len__(self) -> int:
        return self.n

    def _find(self, i: int) -> int:
        parent = self._parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def eq(self, i: int, j: int) -> bool:
        n = self.n
        if not (0 < i <= n and 0 < j <= n):
            raise InputError(f"position out of range: ({i}, {j}) for n={n}")
        if i == j:
            self.positive_repeat += 1
            return True
        if self._memo:
            parent = self._parent
            ri = i
            while parent[ri] != ri:
                parent[ri] = parent[parent[ri]]
                ri = parent[ri]
            rj = j
            while parent[rj] != rj:
                parent[rj] = parent[parent[rj]]
                rj = parent[rj]
            if ri == rj:
                self.positive_repeat += 1
                return True
        tok = self._tokens
        same = tok[i] == tok[j] if tok is not None else bool(self._oracle(i, j))
        if not same:
            self.negative += 1
            return False
        self.positive_merging += 1
        if self._memo:
            size = self._size
            if size[ri] < size[rj]:
                ri, rj = rj, ri
            parent[rj] = ri
            size[ri] += size[rj]
        return True

    def same_class(self, i: int, j: int) -> bool:
        """True if i and j are already known equal; costs nothing."""
        return i == j or self._find(i) == self._find(j)

    def stats(self) -> ComparisonStats:
        neg, mer, rep = self.negative, self.positive_merging, self.positive_repeat
        return ComparisonStats(neg + mer + rep, neg, mer, rep)

    @property
    def total(self) -> int:
        return self.negative + self.positive_merging + self.positive_repeat


def from_symbols(symbols: Sequence[int], memo: bool = True) -> EqString:
    symbols = list(symbols)
    if not symbols:
        raise InputError("empty symbol sequence")
    return EqString(len(symbols), tokens=symbols, memo=memo)


def eq(s: EqString, i: int, j: int) -> bool:
    return s.eq(i, j)


def stats(s: EqString) -> ComparisonStats:
    return s.stats()
