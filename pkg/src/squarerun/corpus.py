"""Input generators and the token file format."""

from __future__ import annotations

import random
from pathlib import Path
from typing import List, Sequence

from .oracle import InputError


class ParseError(ValueError):
    pass


def ternary_thue_morse(k: int) -> List[int]:
    """First k symbols of the square-free ternary Thue-Morse word.

    Built from the binary Prouhet-Thue-Morse sequence (parity of the bit
    count of the index): the gaps between consecutive zeros, minus one.
    """
    if k < 1:
        raise InputError("k must be positive")
    out = []
    prev = 0  # index 0 holds a zero
    i = 1
    while len(out) < k:
        if bin(i).count("1") % 2 == 0:
            out.append(i - prev - 1)
            prev = i
        i += 1
    return out


def random_string(n: int, sigma: int, seed: int) -> List[int]:
    if sigma < 1:
        raise InputError("sigma must be positive")
    if n < 1:
        raise InputError("n must be positive")
    rng = random.Random(seed)
    return [rng.randrange(sigma) for _ in range(n)]


def unary(n: int) -> List[int]:
    if n < 1:
        raise InputError("n must be positive")
    return [0] * n


def periodic(n: int, period: int, seed: int = 0, sigma: int | None = None) -> List[int]:
    """A random block of length ``period`` repeated to length n."""
    if n < 1 or period < 1:
        raise InputError("n and period must be positive")
    block = random_string(period, sigma or period, seed)
    return [block[i % period] for i in range(n)]


def fibonacci_word(n: int) -> List[int]:
    """Prefix of the infinite Fibonacci word over {0, 1}."""
    if n < 1:
        raise InputError("n must be positive")
    a, b = [0], [0, 1]
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def write_tokens(path, tokens: Sequence[int]) -> None:
    Path(path).write_text(" ".join(str(t) for t in tokens) + "\n")


def read_tokens(path, raw: bool = False) -> List[int]:
    """Read a token file; with ``raw`` every byte is one token (a single
    trailing newline is dropped)."""
    data = Path(path).read_bytes()
    if raw:
        if data.endswith(b"\r\n"):
            data = data[:-2]
        elif data.endswith(b"\n"):
            data = data[:-1]
        if not data:
            raise ParseError("line 1: empty file")
        return list(data)
    tokens = []
    for lineno, line in enumerate(data.decode("utf-8", "replace").splitlines(), 1):
        for field in line.split():
            try:
                tokens.append(int(field))
            except ValueError:
                raise ParseError(f"line {lineno}: bad token {field!r}") from None
    if not tokens:
        raise ParseError("line 1: empty file")
    return tokens
