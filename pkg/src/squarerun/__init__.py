"""Square and run detection over a general unordered alphabet, counting
equality comparisons."""

from .oracle import ComparisonStats, EqString, InputError, from_symbols
from .primitives import Run, Square, brute_runs, brute_squares, main_lorentz_square
from .detector import detect, detect_simple
from .runsengine import compute_runs

__all__ = [
    "ComparisonStats", "EqString", "InputError", "from_symbols",
    "Run", "Square", "brute_runs", "brute_squares", "main_lorentz_square",
    "detect", "detect_simple", "compute_runs",
]
