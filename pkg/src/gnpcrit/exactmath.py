"""Exact integer floors/ceilings of the irrational thresholds used throughout.

Scale thresholds like floor(A * n^(2/3)) mix a binary-float multiplier with a
fractional power of n.  Floats are exact binary rationals, so every such
threshold reduces to an integer root extraction that can be decided with
exact big-integer comparisons; naive double evaluation can floor the wrong
way at perfect powers (e.g. 2 * (10^6)^(2/3) = 20000 exactly).
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "floor_root",
    "floor_mul_npow",
    "ceil_root",
    "ceil_div",
]


def floor_root(value: Fraction, r: int) -> int:
    """Largest integer k >= 0 with k**r <= value (value >= 0, r >= 1)."""
    if value < 0:
        raise ValueError("value must be >= 0")
    if r < 1:
        raise ValueError("root order must be >= 1")
    k = int(float(value) ** (1.0 / r)) if value > 0 else 0
    if k < 0:
        k = 0
    while k**r > value:
        k -= 1
    while (k + 1) ** r <= value:
        k += 1
    return k


def ceil_root(value: Fraction, r: int) -> int:
    """Smallest integer k >= 0 with k**r >= value."""
    k = floor_root(value, r)
    return k if k**r == value else k + 1


def floor_mul_npow(mult: float, n: int, num: int, den: int) -> int:
    """Exact floor(mult * n^(num/den)) for mult >= 0 and integer n >= 0.

    k <= mult * n^(num/den) iff k^den <= mult^den * n^num, decided in exact
    rational arithmetic (mult enters as its exact binary-rational value).
    """
    if mult < 0:
        raise ValueError("multiplier must be >= 0")
    if n < 0:
        raise ValueError("n must be >= 0")
    m = Fraction(mult)
    return floor_root(m**den * Fraction(n) ** num, den)


def ceil_div(a: int, b: int) -> int:
    """Exact ceil(a / b) for positive integers."""
    return -(-a // b)


def icbrt_ceil(n: int) -> int:
    """Smallest integer k with k^3 >= n; the default walk barrier ceil(n^(1/3))."""
    return ceil_root(Fraction(n), 3)


def isqrt_floor(n: int) -> int:
    return math.isqrt(n)
