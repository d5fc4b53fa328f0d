"""Shared brute-force oracles and generators for the test suite.

Oracles here are deliberately independent of the library code paths they
check: residue tables, bounded searches and float geometry only.
"""

from __future__ import annotations

import math
import random

from bianchi.arith import factorize


def oracle_legendre(a: int, p: int) -> int:
    """Legendre symbol by exhaustive residue table (odd prime p)."""
    a %= p
    if a == 0:
        return 0
    squares = {x * x % p for x in range(1, p)}
    return 1 if a in squares else -1


def oracle_jacobi(a: int, n: int) -> int:
    out = 1
    for p, e in factorize(n).factors:
        out *= oracle_legendre(a, p) ** e
    return out


def oracle_two_squares(n: int) -> bool:
    for a in range(math.isqrt(n) + 1):
        if math.isqrt(n - a * a) ** 2 == n - a * a:
            return True
    return False


def oracle_ternary_xy(d: int, r: int, bound: int) -> bool:
    """Bounded search for x^2 + d y^2 = r z^2 with z <= bound."""
    for z in range(1, bound + 1):
        target = r * z * z
        y = 0
        while d * y * y <= target:
            rest = target - d * y * y
            if math.isqrt(rest) ** 2 == rest:
                return True
            y += 1
    return False


def oracle_rational_representable(r: int, d: int, qmax: int) -> bool:
    """Bounded denominator search for r = alpha^2 + d beta^2 over Q."""
    return oracle_ternary_xy(d, r, qmax)


def seeded_rng(tag: str) -> random.Random:
    return random.Random(f"bianchi-tests:{tag}")
