"""Exact scalar number theory kernels used by every other module.

Everything here is pure, deterministic and runs on plain Python integers;
no floating point appears in any result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Factorization",
    "RepresentabilityConflict",
    "factorize",
    "is_prime",
    "is_rationally_representable",
    "is_square_mod_squarefree",
    "is_sum_of_two_squares",
    "jacobi",
    "jacobsthal",
    "legendre_ternary_solvable",
    "squarefree_part",
]


class RepresentabilityConflict(ArithmeticError):
    """The residue criterion and the ternary-form route disagreed.

    Possible only when gcd(r, d) > 1: the residue criterion counts a zero
    residue as a square and can then overclaim representability.  The
    conflict is surfaced instead of being silently resolved.
    """


def _sieve_primes(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(flags[p * p :: p]))
    return [i for i in range(limit + 1) if flags[i]]


_SMALL_PRIMES = _sieve_primes(10_000)

# strong-pseudoprime witness set, deterministic below 2**64
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


def is_prime(n: int) -> bool:
    """Deterministic primality test, valid for 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's cycle variant with a deterministic parameter sweep.
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


@dataclass(frozen=True)
class Factorization:
    """Complete prime factorization of a positive integer."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    @property
    def squarefree_part(self) -> int:
        out = 1
        for p, e in self.factors:
            if e % 2:
                out *= p
        return out

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def tau(self, x: int = 0) -> int:
        """Divisor power sum: sum of t**x over positive divisors t of n."""
        out = 1
        for p, e in self.factors:
            out *= sum(p ** (x * j) for j in range(e + 1))
        return out

    def divisors(self) -> list[int]:
        out = [1]
        for p, e in self.factors:
            out = [q * p**j for q in out for j in range(e + 1)]
        return sorted(out)


def _factor_into(n: int, acc: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    g = _pollard_rho(n)
    _factor_into(g, acc)
    _factor_into(n // g, acc)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Prime factorization of n >= 1, deterministic, exact below 2**64."""
    if n < 1:
        raise ValueError(f"factorize wants n >= 1, got {n}")
    m = n
    acc: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            acc[p] = acc.get(p, 0) + 1
            m //= p
    if m > 1:
        _factor_into(m, acc)
    return Factorization(n, tuple(sorted(acc.items())))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; 0 iff gcd(a, n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor m of n >= 1 with n/m a perfect square."""
    if n < 1:
        raise ValueError(f"squarefree_part wants n >= 1, got {n}")
    return factorize(n).squarefree_part


def is_square_mod_squarefree(r: int, d: int) -> bool:
    """True iff r is a square modulo the squarefree d.

    Zero residues count as squares, and every residue is a square mod 2,
    so the test is: jacobi(r, p) != -1 for every odd prime p dividing d.
    """
    if d < 1:
        raise ValueError(f"need positive squarefree d, got {d}")
    for p, _ in factorize(d).factors:
        if p != 2 and jacobi(r, p) == -1:
            return False
    return True


def _strip_square(n: int) -> int:
    return -squarefree_part(-n) if n < 0 else squarefree_part(n)


def legendre_ternary_solvable(a: int, b: int, c: int) -> bool:
    """Whether a x^2 + b y^2 + c z^2 = 0 has a nontrivial integer solution.

    Reduces to the pairwise-coprime squarefree normal form, then applies
    the classical quadratic-residue conditions.
    """
    if a == 0 or b == 0 or c == 0:
        raise ValueError("coefficients must be nonzero")
    v = [_strip_square(a), _strip_square(b), _strip_square(c)]
    # cancel shared prime content pairwise; |abc| drops each round
    reduced = True
    while reduced:
        reduced = False
        for i, j in ((0, 1), (0, 2), (1, 2)):
            g = math.gcd(v[i], v[j])
            if g > 1:
                k = 3 - i - j
                v[i] //= g
                v[j] //= g
                v[k] = _strip_square(v[k] * g)
                reduced = True
    if v[0] > 0 and v[1] > 0 and v[2] > 0:
        return False
    if v[0] < 0 and v[1] < 0 and v[2] < 0:
        return False
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        if not is_square_mod_squarefree(-v[i] * v[j], abs(v[k])):
            return False
    return True


def is_rationally_representable(r: int, d: int) -> bool:
    """True iff r = alpha^2 + d*beta^2 for some rational alpha, beta.

    Computed two ways: solvability of x^2 + d y^2 - r z^2 = 0, and the
    residue criterion (r a square mod d, and -d a square mod the squarefree
    part of r).  The two must agree; a mismatch raises
    RepresentabilityConflict, which can only happen when gcd(r, d) > 1.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    if d < 1 or not factorize(d).is_squarefree:
        raise ValueError(f"need squarefree d >= 1, got {d}")
    ternary = legendre_ternary_solvable(1, d, -r)
    criterion = is_square_mod_squarefree(r, d) and is_square_mod_squarefree(
        -d, squarefree_part(r)
    )
    if ternary != criterion:
        raise RepresentabilityConflict(
            f"r={r}, d={d}: ternary route says {ternary}, "
            f"residue criterion says {criterion}"
        )
    return ternary


def is_sum_of_two_squares(n: int) -> bool:
    """Whether n >= 1 is a^2 + b^2 (a or b may be zero).

    Holds iff every prime congruent to 3 mod 4 divides n to an even power.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return all(e % 2 == 0 for p, e in factorize(n).factors if p % 4 == 3)


def jacobsthal(n: int, search_cap: int = 1_000_000) -> int:
    """Smallest m such that every m consecutive integers contain one coprime to n.

    Brute force over one full period; diagnostic use only, so n above
    search_cap is rejected.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n > search_cap:
        raise ValueError(f"period {n} exceeds search cap {search_cap}")
    coprime = [r for r in range(n) if math.gcd(r, n) == 1]
    if len(coprime) == n:
        return 1
    # largest circular run of non-coprime residues, plus one
    worst = 0
    for prev, nxt in zip(coprime, coprime[1:]):
        worst = max(worst, nxt - prev - 1)
    wrap = (coprime[0] + n) - coprime[-1] - 1
    return max(worst, wrap) + 1
