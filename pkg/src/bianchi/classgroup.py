"""Ideal class groups of imaginary quadratic fields via reduced binary forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from bianchi.arith import factorize
from bianchi.quadring import field_discriminant

__all__ = [
    "BQF",
    "ClassGroupData",
    "class_group_structure",
    "compose",
    "field_discriminant",
    "has_order_four_element",
    "reduced_forms",
]


def _solve_mod(a: int, b: int, m: int) -> tuple[int, int]:
    # solutions of a x = b (mod m), returned as (x0, step)
    g = math.gcd(a, m)
    if b % g:
        raise ValueError(f"no solution to {a} x = {b} mod {m}")
    m_g = m // g
    x0 = (b // g) * pow(a // g, -1, m_g) % m_g if m_g > 1 else 0
    return x0, m_g


@dataclass(frozen=True)
class BQF:
    """Primitive positive definite integral binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    @property
    def is_reduced(self) -> bool:
        if not (abs(self.b) <= self.a <= self.c):
            return False
        if abs(self.b) == self.a or self.a == self.c:
            return self.b >= 0
        return True

    def normalized(self) -> "BQF":
        a, b, c = self.a, self.b, self.c
        if -a < b <= a:
            return self
        r = (a - b) // (2 * a)
        return BQF(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced(self) -> "BQF":
        f = self.normalized()
        a, b, c = f.a, f.b, f.c
        while a > c or (a == c and b < 0):
            s = (c + b) // (2 * c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        out = BQF(a, b, c).normalized()
        assert out.is_reduced
        return out

    def inverse(self) -> "BQF":
        return BQF(self.a, -self.b, self.c).reduced()

    @classmethod
    def principal(cls, delta: int) -> "BQF":
        k = delta % 2
        return cls(1, k, (k * k - delta) // 4)

    def __mul__(self, other: "BQF") -> "BQF":
        return compose(self, other)

    def __pow__(self, n: int) -> "BQF":
        out = BQF.principal(self.discriminant)
        base = self
        while n > 0:
            if n & 1:
                out = compose(out, base)
            base = compose(base, base)
            n >>= 1
        return out


def _compose_distinct(f: BQF, g: BQF) -> BQF:
    a1, b1, c1 = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    s = (b2 + b1) // 2
    h = (b2 - b1) // 2
    w = math.gcd(math.gcd(a1, a2), s)
    j, sw, tw, u = w, a1 // w, a2 // w, s // w
    k0, step = _solve_mod(tw * u, h * u + sw * c1, sw * tw)
    n0, _ = _solve_mod(tw * step, h - tw * k0, sw)
    k = k0 + step * n0
    l = (tw * k - h) // sw
    m = (tw * u * k - h * u - sw * c1) // (sw * tw)
    return BQF(sw * tw, j * u - (k * tw + l * sw), k * l - j * m).reduced()


def _compose_square(f: BQF) -> BQF:
    a1, b1, c1 = f.a, f.b, f.c
    if b1 == 0:  # ambiguous form, self-inverse
        return BQF.principal(f.discriminant).reduced()
    w = math.gcd(a1, b1)
    j, sw, u = w, a1 // w, b1 // w
    tw = sw
    k0, step = _solve_mod(tw * u, sw * c1, sw * tw)
    n0, _ = _solve_mod(tw * step, -tw * k0, sw)
    k = k0 + step * n0
    m = (tw * u * k - sw * c1) // (sw * tw)
    l = (tw * m + c1) // u
    return BQF(sw * tw, j * u - (k * tw + l * sw), k * l - j * m).reduced()


def compose(f: BQF, g: BQF) -> BQF:
    """Gauss composition; returns the reduced representative of the product class."""
    if f.discriminant != g.discriminant:
        raise ValueError("cannot compose forms of different discriminants")
    f = f.reduced()
    g = g.reduced()
    if f == g:
        return _compose_square(f)
    return _compose_distinct(f, g)


def reduced_forms(delta: int) -> list[BQF]:
    """All reduced primitive positive definite forms of discriminant delta, sorted."""
    if delta >= 0 or delta % 4 not in (0, 1):
        raise ValueError(f"not a negative discriminant: {delta}")
    out = []
    b = delta % 2
    while b * b <= -delta // 3:
        m4 = b * b - delta
        assert m4 % 4 == 0
        m = m4 // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                for bb in {b, -b}:
                    form = BQF(a, bb, c)
                    if form.is_reduced and form.is_primitive:
                        out.append(form)
            a += 1
        b += 2
    return sorted(out, key=lambda f: (f.a, f.b, f.c))


@dataclass(frozen=True)
class ClassGroupData:
    """Class group of a fundamental discriminant: forms, orders, cyclic factors."""

    discriminant: int
    forms: tuple[BQF, ...]
    order_of: dict
    structure: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.forms)


def _invariant_factors(orders: list[int]) -> tuple[int, ...]:
    """Cyclic decomposition of an abelian group from all element orders.

    For each prime p, counting elements annihilated by p^k gives the
    conjugate of the Sylow partition; zipping the partitions across primes
    yields the invariant factors (descending divisibility chain).
    """
    h = len(orders)
    if h == 1:
        return ()
    parts_by_prime: dict[int, list[int]] = {}
    for p, _ in factorize(h).factors:
        s = [0]
        while True:
            pk = p ** len(s)
            count = sum(1 for o in orders if pk % o == 0)
            sk, c = 0, count
            while c > 1:
                assert c % p == 0, (p, count)
                c //= p
                sk += 1
            if sk == s[-1]:
                break
            s.append(sk)
        lams: list[int] = []
        for k in range(1, len(s)):
            n_parts_ge_k = s[k] - s[k - 1]
            if k == 1:
                lams = [1] * n_parts_ge_k
            else:
                for i in range(n_parts_ge_k):
                    lams[i] += 1
        parts_by_prime[p] = lams
    width = max(len(v) for v in parts_by_prime.values())
    factors = []
    for i in range(width):
        val = 1
        for p, lams in parts_by_prime.items():
            if i < len(lams):
                val *= p ** lams[i]
        factors.append(val)
    return tuple(factors)


@lru_cache(maxsize=4096)
def class_group_structure(d: int, cap: int = 10_000) -> ClassGroupData:
    """Class group of Q(sqrt(-d)) with element orders and invariant factors."""
    delta = field_discriminant(d)
    forms = reduced_forms(delta)
    if len(forms) > cap:
        raise ValueError(f"class number {len(forms)} exceeds cap {cap}")
    identity = BQF.principal(delta).reduced()
    order_of = {}
    for f in forms:
        g, n = f, 1
        while g != identity:
            g = compose(g, f)
            n += 1
            if n > len(forms):
                raise AssertionError(f"order computation diverged for {f}")
        order_of[f] = n
    structure = _invariant_factors([order_of[f] for f in forms])
    assert math.prod(structure) == len(forms)
    return ClassGroupData(delta, tuple(forms), order_of, structure)


def has_order_four_element(d: int) -> bool:
    """Whether the class group of Q(sqrt(-d)) has an element of order 4."""
    data = class_group_structure(d)
    return any(o % 4 == 0 for o in data.order_of.values())
