"""Exact arithmetic in imaginary quadratic orders and 2x2 matrices over them.

Elements of the ring of integers of Q(sqrt(-d)) are stored in doubled
coordinates so half-integers (d = 3 mod 4) need no rationals.  Matrices
carry one shared positive integer denominator; group elements always
normalize to denominator 1.
"""

from __future__ import annotations

import math
from itertools import product

from bianchi.arith import factorize

__all__ = [
    "Mat2",
    "QuadInt",
    "conj_transpose",
    "coset_rep",
    "enumerate_gamma_elements",
    "field_discriminant",
    "is_in_gamma",
    "omega",
    "parabolic_element",
    "sqrt_minus_d",
]


def field_discriminant(d: int) -> int:
    """-d when d = 3 mod 4, else -4d; requires squarefree d."""
    if d < 1 or not factorize(d).is_squarefree:
        raise ValueError(f"need squarefree d >= 1, got {d}")
    return -d if d % 4 == 3 else -4 * d


class QuadInt:
    """Element (two_x + two_y*sqrt(-d))/2 of the ring of integers of Q(sqrt(-d)).

    Invariants: two_x = two_y mod 2, and both even unless d = 3 mod 4.
    """

    __slots__ = ("two_x", "two_y", "d")

    def __init__(self, two_x: int, two_y: int, d: int):
        if (two_x - two_y) % 2 != 0:
            raise ValueError(f"mixed parity coordinates ({two_x}, {two_y})")
        if d % 4 != 3 and two_x % 2 != 0:
            raise ValueError(
                f"half-integers do not lie in the ring for d={d}"
            )
        self.two_x = two_x
        self.two_y = two_y
        self.d = d

    @classmethod
    def from_parts(cls, x: int, y: int, d: int) -> "QuadInt":
        """The element x + y*sqrt(-d)."""
        return cls(2 * x, 2 * y, d)

    @classmethod
    def from_int(cls, x: int, d: int) -> "QuadInt":
        return cls(2 * x, 0, d)

    @classmethod
    def from_coords(cls, a: int, b: int, d: int) -> "QuadInt":
        """The element a + b*w where w generates the ring over Z."""
        if d % 4 == 3:
            return cls(2 * a + b, b, d)
        return cls(2 * a, 2 * b, d)

    def coords(self) -> tuple[int, int]:
        """Coordinates in the 1, w basis (inverse of from_coords)."""
        if self.d % 4 == 3:
            return ((self.two_x - self.two_y) // 2, self.two_y)
        return (self.two_x // 2, self.two_y // 2)

    def __add__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.two_x + other.two_x, self.two_y + other.two_y, self.d)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.two_x - other.two_x, self.two_y - other.two_y, self.d)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.two_x, -self.two_y, self.d)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.two_x * other, self.two_y * other, self.d)
        if isinstance(other, QuadInt):
            x1, y1, x2, y2 = self.two_x, self.two_y, other.two_x, other.two_y
            return QuadInt(
                (x1 * x2 - self.d * y1 * y2) // 2, (x1 * y2 + x2 * y1) // 2, self.d
            )
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> "QuadInt":
        return QuadInt(self.two_x, -self.two_y, self.d)

    def norm(self) -> int:
        """|z|^2, always a nonnegative rational integer on ring elements."""
        n4 = self.two_x * self.two_x + self.d * self.two_y * self.two_y
        assert n4 % 4 == 0
        return n4 // 4

    def double_real(self) -> int:
        """2*Re(z), always a rational integer."""
        return self.two_x

    @property
    def is_zero(self) -> bool:
        return self.two_x == 0 and self.two_y == 0

    @property
    def is_rational(self) -> bool:
        return self.two_y == 0

    def to_int(self) -> int:
        if self.two_y != 0 or self.two_x % 2 != 0:
            raise ValueError(f"{self!r} is not a rational integer")
        return self.two_x // 2

    def divisible_by_int(self, k: int) -> bool:
        """Whether z/k still lies in the ring of integers."""
        if k == 0:
            return self.is_zero
        k = abs(k)
        if self.two_x % k or self.two_y % k:
            return False
        tx, ty = self.two_x // k, self.two_y // k
        if (tx - ty) % 2:
            return False
        return self.d % 4 == 3 or tx % 2 == 0

    def div_int(self, k: int) -> "QuadInt":
        if not self.divisible_by_int(k):
            raise ValueError(f"{self!r} not divisible by {k}")
        return QuadInt(self.two_x // k, self.two_y // k, self.d)

    def exact_div(self, other: "QuadInt") -> "QuadInt | None":
        """self/other when it lies in the ring, else None."""
        n = other.norm()
        if n == 0:
            return None
        z = self * other.conj()
        return z.div_int(n) if z.divisible_by_int(n) else None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuadInt)
            and self.two_x == other.two_x
            and self.two_y == other.two_y
            and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash((self.two_x, self.two_y, self.d))

    def __repr__(self) -> str:
        return f"QuadInt({self.two_x}, {self.two_y}, d={self.d})/2"

    def __str__(self) -> str:
        if self.two_x % 2 == 0 and self.two_y % 2 == 0:
            return f"{self.two_x // 2}{self.two_y // 2:+}*sqrt(-{self.d})"
        return f"({self.two_x}{self.two_y:+}*sqrt(-{self.d}))/2"


def omega(d: int) -> QuadInt:
    """Generator of the ring of integers over Z."""
    if d % 4 == 3:
        return QuadInt(1, 1, d)
    return QuadInt(0, 2, d)


def sqrt_minus_d(d: int) -> QuadInt:
    return QuadInt(0, 2, d)


def coordinate_box(d: int, height: int):
    """All ring elements with both w-basis coordinates in [-height, height].

    Deterministic order; the zero element comes first.
    """
    yield QuadInt(0, 0, d)
    seen = {(0, 0)}
    for b in range(-height, height + 1):
        for a in range(-height, height + 1):
            if (a, b) not in seen:
                seen.add((a, b))
                yield QuadInt.from_coords(a, b, d)


class Mat2:
    """2x2 matrix over Q(sqrt(-d)): ring-integer entries over one denominator.

    Entries are stored as given; equality, hashing and key() identify M
    with -M (canonical sign: first nonzero doubled coordinate positive in
    row-major scan order), so the class doubles as a projective element.
    """

    __slots__ = ("e11", "e12", "e21", "e22", "den", "d")

    def __init__(self, e11: QuadInt, e12: QuadInt, e21: QuadInt, e22: QuadInt, den: int = 1):
        if den < 1:
            raise ValueError(f"denominator must be positive, got {den}")
        d = e11.d
        if not (e12.d == d and e21.d == d and e22.d == d):
            raise ValueError("mixed fields in matrix entries")
        self.e11, self.e12, self.e21, self.e22 = e11, e12, e21, e22
        self.den = den
        self.d = d

    @classmethod
    def identity(cls, d: int) -> "Mat2":
        one = QuadInt.from_int(1, d)
        zero = QuadInt(0, 0, d)
        return cls(one, zero, zero, one)

    @classmethod
    def from_ints(cls, rows: list[list[int]], d: int) -> "Mat2":
        q = [QuadInt.from_int(v, d) for row in rows for v in row]
        return cls(*q)

    def entries(self) -> tuple[QuadInt, QuadInt, QuadInt, QuadInt]:
        return (self.e11, self.e12, self.e21, self.e22)

    def __mul__(self, other: "Mat2") -> "Mat2":
        a, b, c, e = self.entries()
        f, g, h, k = other.entries()
        m = Mat2(
            a * f + b * h,
            a * g + b * k,
            c * f + e * h,
            c * g + e * k,
            self.den * other.den,
        )
        return m.normalized() if m.den != 1 else m

    def normalized(self) -> "Mat2":
        """Divide entries and denominator by the largest common content."""
        if self.den == 1:
            return self
        g = self.den
        for z in self.entries():
            g = math.gcd(g, z.two_x, z.two_y)
            if g == 1:
                return self
        while g > 1 and not all(z.divisible_by_int(g) for z in self.entries()):
            g //= [p for p, _ in factorize(g).factors][0]
        if g == 1:
            return self
        return Mat2(*(z.div_int(g) for z in self.entries()), den=self.den // g)

    def conj_transpose(self) -> "Mat2":
        return Mat2(
            self.e11.conj(), self.e21.conj(), self.e12.conj(), self.e22.conj(), self.den
        )

    def transpose(self) -> "Mat2":
        return Mat2(self.e11, self.e21, self.e12, self.e22, self.den)

    def adjugate(self) -> "Mat2":
        return Mat2(self.e22, -self.e12, -self.e21, self.e11, self.den)

    def det_pair(self) -> tuple[QuadInt, int]:
        """Exact determinant as (numerator, denominator**2)."""
        return (self.e11 * self.e22 - self.e12 * self.e21, self.den * self.den)

    def det(self) -> QuadInt:
        num, den2 = self.det_pair()
        if den2 != 1:
            if not num.divisible_by_int(den2):
                raise ValueError("determinant is not a ring integer")
            num = num.div_int(den2)
        return num

    def det_is(self, value: int) -> bool:
        num, den2 = self.det_pair()
        return num == QuadInt.from_int(value * den2, self.d)

    def trace(self) -> QuadInt:
        if self.den != 1:
            raise ValueError("trace of a non-integral matrix")
        return self.e11 + self.e22

    def is_integral(self) -> bool:
        return self.den == 1

    def scaled_congruent_mod_int(self, n: int, sign: int) -> bool:
        # entries of M - sign*Id all divisible by n
        one = QuadInt.from_int(sign, self.d)
        diff = (self.e11 - one, self.e12, self.e21, self.e22 - one)
        return all(z.divisible_by_int(n) for z in diff)

    def congruent_to_pm_identity_mod_int(self, n: int) -> bool:
        return self.scaled_congruent_mod_int(n, 1) or self.scaled_congruent_mod_int(n, -1)

    def congruent_to_pm_identity_mod_gauss(self, pi: QuadInt) -> bool:
        if self.d != 1 or pi.d != 1:
            raise ValueError("Gaussian levels need d = 1")
        for sign in (1, -1):
            one = QuadInt.from_int(sign, self.d)
            diff = (self.e11 - one, self.e12, self.e21, self.e22 - one)
            if all(z.exact_div(pi) is not None for z in diff):
                return True
        return False

    def in_pgl(self) -> bool:
        """Entries in the ring of integers and determinant +-1."""
        return self.den == 1 and (self.det_is(1) or self.det_is(-1))

    def bianchi_coset(self) -> int | None:
        """Squarefree r with M in the coset of coset_rep(d, r), if detectable.

        Returns the unique r < sqrt(|delta|) indexing the extended-group
        coset, or None when M does not land in any coset (e.g. non-integral
        or bad determinant).
        """
        if self.den != 1:
            return None
        delta = abs(field_discriminant(self.d))
        units = [QuadInt.from_int(1, self.d)]
        if self.d == 1:
            units.append(QuadInt.from_parts(0, 1, 1))
        if self.d == 3:
            units.append(QuadInt(1, 1, 3))
            units.append(QuadInt(-1, 1, 3))
        for r in sorted(factorize(delta).divisors()):
            if r * r >= delta and r > 1:
                break
            if not factorize(r).is_squarefree:
                continue
            try:
                sigma = coset_rep(self.d, r)
            except ValueError:
                continue
            y = sigma.adjugate() * self
            # y should be r * unit * (a PGL element)
            for u in units:
                scale = u * r
                scaled = [z.exact_div(scale) for z in y.entries()]
                if all(z is not None for z in scaled):
                    cand = Mat2(*scaled)
                    if cand.in_pgl():
                        return r
        return None

    def key(self) -> tuple:
        """Sign-canonical coordinate tuple; identical for M and -M."""
        coords = []
        for z in self.entries():
            coords.append(z.two_x)
            coords.append(z.two_y)
        for c in coords:
            if c:
                if c < 0:
                    coords = [-v for v in coords]
                break
        return (*coords, self.den)

    def negated(self) -> "Mat2":
        return Mat2(-self.e11, -self.e12, -self.e21, -self.e22, self.den)

    def canonical(self) -> "Mat2":
        """The representative of {M, -M} whose first nonzero coordinate is positive."""
        for z in self.entries():
            for c in (z.two_x, z.two_y):
                if c:
                    return self.negated() if c < 0 else self
        return self

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat2)
            and self.d == other.d
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((self.d, self.key()))

    def __repr__(self) -> str:
        return (
            f"Mat2([[{self.e11}, {self.e12}], [{self.e21}, {self.e22}]]"
            + (f"/{self.den})" if self.den != 1 else ")")
        )


def conj_transpose(m: Mat2) -> Mat2:
    """Entrywise complex conjugate of the transpose."""
    return m.conj_transpose()


def is_in_gamma(m: Mat2, level: int | QuadInt | None = None) -> bool:
    """Membership in PSL(2, O_d), optionally in a principal congruence group.

    With integer level n the matrix must also be +-identity mod n; with a
    Gaussian level pi (d = 1 only) it must be +-identity mod pi.
    """
    if not (m.is_integral() and m.det_is(1)):
        return False
    if level is None:
        return True
    if isinstance(level, QuadInt):
        return m.congruent_to_pm_identity_mod_gauss(level)
    if isinstance(level, int) and level >= 1:
        return m.congruent_to_pm_identity_mod_int(level)
    raise ValueError(f"invalid level spec {level!r}")


def parabolic_element(x: QuadInt, y: QuadInt, t: QuadInt) -> Mat2:
    """The unipotent element [[1 - txy, t y^2], [-t x^2, 1 + txy]].

    Determinant is exactly 1 for any ring elements x, y, t.
    """
    d = x.d
    if y.d != d or t.d != d:
        raise ValueError("mixed fields")
    one = QuadInt.from_int(1, d)
    txy = t * x * y
    return Mat2(one - txy, t * y * y, -(t * x * x), one + txy)


def coset_rep(d: int, r: int) -> Mat2:
    """Integral matrix of determinant r representing an extended-group coset.

    For r dividing d (always odd when d is odd) the representative is
    [[sqrt(-d), r], [v r, u sqrt(-d)]] with -d = r s and u s - v r = 1.
    For d = 1 mod 4 and even r = 2 r0 it is the determinant-2 matrix
    [[1 + sqrt(-d), 2], [(d-1)/2, 1 - sqrt(-d)]] times the representative
    for r0.  In every case det = r exactly.
    """
    delta = abs(field_discriminant(d))
    if r < 1 or delta % r != 0 or not factorize(r).is_squarefree:
        raise ValueError(f"r={r} is not a squarefree divisor of {delta}")
    if r % 2 == 1 or d % 4 != 1:
        if d % r != 0:
            raise ValueError(f"no representative with determinant {r} for d={d}")
        s = -d // r
        u = pow(s, -1, r) if r > 1 else 0
        v = (u * s - 1) // r
        rt = sqrt_minus_d(d)
        return Mat2(
            rt,
            QuadInt.from_int(r, d),
            QuadInt.from_int(v * r, d),
            u * rt,
        )
    # d = 1 mod 4, r = 2 r0: prepend the ramified-prime-2 representative
    r0 = r // 2
    two_part = Mat2(
        QuadInt.from_parts(1, 1, d),
        QuadInt.from_int(2, d),
        QuadInt.from_int((d - 1) // 2, d),
        QuadInt.from_parts(1, -1, d),
    )
    out = two_part * coset_rep(d, r0)
    assert out.det_is(r)
    return out


def _generator_words(d: int, height: int):
    t_mat = Mat2.from_ints([[1, 1], [0, 1]], d)
    zero = QuadInt(0, 0, d)
    one = QuadInt.from_int(1, d)
    tw_mat = Mat2(one, omega(d), zero, one)
    s_mat = Mat2(zero, -one, one, zero)
    gens = (t_mat, tw_mat, s_mat)
    level = [Mat2.identity(d)]
    yield level[0]
    for _ in range(height):
        nxt = []
        for m in level:
            for g in gens:
                nxt.append(m * g)
        level = nxt
        yield from level


def enumerate_gamma_elements(d: int, height: int, generators_only: bool = False):
    """Deterministic, duplicate-free stream of elements of PSL(2, O_d).

    Words of length <= height over the two translations and the inversion,
    then (unless generators_only) all unipotent elements built from ring
    elements with coordinate height <= height.  Sound but not complete:
    exhausting the stream proves nothing.
    """
    if height < 1:
        raise ValueError(f"need height >= 1, got {height}")
    seen: set[tuple] = set()
    for m in _generator_words(d, height):
        k = m.key()
        if k not in seen:
            seen.add(k)
            yield m
    if generators_only:
        return
    box = list(coordinate_box(d, height))
    for t in box:
        if t.is_zero:
            continue
        for x in box:
            for y in box:
                if x.is_zero and y.is_zero:
                    continue
                m = parabolic_element(x, y, t)
                k = m.key()
                if k not in seen:
                    seen.add(k)
                    yield m
