"""Binary Hermitian forms over imaginary quadratic rings and their circles.

A form (a, B, c) with rational integers a, c and ring element B is the
Hermitian matrix [[a, B], [conj(B), c]]; when a != 0 its zero set on the
boundary sphere is the circle centered at -conj(B)/a of radius sqrt(D)/|a|,
D = |B|^2 - a c.  Every predicate here decides on cross-multiplied
integers; floats never appear outside test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from bianchi.quadring import Mat2, QuadInt, coordinate_box

__all__ = [
    "HermitianForm",
    "circles_intersect",
    "discriminant_bound_check",
    "embed_violation",
    "evaluate",
    "min_represented",
    "pairing",
    "parabolic_trace",
    "stabilizer_test",
    "trace_pair",
    "transform",
]


@dataclass(frozen=True)
class HermitianForm:
    a: int
    b: QuadInt
    c: int

    @property
    def d(self) -> int:
        return self.b.d

    @property
    def discriminant(self) -> int:
        """D = |B|^2 - a c, positive for circles."""
        return self.b.norm() - self.a * self.c

    @property
    def is_primitive(self) -> bool:
        g = math.gcd(self.a, self.c)
        g = math.gcd(g, math.gcd(self.b.two_x, self.b.two_y))
        if g == 0:
            return False
        # an odd common divisor of the doubled coordinates always divides
        # the ring element; only the parity rule can force halving
        while g > 1 and not self.b.divisible_by_int(g):
            g //= 2
        return g == 1

    @classmethod
    def from_ints(cls, a: int, bx: int, by: int, c: int, d: int) -> "HermitianForm":
        """Build from doubled coordinates of B."""
        return cls(a, QuadInt(bx, by, d), c)

    def negate(self) -> "HermitianForm":
        return HermitianForm(-self.a, -self.b, -self.c)

    def matrix(self) -> Mat2:
        return Mat2(
            QuadInt.from_int(self.a, self.d),
            self.b,
            self.b.conj(),
            QuadInt.from_int(self.c, self.d),
        )

    def adjugate_form(self) -> "HermitianForm":
        """The companion [[c, -B], [-conj(B), a]] = -D * inverse."""
        return HermitianForm(self.c, -self.b, self.a)

    def tuple_str(self) -> str:
        return f"{self.d}:{self.a}:{self.b.two_x}:{self.b.two_y}:{self.c}"

    @classmethod
    def parse(cls, text: str) -> "HermitianForm":
        parts = text.split(":")
        if len(parts) != 5:
            raise ValueError(f"expected d:a:Bx:By:c, got {text!r}")
        d, a, bx, by, c = (int(p) for p in parts)
        return cls.from_ints(a, bx, by, c, d)

    def __str__(self) -> str:
        return self.tuple_str()


def evaluate(form: HermitianForm, x: QuadInt, y: QuadInt) -> int:
    """Q(x, y) = a|x|^2 + 2 Re(B x conj(y)) + c|y|^2, a rational integer."""
    return (
        form.a * x.norm()
        + (form.b * x * y.conj()).double_real()
        + form.c * y.norm()
    )


def transform(form: HermitianForm, g: Mat2) -> HermitianForm:
    """The form of the conjugate-transpose action: g* A g.

    Moves the associated circle by g^{-1}; preserves the discriminant
    whenever det g = +-1.  Requires an integral matrix.
    """
    if not g.is_integral():
        raise ValueError("transform needs an integral matrix")
    a_q = QuadInt.from_int(form.a, form.d)
    c_q = QuadInt.from_int(form.c, form.d)
    bq, bqc = form.b, form.b.conj()
    p, q, r, s = g.e11, g.e12, g.e21, g.e22
    pc, qc, rc, sc = p.conj(), q.conj(), r.conj(), s.conj()
    # rows of g* A
    t11 = pc * a_q + rc * bqc
    t12 = pc * bq + rc * c_q
    t21 = qc * a_q + sc * bqc
    t22 = qc * bq + sc * c_q
    new_a = t11 * p + t12 * r
    new_b = t11 * q + t12 * s
    new_c = t21 * q + t22 * s
    return HermitianForm(new_a.to_int(), new_b, new_c.to_int())


def pairing(f: HermitianForm, g: HermitianForm) -> int:
    """Tr(F * adjugate(G)) = a_f c_g + c_f a_g - 2 Re(b_g conj(b_f)), symmetric."""
    return (
        f.a * g.c + f.c * g.a - (g.b * f.b.conj()).double_real()
    )


def _check_pair(f: HermitianForm, g: HermitianForm) -> None:
    if f.d != g.d:
        raise ValueError("forms over different fields")
    if f.discriminant != g.discriminant:
        raise ValueError(
            f"discriminants differ: {f.discriminant} vs {g.discriminant}"
        )


def trace_pair(f: HermitianForm, g: HermitianForm) -> Fraction:
    """Exact Tr(F G^{-1}) for two forms of equal positive discriminant."""
    _check_pair(f, g)
    return Fraction(-pairing(f, g), f.discriminant)


def circles_intersect(f: HermitianForm, g: HermitianForm) -> bool:
    """Strict trace criterion: |Tr(F G^{-1})| < 2; tangency does not count."""
    _check_pair(f, g)
    return abs(pairing(f, g)) < 2 * f.discriminant


def embed_violation(form: HermitianForm, g: Mat2) -> Fraction | None:
    """Trace of (g* A g) A^{-1} when its modulus is below 2, else None.

    A returned value witnesses that the surface of A is not embedded for
    any group containing g.
    """
    moved = transform(form, g)
    num = pairing(moved, form)
    dd = form.discriminant
    if abs(num) < 2 * dd:
        return Fraction(-num, dd)
    return None


def parabolic_trace(
    form: HermitianForm, x: QuadInt, y: QuadInt, t: QuadInt
) -> Fraction:
    """Trace of (g* A g) A^{-1} for the unipotent g built from (x, y, t).

    Computed as 2 - |t|^2 Q(conj(y), conj(x))^2 / D.  The argument order
    (conj(y), conj(x)) is forced by the rank-one trace identity and is
    verified exactly against the direct matrix product in the test suite.
    """
    q = evaluate(form, y.conj(), x.conj())
    return 2 - Fraction(t.norm() * q * q, form.discriminant)


def min_represented(
    form: HermitianForm, search_height: int
) -> tuple[int, tuple[QuadInt, QuadInt]]:
    """Smallest nonzero |Q(x, y)| over the coordinate box, with a witness.

    An upper bound for the true minimum, nonincreasing in the height.
    """
    if not form.is_primitive:
        raise ValueError("form must be primitive")
    best: int | None = None
    witness = None
    box = list(coordinate_box(form.d, search_height))
    for x in box:
        for y in box:
            if x.is_zero and y.is_zero:
                continue
            v = abs(evaluate(form, x, y))
            if v and (best is None or v < best):
                best, witness = v, (x, y)
                if best == 1:
                    return best, witness
    if best is None:
        raise ValueError(f"no nonzero value up to height {search_height}")
    return best, witness


def discriminant_bound_check(form: HermitianForm, search_height: int = 5) -> bool:
    """Necessary embeddedness condition: 4 D <= (min nonzero |Q|)^2.

    False disproves embeddedness; True says the bounded search found no
    obstruction.
    """
    if not form.is_primitive:
        raise ValueError("form must be primitive")
    bound = 4 * form.discriminant
    box = list(coordinate_box(form.d, search_height))
    for x in box:
        for y in box:
            v = evaluate(form, x, y)
            if v and v * v < bound:
                return False
    return True


def stabilizer_test(g: Mat2, form: HermitianForm, reversing: bool) -> bool:
    """Whether g fixes the circle of the form, with the requested orientation.

    Evaluates the three fixing equations exactly (cleared of the 1/a
    denominators); the minus-sign system characterizes elements that swap
    the two sides of the circle.
    """
    if form.a == 0:
        raise ValueError("straight-line forms have no circle stabilizer test")
    if not g.is_integral():
        raise ValueError("stabilizer test needs an integral matrix")
    s = -1 if reversing else 1
    d = form.d
    a_q = QuadInt.from_int(form.a, d)
    b = form.b
    x, y, z, w = g.e11, g.e12, g.e21, g.e22
    dd = form.discriminant
    # a w - B z = s (a conj(x) + conj(B) conj(z))
    lhs1 = a_q * w - b * z
    rhs1 = a_q * x.conj() + b.conj() * z.conj()
    if lhs1 != s * rhs1:
        return False
    # s D conj(z) = -B (a x + B z) + a^2 y + a B w
    lhs2 = s * dd * z.conj()
    rhs2 = -(b * (a_q * x + b * z)) + a_q * a_q * y + a_q * b * w
    if lhs2 != rhs2:
        return False
    # |a x + B z|^2 - D |z|^2 = s a^2
    lhs3 = (a_q * x + b * z).norm() - dd * z.norm()
    return lhs3 == s * form.a * form.a
