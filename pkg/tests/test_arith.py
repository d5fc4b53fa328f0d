import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bianchi.arith import (
    RepresentabilityConflict,
    factorize,
    is_prime,
    is_rationally_representable,
    is_square_mod_squarefree,
    is_sum_of_two_squares,
    jacobi,
    jacobsthal,
    legendre_ternary_solvable,
    squarefree_part,
)
from conftest import (
    oracle_jacobi,
    oracle_rational_representable,
    oracle_ternary_xy,
    oracle_two_squares,
    seeded_rng,
)


class TestJacobi:
    def test_examples(self):
        assert jacobi(1, 3) == 1
        assert jacobi(3, 13) == 1  # 4*4 = 16 = 3 mod 13
        assert jacobi(2, 15) == 1  # (2/3)(2/5) = (-1)(-1)

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValueError):
            jacobi(3, 4)
        with pytest.raises(ValueError):
            jacobi(3, -5)
        with pytest.raises(ValueError):
            jacobi(3, 0)

    def test_against_residue_table_oracle(self):
        for n in range(1, 200, 2):
            for a in range(-20, 50):
                assert jacobi(a, n) == oracle_jacobi(a, n), (a, n)

    @given(
        a=st.integers(-10**6, 10**6),
        b=st.integers(-10**6, 10**6),
        n=st.integers(0, 10**4),
    )
    @settings(max_examples=300, deadline=None)
    def test_multiplicative_in_top_argument(self, a, b, n):
        n = 2 * n + 1
        assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


class TestFactorize:
    def test_examples(self):
        assert factorize(1).factors == ()
        assert factorize(455).factors == ((5, 1), (7, 1), (13, 1))
        assert factorize(455).omega == 3
        assert factorize(84).factors == ((2, 2), (3, 1), (7, 1))

    def test_reconstructs_and_sorts(self):
        for n in range(1, 4000):
            f = factorize(n)
            prod = 1
            for p, e in f.factors:
                assert is_prime(p)
                assert e >= 1
                prod *= p**e
            assert prod == n
            assert list(f.factors) == sorted(f.factors)

    def test_large_semiprime(self):
        p, q = 1_000_003, 999_983
        assert factorize(p * q).factors == ((q, 1), (p, 1))

    def test_tau(self):
        # tau_0(84) counts divisors, tau_1 sums them
        assert factorize(84).tau(0) == 12
        assert factorize(84).tau(1) == sum(
            t for t in range(1, 85) if 84 % t == 0
        )

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            factorize(0)


class TestSquarefreePart:
    def test_examples(self):
        assert squarefree_part(1) == 1
        assert squarefree_part(12) == 3
        assert squarefree_part(39) == 39

    def test_complement_is_square(self):
        for n in range(1, 20_000):
            m = squarefree_part(n)
            assert n % m == 0
            q = n // m
            assert math.isqrt(q) ** 2 == q
            assert factorize(m).is_squarefree


class TestSquareModSquarefree:
    def test_examples(self):
        assert is_square_mod_squarefree(0, 13) is True
        assert is_square_mod_squarefree(3, 13) is True
        assert is_square_mod_squarefree(2, 5) is False

    def test_zero_residues_count_as_squares(self):
        assert is_square_mod_squarefree(3, 33) is True  # 6^2 = 36 = 3 mod 33
        assert is_square_mod_squarefree(22, 33) is True  # 0 mod 11, 1 mod 3
        assert is_square_mod_squarefree(6, 33) is False  # 0 mod 3, (6/11) = -1

    def test_matches_honest_square_search_when_coprime(self):
        for d in (3, 5, 7, 11, 13, 15, 21, 33, 35):
            squares = {x * x % d for x in range(d)}
            for r in range(d):
                if math.gcd(r, d) == 1:
                    assert is_square_mod_squarefree(r, d) == (r in squares)


class TestLegendreTernary:
    def test_examples(self):
        assert legendre_ternary_solvable(1, 5, -1) is True
        assert legendre_ternary_solvable(1, 13, -3) is False
        assert legendre_ternary_solvable(1, 14, -2) is True

    def test_bounded_search_confirms_insolvable_example(self):
        assert not oracle_ternary_xy(13, 3, 200)

    def test_same_sign_unsolvable(self):
        assert legendre_ternary_solvable(1, 2, 3) is False
        assert legendre_ternary_solvable(-1, -2, -3) is False

    def test_rejects_zero_coefficient(self):
        with pytest.raises(ValueError):
            legendre_ternary_solvable(0, 1, -1)

    def test_against_bounded_search(self):
        # where the bounded oracle finds a solution, the predicate must agree;
        # where the predicate claims solvable, a generous bound must confirm
        rng = seeded_rng("ternary")
        for _ in range(200):
            d = rng.randrange(1, 60)
            r = rng.randrange(1, 60)
            found = oracle_ternary_xy(d, r, 40)
            solvable = legendre_ternary_solvable(1, d, -r)
            if found:
                assert solvable
            else:
                assert not solvable or oracle_ternary_xy(d, r, 400)


class TestRationallyRepresentable:
    def test_examples(self):
        for d in (1, 2, 3, 7, 13, 33):
            assert is_rationally_representable(1, d) is True
        assert is_rationally_representable(3, 13) is False
        assert is_rationally_representable(2, 14) is True

    def test_bounded_denominator_search_agrees(self):
        rng = seeded_rng("repr")
        for _ in range(150):
            d = rng.randrange(1, 40)
            r = rng.randrange(1, 40)
            if math.gcd(r, d) > 1 or not factorize(d).is_squarefree:
                continue
            got = is_rationally_representable(r, d)
            if oracle_rational_representable(r, d, 60):
                assert got
            elif got:
                assert oracle_rational_representable(r, d, 600)

    def test_routes_agree_when_coprime(self):
        # full cross-oracle equivalence in the coprime regime
        squarefree_d = [
            d for d in range(1, 200) if factorize(d).is_squarefree
        ]
        for d in squarefree_d:
            for r in range(1, 200):
                if math.gcd(r, d) == 1:
                    is_rationally_representable(r, d)  # must not raise

    def test_criterion_false_implies_ternary_false(self):
        # the sound direction holds unconditionally
        for d in (6, 15, 21, 30, 33, 35, 105):
            for r in range(1, 120):
                criterion = is_square_mod_squarefree(
                    r, d
                ) and is_square_mod_squarefree(-d, squarefree_part(r))
                if not criterion:
                    assert not legendre_ternary_solvable(1, d, -r), (r, d)

    def test_shared_prime_conflict_is_surfaced(self):
        # 3 = 6^2 mod 33 is a square and -33 = 0 mod 3 passes the residue
        # criterion, yet x^2 + 33 y^2 = 3 z^2 is 3-adically insolvable
        with pytest.raises(RepresentabilityConflict):
            is_rationally_representable(3, 33)
        assert not oracle_rational_representable(3, 33, 300)


class TestSumOfTwoSquares:
    def test_examples(self):
        assert is_sum_of_two_squares(1) is True
        assert is_sum_of_two_squares(21) is False
        assert is_sum_of_two_squares(325) is True

    def test_against_search_oracle(self):
        for n in range(1, 100_000):
            got = is_sum_of_two_squares(n)
            if n < 5000:
                assert got == oracle_two_squares(n), n
            elif got:
                assert oracle_two_squares(n), n


class TestJacobsthal:
    def test_examples(self):
        assert jacobsthal(1) == 1
        assert jacobsthal(2) == 2
        assert jacobsthal(6) == 4

    def test_brute_window_check(self):
        for n in range(1, 80):
            j = jacobsthal(n)
            # every window of length j contains a coprime integer
            for start in range(2 * n):
                assert any(
                    math.gcd(start + k, n) == 1 for k in range(j)
                ), (n, j, start)
            # some window of length j-1 does not
            if j > 1:
                assert any(
                    all(math.gcd(start + k, n) != 1 for k in range(j - 1))
                    for start in range(2 * n)
                ), (n, j)

    def test_cap(self):
        with pytest.raises(ValueError):
            jacobsthal(10**7, search_cap=10**6)
