import math

import pytest

from bianchi.arith import (
    factorize,
    is_rationally_representable,
    is_square_mod_squarefree,
    squarefree_part,
)
from bianchi.sieve import (
    candidate_discriminants,
    dset,
    dset_nonempty_witness,
    exceptional_verdict,
    member_weight,
    nonresidue_primes,
    scan_empty,
    weight_sum,
)
from bianchi.tables import load_tables
from conftest import oracle_rational_representable

SMALL_SCAN_100 = [
    1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 17, 19, 21, 23, 26, 30, 31, 33, 34, 35,
    39, 41, 42, 47, 51, 55, 59, 66, 69, 71, 79, 87, 95,
]


class TestDset:
    def test_examples(self):
        assert dset(5).members == ()
        rec = dset(13)
        assert rec.members == (3,)
        assert rec.weight_sum == 2
        assert rec.first_witness == 3
        assert dset(14).members == ()

    def test_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            dset(12)

    def test_members_match_arith_predicates(self):
        # the fast table route must agree with the reference predicates
        for d in range(1, 300):
            if not factorize(d).is_squarefree:
                continue
            members = set(dset(d).members)
            for r in range(1, (d - 1) // 4 + 1):
                expect = is_square_mod_squarefree(r, d) and not (
                    is_square_mod_squarefree(r, d)
                    and is_square_mod_squarefree(-d, squarefree_part(r))
                )
                assert (r in members) == expect, (d, r)

    def test_members_are_genuinely_unrepresentable(self):
        # criterion members always agree with the ternary route and with a
        # bounded rational search
        for d in range(1, 120):
            if not factorize(d).is_squarefree:
                continue
            for r in dset(d).members:
                assert is_rationally_representable(r, d) is False
                assert not oracle_rational_representable(r, d, 50)

    def test_witness_is_minimum(self):
        for d in (13, 22, 37, 58, 101, 193):
            rec = dset(d)
            w = dset_nonempty_witness(d)
            if rec.members:
                assert w == min(rec.members)
            else:
                assert w is None


class TestWeights:
    def test_example_d13(self):
        assert weight_sum(13) == 2

    def test_empty_set_weight_zero(self):
        for d in (5, 14, 21):
            assert weight_sum(d) == 0

    def test_weight_bounds(self):
        for d in range(1, 400):
            if not factorize(d).is_squarefree:
                continue
            rec = dset(d)
            omega = factorize(d).omega
            assert rec.weight_sum >= len(rec.members)
            assert rec.weight_sum <= 2**omega * len(rec.members)

    def test_member_weight_closed_form(self):
        # weight = 2^(omega(d) - omega(gcd(d, r))) for odd d
        for d in (13, 15, 21, 105, 195):
            for r in range(1, d // 4 + 1):
                if not is_square_mod_squarefree(r, d):
                    continue
                omega_d = factorize(d).omega
                omega_g = factorize(math.gcd(d, r)).omega if math.gcd(d, r) > 1 else 0
                assert member_weight(d, r) == 2 ** (omega_d - omega_g), (d, r)


class TestScan:
    def test_scan_100(self):
        assert scan_empty(100) == SMALL_SCAN_100

    def test_matches_tables_to_500(self):
        expect = sorted(x for x in load_tables().all_d if x <= 500)
        assert scan_empty(500) == expect

    def test_worker_determinism(self):
        assert scan_empty(400, workers=2) == scan_empty(400)

    def test_checkpoint_resume(self, tmp_path):
        cp = tmp_path / "scan.csv"
        full = scan_empty(300, checkpoint=cp)
        lines_after_first = cp.read_text().splitlines()
        again = scan_empty(300, checkpoint=cp)
        assert again == full
        assert cp.read_text().splitlines() == lines_after_first
        # partial checkpoint: keep half the rows, rescan, same answer
        half = lines_after_first[: len(lines_after_first) // 2]
        cp.write_text("\n".join(half) + "\n")
        assert scan_empty(300, checkpoint=cp) == full

    def test_corrupt_checkpoint(self, tmp_path):
        cp = tmp_path / "scan.csv"
        cp.write_text("13,bogus,3\n")
        with pytest.raises(ValueError):
            scan_empty(100, checkpoint=cp)


class TestVerdict:
    def test_examples(self):
        assert exceptional_verdict(21)["verdict"] == "NoClosedEmbedded"
        assert exceptional_verdict(14)["verdict"] == "Unknown"
        assert exceptional_verdict(13)["verdict"] == "Unknown"


class TestCandidates:
    def test_huge_threshold_prunes(self):
        assert len(candidate_discriminants(13, 1e9)) == 0

    def test_monotone_in_threshold(self):
        a = candidate_discriminants(30, 1.0)
        b = candidate_discriminants(30, 2.0)
        assert set(b) <= set(a)

    def test_roughly_linear_for_primes(self):
        counts = {p: len(candidate_discriminants(p)) for p in (101, 211, 401)}
        r1 = counts[211] / counts[101]
        r2 = counts[401] / counts[211]
        assert 1.2 < r1 < 3.5 and 1.2 < r2 < 3.5

    def test_divisor_class_condition(self):
        d = 30
        for D in candidate_discriminants(d, 1.0)[:50]:
            g = math.gcd(d, D)
            assert g * g * math.log(max(2, D // g)) ** 4 / D >= 1.0 - 1e-9


class TestNonresiduePrimes:
    def test_large_d(self):
        primes, total = nonresidue_primes(1_000_003, 0.05, 0.24)
        assert primes
        assert 0.25 < total < 0.75
        from bianchi.arith import jacobi

        for p in primes:
            assert jacobi(-1_000_003, p) == -1

    def test_validation(self):
        with pytest.raises(ValueError):
            nonresidue_primes(100, 0.3, 0.4)
