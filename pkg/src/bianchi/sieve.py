"""Quadratic-residue/representability sieve over squarefree d.

For each squarefree d the residue set collects 0 < r < d/4 that are squares
mod d (zero residues count) but fail the representability criterion, i.e.
-d is a nonresidue modulo the squarefree part of r.  Emptiness of that set
across d reproduces the bundled exceptional tables.

Hot loops run on precomputed quadratic-residue tables per prime and a
smallest-prime-factor sieve; results are identical to the arith-module
predicates (cross-checked in tests) but orders of magnitude faster.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from bianchi.arith import factorize, is_prime, jacobi
from bianchi.classgroup import has_order_four_element

__all__ = [
    "DsetRecord",
    "candidate_discriminants",
    "dset",
    "dset_nonempty_witness",
    "exceptional_verdict",
    "member_weight",
    "nonresidue_primes",
    "scan_empty",
    "weight_sum",
]

_qr_tables: dict[int, bytearray] = {}
_spf_cache: list[int] = [0, 1]


def _qr_table(p: int) -> bytearray:
    """Byte table of squares mod the odd prime p (index 0 counts)."""
    t = _qr_tables.get(p)
    if t is None:
        t = bytearray(p)
        t[0] = 1
        for x in range(1, p // 2 + 1):
            t[x * x % p] = 1
        _qr_tables[p] = t
    return t


def _spf_upto(limit: int) -> list[int]:
    """Smallest-prime-factor table, grown on demand."""
    global _spf_cache
    if len(_spf_cache) <= limit:
        size = max(limit + 1, 2 * len(_spf_cache))
        spf = list(range(size))
        for p in range(2, math.isqrt(size - 1) + 1):
            if spf[p] == p:
                for m in range(p * p, size, p):
                    if spf[m] == m:
                        spf[m] = p
        _spf_cache = spf
    return _spf_cache


def _squarefree_odd_primes(r: int, spf: list[int]) -> tuple[int, ...]:
    """Odd primes dividing the squarefree part of r."""
    out = []
    while r > 1:
        p = spf[r]
        e = 0
        while r % p == 0:
            r //= p
            e += 1
        if e % 2 and p != 2:
            out.append(p)
    return tuple(out)


def _odd_prime_factors(d: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(d).factors if p != 2)


def member_weight(d: int, r: int) -> int:
    """Closed-form weight: product over odd primes p | d of ((r/p) + 1)."""
    w = 1
    for p in _odd_prime_factors(d):
        w *= jacobi(r, p) + 1
    return w


@dataclass(frozen=True)
class DsetRecord:
    """Residue set of one d with the weighted count and the earliest witness."""

    d: int
    members: tuple[int, ...]
    weight_sum: int
    first_witness: int | None


def _scan_members(d: int, stop_at_first: bool) -> list[int]:
    if not factorize(d).is_squarefree:
        raise ValueError(f"need squarefree d, got {d}")
    odd_ps = _odd_prime_factors(d)
    tables = [(p, _qr_table(p)) for p in odd_ps]
    r_max = (d - 1) // 4  # strict r < d/4; squarefree d is never 0 mod 4
    spf = _spf_upto(r_max + 1)
    members = []
    for r in range(1, r_max + 1):
        ok = True
        for p, t in tables:
            if not t[r % p]:
                ok = False
                break
        if not ok:
            continue
        # representability: -d a square mod the squarefree part of r
        representable = True
        for q in _squarefree_odd_primes(r, spf):
            if not _qr_table(q)[-d % q]:
                representable = False
                break
        if not representable:
            members.append(r)
            if stop_at_first:
                break
    return members


def dset(d: int) -> DsetRecord:
    """Full residue-set record for squarefree d."""
    members = _scan_members(d, stop_at_first=False)
    total = sum(member_weight(d, r) for r in members)
    return DsetRecord(d, tuple(members), total, members[0] if members else None)


def dset_nonempty_witness(d: int) -> int | None:
    """Smallest member of the residue set, or None when it is empty."""
    members = _scan_members(d, stop_at_first=True)
    return members[0] if members else None


def weight_sum(d: int) -> int:
    return dset(d).weight_sum


def _scan_range(args: tuple[int, int]) -> list[tuple[int, int | None]]:
    lo, hi = args
    out = []
    for d in range(lo, hi):
        if factorize(d).is_squarefree:
            out.append((d, dset_nonempty_witness(d)))
    return out


def scan_empty(
    d_max: int,
    checkpoint: str | Path | None = None,
    workers: int = 1,
) -> list[int]:
    """All squarefree d <= d_max with empty residue set.

    Deterministic for any worker count.  With a checkpoint path, scanned
    rows are appended as CSV lines `d,status,first_witness` and reruns skip
    everything already recorded.
    """
    if d_max < 1:
        raise ValueError("d_max must be positive")
    done: dict[int, int | None] = {}
    cp_path = Path(checkpoint) if checkpoint else None
    if cp_path and cp_path.exists():
        for row in csv.reader(cp_path.read_text().splitlines()):
            if not row or row[0] == "d":
                continue
            if len(row) != 3 or row[1] not in ("empty", "nonempty"):
                raise ValueError(f"corrupt checkpoint row: {row!r}")
            done[int(row[0])] = int(row[2]) if row[2] else None
    todo = [
        d
        for d in range(1, d_max + 1)
        if d not in done and factorize(d).is_squarefree
    ]
    results: list[tuple[int, int | None]] = []
    if todo:
        chunks = []
        lo = todo[0]
        step = max(64, (d_max // max(workers, 1) // 8) or 64)
        while lo <= todo[-1]:
            chunks.append((lo, min(lo + step, todo[-1] + 1)))
            lo += step
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(_scan_range, chunks):
                    results.extend(r for r in part if r[0] not in done)
        else:
            for chunk in chunks:
                results.extend(r for r in _scan_range(chunk) if r[0] not in done)
    if cp_path:
        with cp_path.open("a") as fh:
            for d, witness in sorted(results):
                status = "nonempty" if witness is not None else "empty"
                fh.write(f"{d},{status},{witness if witness is not None else ''}\n")
    merged = dict(done)
    merged.update(dict(results))
    return sorted(d for d, w in merged.items() if w is None and d <= d_max)


def exceptional_verdict(d: int) -> dict:
    """Theorem-backed verdict on closed embedded surfaces in the orbifold of d.

    `NoClosedEmbedded` needs both an empty residue set and a class group
    with no element of order 4 (so the coset parametrization covers every
    immersed surface); anything else is Unknown.
    """
    witness = dset_nonempty_witness(d)
    if witness is not None:
        return {
            "verdict": "Unknown",
            "reason": f"residue set nonempty (witness {witness})",
        }
    if has_order_four_element(d):
        return {
            "verdict": "Unknown",
            "reason": "class group has an element of order 4; "
            "parametrization incomplete, left open",
        }
    return {"verdict": "NoClosedEmbedded", "reason": "empty residue set and no order-4 class"}


def candidate_discriminants(d: int, threshold: float = 1.0) -> list[int]:
    """All D with gcd(d,D)^2 log^4(max(2, D/gcd)) / D >= threshold.

    Enumerated divisor class by divisor class: fix e | d and D = e*D0 with
    gcd(D0, d/e) = 1; the condition becomes e * log^4(max(2, D0)) / D0 >=
    threshold.  Diagnostic: the count grows roughly linearly in d.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    if not factorize(d).is_squarefree:
        raise ValueError(f"need squarefree d, got {d}")
    out = []
    for e in factorize(d).divisors():
        co = d // e
        d0 = 1
        while True:
            val = e * math.log(max(2, d0)) ** 4 / d0
            if val < threshold and d0 > 55:
                break
            if val >= threshold and math.gcd(d0, co) == 1:
                out.append(e * d0)
            d0 += 1
    return sorted(set(out))


def nonresidue_primes(
    d: int, lo_exp: float, hi_exp: float
) -> tuple[list[int], float]:
    """Odd primes p in [d^lo, d^hi] with (-d/p) = -1, greedily truncated.

    Collection stops as soon as the reciprocal sum exceeds 1/4, which keeps
    it below 3/4.  Diagnostic only.
    """
    if not (0 < lo_exp < hi_exp < 0.25):
        raise ValueError("need 0 < lo_exp < hi_exp < 1/4")
    lo = max(3, math.ceil(d**lo_exp))
    hi = math.floor(d**hi_exp)
    primes = []
    total = 0.0
    for p in range(lo | 1, hi + 1, 2):
        if is_prime(p) and jacobi(-d, p) == -1:
            primes.append(p)
            total += 1.0 / p
            if total > 0.25:
                break
    return primes, total
