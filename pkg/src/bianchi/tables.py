"""Bundled exceptional-discriminant tables used by the golden comparisons.

The table ships with the package; a checksum guards against accidental
edits so golden tests never depend on anything external.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

__all__ = [
    "ExceptionalTables",
    "TRIVIAL_CUSPIDAL",
    "load_tables",
]

_BUNDLED_SHA256 = "cf8665b75a66906f5022dbd8a2c0702b131c091e023af38a4fb4dbf7871045b3"

# discriminants whose Bianchi group has trivial cuspidal cohomology
TRIVIAL_CUSPIDAL = (1, 2, 3, 5, 6, 7, 11, 15, 19, 23, 31, 39, 47, 71)


@dataclass(frozen=True)
class ExceptionalTables:
    """Proven list (with class data) plus conjectural list of empty-residue-set d."""

    proven: tuple[tuple[int, int, tuple[int, ...] | None], ...]  # (d, h, structure?)
    conjectural: tuple[int, ...]

    @property
    def proven_d(self) -> tuple[int, ...]:
        return tuple(d for d, _, _ in self.proven)

    @property
    def all_d(self) -> frozenset[int]:
        return frozenset(self.proven_d) | frozenset(self.conjectural)


def _parse(text: str) -> ExceptionalTables:
    proven = []
    conjectural = []
    for row in csv.DictReader(text.splitlines()):
        d = int(row["d"])
        if row["kind"] == "e1":
            structure = (
                tuple(int(v) for v in row["structure"].split("x"))
                if row["structure"]
                else None
            )
            proven.append((d, int(row["h"]), structure))
        elif row["kind"] == "e2":
            conjectural.append(d)
        else:
            raise ValueError(f"unknown table kind {row['kind']!r}")
    return ExceptionalTables(tuple(proven), tuple(conjectural))


def load_tables(path: str | Path | None = None) -> ExceptionalTables:
    """Load the bundled tables (checksum-verified) or a user-supplied CSV."""
    if path is None:
        text = (
            resources.files("bianchi").joinpath("data/appendix_tables.csv").read_text()
        )
        digest = hashlib.sha256(text.encode()).hexdigest()
        if digest != _BUNDLED_SHA256:
            raise RuntimeError(
                "bundled table checksum mismatch; the data file was modified"
            )
    else:
        text = Path(path).read_text()
    tables = _parse(text)
    if path is None:
        assert len(tables.proven) == 63 and len(tables.conjectural) == 26
    return tables
