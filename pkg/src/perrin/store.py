"""Persistence for found pseudoprimes.

Plain UTF-8 text, one record per line, tab-separated:

    value  method  core-or-dash  multipliers-or-dash  digits  verified

sorted numerically by value and deduplicated, so stores are diff-able and
mergeable.  `verify_all` mirrors the usual database re-check: every entry
must still divide its Perrin number and must still be composite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

from .baseline import is_prime
from .engine import is_perrin_probable

METHODS = ("exhaustive", "structured", "extension", "giant", "imported")


@dataclass(frozen=True, order=True)
class CandidateShape:
    """Multipliers (k1..km) plus core p describing prod_i [ki*(p-1) + 1].

    Multipliers are kept sorted descending; the core is odd and >= 3 but
    need not be prime.
    """

    multipliers: tuple[int, ...]
    core: int

    def __post_init__(self) -> None:
        ms = tuple(sorted((int(k) for k in self.multipliers), reverse=True))
        object.__setattr__(self, "multipliers", ms)
        if len(ms) < 2:
            raise ValueError("a shape needs at least two multipliers")
        if any(k < 1 for k in ms):
            raise ValueError(f"multipliers must be positive: {ms}")
        if self.core < 3 or self.core % 2 == 0:
            raise ValueError(f"core must be odd and >= 3, got {self.core}")

    def value(self) -> int:
        return math.prod(k * (self.core - 1) + 1 for k in self.multipliers)


@dataclass(frozen=True)
class PppRecord:
    """One found pseudoprime: value, how it was found, and shape if known."""

    value: int
    method: str
    shape: CandidateShape | None = None
    digits: int = 0
    verified: bool = False

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.digits == 0:
            object.__setattr__(self, "digits", len(str(self.value)))
        elif self.digits != len(str(self.value)):
            raise ValueError(f"digit count {self.digits} wrong for {self.value}")
        if self.shape is not None and self.shape.value() != self.value:
            raise ValueError(
                f"shape {self.shape} evaluates to {self.shape.value()}, not {self.value}"
            )

    def to_line(self) -> str:
        if self.shape is None:
            core, mults = "-", "-"
        else:
            core = str(self.shape.core)
            mults = ",".join(str(k) for k in self.shape.multipliers)
        flag = "true" if self.verified else "false"
        return f"{self.value}\t{self.method}\t{core}\t{mults}\t{self.digits}\t{flag}"

    @classmethod
    def from_line(cls, line: str) -> "PppRecord":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 6:
            raise ValueError(f"malformed record line: {line!r}")
        value, method, core, mults, digits, flag = parts
        shape = None
        if core != "-":
            shape = CandidateShape(
                tuple(int(k) for k in mults.split(",")), int(core)
            )
        return cls(int(value), method, shape, int(digits), flag == "true")


class PppStore:
    """Sorted, value-unique collection of PppRecords backed by one text file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._records: dict[int, PppRecord] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip():
                    rec = PppRecord.from_line(line)
                    self._records[rec.value] = rec

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, value: int) -> bool:
        return value in self._records

    @property
    def records(self) -> list[PppRecord]:
        return [self._records[v] for v in sorted(self._records)]

    def append(self, records) -> int:
        """Add records, skipping values already stored; returns how many
        were new.  The file is rewritten in canonical sorted form."""
        added = 0
        for rec in records:
            if rec.value not in self._records:
                self._records[rec.value] = rec
                added += 1
        if added:
            self.save()
        return added

    def save(self) -> None:
        text = "".join(rec.to_line() + "\n" for rec in self.records)
        self.path.write_text(text)

    def count_below(self, bound: int) -> int:
        return sum(1 for v in self._records if v < bound)

    def merge(self, other: "PppStore") -> int:
        """Set union by value with another store; returns newly added count."""
        return self.append(other.records)

    def import_plain(self, path: str | Path) -> int:
        """Ingest a plain list (one decimal value per line) as method
        "imported", unverified until verify_all runs."""
        lines = Path(path).read_text().split()
        recs = [PppRecord(int(tok), "imported") for tok in lines if tok]
        return self.append(recs)

    def verify_all(self) -> list[tuple[PppRecord, str]]:
        """Re-test every record: it must pass the Perrin test and be
        composite.  Verified flags are updated and persisted; the list of
        (record, reason) failures is returned."""
        failures = []
        updated = {}
        for value, rec in self._records.items():
            if not is_perrin_probable(value):
                failures.append((rec, "failed Perrin test"))
                ok = False
            elif is_prime(value):
                failures.append((rec, "is prime"))
                ok = False
            else:
                ok = True
            updated[value] = replace(rec, verified=ok)
        self._records = updated
        self.save()
        return failures

    def stats(self, decade_max: int) -> list[tuple[int, int, str | None]]:
        """Rows (10^d, verified count below 10^d, W text or None when
        pi(10^d) is not available) for d = 1..decade_max.

        Only verified records count: run verify_all first so entries that
        fail re-checking do not pollute the error rates.
        """
        from .baseline import error_rate

        rows = []
        for d in range(1, decade_max + 1):
            bound = 10**d
            count = sum(
                1 for v, rec in self._records.items() if v < bound and rec.verified
            )
            try:
                w = error_rate(count, bound).text
            except ValueError:
                w = None
            rows.append((bound, count, w))
        return rows
