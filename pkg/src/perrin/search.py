"""Structure-guided hunt for Perrin pseudoprimes.

Most known Perrin pseudoprimes factor as prod_i [ki*(p-1) + 1] for a small
multiplier tuple (k1..km) and an odd core p.  Scanning cores instead of
testing every integer cuts the candidate count by orders of magnitude, and
the observed residues of p modulo 23 (the discriminant of x^3 - x - 1) and
its multiples cut it again: for a given multiplier tuple only a handful of
residue classes ever produce hits.  Residue sets are discovered empirically
here -- nobody knows how to derive them in advance -- so they stay flagged
provisional until enough samples back them.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .baseline import is_prime, prime_mask, primes_up_to
from .engine import is_perrin_probable
from .store import CandidateShape, PppRecord

log = logging.getLogger(__name__)

# A discovered residue set is trusted (non-provisional) from this many hits.
PROVISIONAL_SAMPLES = 30

DEFAULT_MODULUS = 138  # 23 * 2 * 3

# Default bounds for sweeping multiplier values, by tuple length; larger
# tuples produce hits so rarely that wide sweeps stop paying off.
DEFAULT_K_BOUNDS = {2: 100, 3: 15, 4: 10}


def candidate_value(shape: CandidateShape) -> int:
    """prod_i [ki*(core-1) + 1]; composite whenever core >= 3 and m >= 2."""
    return shape.value()


@dataclass(frozen=True)
class ResidueSet:
    """Allowed residues of the core p modulo `modulus` for one multiplier
    tuple, as observed from sample_count found pseudoprimes."""

    modulus: int
    residues: tuple[int, ...]
    multipliers: tuple[int, ...]
    sample_count: int

    @property
    def provisional(self) -> bool:
        return self.sample_count < PROVISIONAL_SAMPLES

    def allows(self, p: int) -> bool:
        return p % self.modulus in self.residues

    def __contains__(self, residue: int) -> bool:
        return residue in self.residues


def _iter_cores(lo: int, hi: int, primes_only: bool) -> Iterator[int]:
    lo = max(lo, 3)
    if lo % 2 == 0:
        lo += 1
    if primes_only:
        mask = prime_mask(hi)
        for p in range(lo, hi, 2):
            if mask[p]:
                yield p
    else:
        yield from range(lo, hi, 2)


def _check_multipliers(multipliers, coprime: bool | None) -> tuple[int, ...]:
    ks = tuple(sorted((int(k) for k in multipliers), reverse=True))
    if len(ks) < 2 or any(k < 1 for k in ks):
        raise ValueError(f"need >= 2 positive multipliers, got {multipliers}")
    if coprime is None:
        coprime = len(ks) == 2
    if coprime:
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                if math.gcd(ks[i], ks[j]) != 1:
                    raise ValueError(
                        f"multipliers {ks} are not pairwise coprime "
                        "(pass coprime=False to allow)"
                    )
    return ks


def _hit_record(shape: CandidateShape, value: int, method: str) -> PppRecord:
    if is_prime(value):  # impossible by construction; fail loudly if not
        raise RuntimeError(f"structured candidate {value} is prime")
    return PppRecord(value, method, shape, verified=True)


def scan_shapes(
    multipliers,
    p_range: tuple[int, int],
    residue_filter: ResidueSet | None = None,
    value_cap: int | None = None,
    primes_only: bool = False,
    coprime: bool | None = None,
    audit_stride: int = 0,
) -> list[PppRecord]:
    """Test prod[ki*(p-1)+1] for every core p in [lo, hi).

    Cores run over odd integers (or odd primes with primes_only); a
    residue_filter skips cores in disallowed classes.  When the filter is
    provisional, audit_stride > 0 additionally tests every audit_stride-th
    filtered-out core so a missed residue surfaces as a warning instead of
    staying invisible.  Hits come back as verified records, deduplicated by
    value and sorted.
    """
    ks = _check_multipliers(multipliers, coprime)
    lo, hi = p_range
    if residue_filter is not None and residue_filter.multipliers != ks:
        raise ValueError(
            f"filter belongs to {residue_filter.multipliers}, scanning {ks}"
        )
    hits: dict[int, PppRecord] = {}
    filtered = 0
    for p in _iter_cores(lo, hi, primes_only):
        if residue_filter is not None and not residue_filter.allows(p):
            filtered += 1
            if not (audit_stride and filtered % audit_stride == 0):
                continue
            log.debug("auditing filtered-out core p=%d", p)
        shape = CandidateShape(ks, p)
        value = shape.value()
        if value_cap is not None and value > value_cap:
            continue
        if is_perrin_probable(value):
            if residue_filter is not None and not residue_filter.allows(p):
                log.warning(
                    "residue filter for %s mod %d misses residue %d (p=%d, value=%d)",
                    ks, residue_filter.modulus, p % residue_filter.modulus, p, value,
                )
            hits.setdefault(value, _hit_record(shape, value, "structured"))
    return [hits[v] for v in sorted(hits)]


def discover_residues(
    multipliers,
    modulus: int = DEFAULT_MODULUS,
    target_samples: int = PROVISIONAL_SAMPLES,
    p_budget: int = 10**6,
    coprime: bool | None = None,
) -> ResidueSet:
    """Observe which residues of p (mod modulus) actually produce hits.

    Scans odd cores 3, 5, ... up to p_budget, unfiltered, until
    target_samples pseudoprimes have been seen or the budget runs out.  The
    result is a lower bound on the true residue set; an empty result just
    means the budget was too small (inconclusive), never a proof of absence.
    """
    if modulus < 23 or modulus % 23 != 0:
        raise ValueError(f"modulus must be a positive multiple of 23, got {modulus}")
    if target_samples < 1:
        raise ValueError("target_samples must be >= 1")
    ks = _check_multipliers(multipliers, coprime)
    residues: set[int] = set()
    samples = 0
    for p in _iter_cores(3, p_budget + 1, primes_only=False):
        value = CandidateShape(ks, p).value()
        if is_perrin_probable(value):
            residues.add(p % modulus)
            samples += 1
            if samples >= target_samples:
                break
    return ResidueSet(modulus, tuple(sorted(residues)), ks, samples)


@dataclass(frozen=True)
class SearchProfile:
    """A reproducible structured-scan configuration.

    Mirrors the CLI flags so a profile can live in config files or test
    fixtures: multiplier tuple, core range, optional residue filter and
    value cap, primes-only and coprimality switches, audit stride.
    """

    multipliers: tuple[int, ...]
    p_min: int = 3
    p_max: int = 10**5
    residue_filter: ResidueSet | None = None
    value_cap: int | None = None
    primes_only: bool = False
    coprime: bool | None = None
    audit_stride: int = 0

    def run(self) -> list[PppRecord]:
        return scan_shapes(
            self.multipliers,
            (self.p_min, self.p_max),
            residue_filter=self.residue_filter,
            value_cap=self.value_cap,
            primes_only=self.primes_only,
            coprime=self.coprime,
            audit_stride=self.audit_stride,
        )


class IntersectionReport(NamedTuple):
    """Sampled check of R(k1,k2,k3) = R(k1,k2) & R(k1,k3) & R(k2,k3).

    consistent is None when any discovery came back empty (inconclusive);
    otherwise True iff every observed triple residue lies in the pairwise
    intersection.  This checks samples only, it proves nothing.
    """

    multipliers: tuple[int, int, int]
    modulus: int
    pair_sets: tuple[ResidueSet, ResidueSet, ResidueSet]
    triple_set: ResidueSet
    intersection: tuple[int, ...]
    consistent: bool | None


def check_intersection_conjecture(
    k1: int,
    k2: int,
    k3: int,
    modulus: int = 23,
    pair_samples: int = PROVISIONAL_SAMPLES,
    triple_samples: int = 5,
    pair_budget: int = 10**6,
    triple_budget: int = 10**6,
) -> IntersectionReport:
    """Discover the three pairwise residue sets and the triple set, and
    report whether the samples are consistent with the intersection rule."""
    ks = (k1, k2, k3)
    for i in range(3):
        for j in range(i + 1, 3):
            if math.gcd(ks[i], ks[j]) != 1:
                raise ValueError(f"multipliers {ks} must be pairwise coprime")
    pairs = ((k1, k2), (k1, k3), (k2, k3))
    pair_sets = tuple(
        discover_residues(pair, modulus, pair_samples, pair_budget)
        for pair in pairs
    )
    triple_set = discover_residues(
        ks, modulus, triple_samples, triple_budget, coprime=False
    )
    inter = set(pair_sets[0].residues)
    for rs in pair_sets[1:]:
        inter &= set(rs.residues)
    if any(rs.sample_count == 0 for rs in pair_sets) or triple_set.sample_count == 0:
        consistent = None
    else:
        consistent = set(triple_set.residues) <= inter
    return IntersectionReport(
        (k1, k2, k3), modulus, pair_sets, triple_set, tuple(sorted(inter)), consistent
    )


def extend_ppp(
    record: PppRecord,
    c_max: int,
    value_cap: int | None = None,
) -> list[PppRecord]:
    """Grow an m-factor hit to m+1 factors with the same core.

    The added multiplier runs over c * lcm(k1..km) for c = 1..c_max, the
    pattern that empirically keeps producing hits.
    """
    if record.shape is None:
        raise ValueError(f"record {record.value} has no shape to extend")
    if c_max < 1:
        raise ValueError("c_max must be >= 1")
    base = record.shape.multipliers
    p = record.shape.core
    ell = math.lcm(*base)
    hits = []
    for c in range(1, c_max + 1):
        shape = CandidateShape(base + (c * ell,), p)
        value = shape.value()
        if value_cap is not None and value > value_cap:
            continue
        if is_perrin_probable(value):
            hits.append(_hit_record(shape, value, "extension"))
    return hits


class GiantCandidate(NamedTuple):
    """A residue-1 construction candidate: value = core * (k*(core-1) + 1)
    with core = 23 * (product of the first prime_index primes)."""

    value: int
    k: int
    prime_index: int
    core: int


def giant_candidates(k: int, prime_count: int) -> list[GiantCandidate]:
    """Candidates core*(k*(core-1)+1) for core = 23*2, 23*2*3, 23*2*3*5, ...

    The cores are even, so these sit outside the odd-core shape scans; every
    candidate is composite by construction.  Callers test them with
    is_perrin_probable (big-integer path for the real giants).
    """
    if k not in (2, 3):
        raise ValueError(f"k must be 2 or 3, got {k}")
    if prime_count < 1:
        raise ValueError("prime_count must be >= 1 (core must include 23*2)")
    primes = primes_up_to(10**4)
    if prime_count > len(primes):
        raise ValueError(f"prime_count {prime_count} beyond the prepared prime list")
    out = []
    core = 23
    for j in range(1, prime_count + 1):
        core *= primes[j - 1]
        out.append(GiantCandidate(core * (k * (core - 1) + 1), k, j, core))
    return out
