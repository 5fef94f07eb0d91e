"""Pseudoprime tests compiled from integer polynomials, a constant-footprint
Perrin engine, and structure-guided hunting for Perrin pseudoprimes."""

from .baseline import (
    ClassifiedNumber,
    FactorizationError,
    count_primes,
    error_rate,
    factorize,
    fermat_test,
    is_carmichael,
    is_prime,
)
from .engine import (
    NATIVE_LIMIT,
    TripleState,
    is_perrin_probable,
    perrin_residue,
    perrin_trace,
    presieve,
)
from .recurrence import (
    BlockMatrix,
    SequenceSpec,
    build_block_matrix,
    builtin_spec,
    compile_spec,
    lift_polynomial,
    passes_test,
    power_sum_mod,
)
from .scanner import scan_range
from .search import (
    CandidateShape,
    GiantCandidate,
    IntersectionReport,
    ResidueSet,
    SearchProfile,
    candidate_value,
    check_intersection_conjecture,
    discover_residues,
    extend_ppp,
    giant_candidates,
    scan_shapes,
)
from .store import PppRecord, PppStore

__version__ = "0.1.0"

__all__ = [
    "BlockMatrix",
    "CandidateShape",
    "ClassifiedNumber",
    "FactorizationError",
    "GiantCandidate",
    "IntersectionReport",
    "NATIVE_LIMIT",
    "PppRecord",
    "PppStore",
    "ResidueSet",
    "SearchProfile",
    "SequenceSpec",
    "TripleState",
    "build_block_matrix",
    "builtin_spec",
    "candidate_value",
    "check_intersection_conjecture",
    "compile_spec",
    "count_primes",
    "discover_residues",
    "error_rate",
    "extend_ppp",
    "factorize",
    "fermat_test",
    "giant_candidates",
    "is_carmichael",
    "is_perrin_probable",
    "is_prime",
    "lift_polynomial",
    "passes_test",
    "perrin_residue",
    "perrin_trace",
    "power_sum_mod",
    "presieve",
    "scan_range",
    "scan_shapes",
]
