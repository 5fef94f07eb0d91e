"""Constant-footprint Perrin test.

The Perrin numbers P_n (3, 0, 2, 3, 2, 5, ...; P_n = P_(n-2) + P_(n-3))
satisfy n | P_n for every prime n.  This module computes P_n mod n holding
just three residues: with n = 3m + i, the step matrix S advancing the
sequence three positions has powers that are fully determined by their
first column (a, b, c), and the binary expansion of m drives two update
rules on that triple:

    Q (square):     (a,b,c) -> (a^2 + 2bc,  b^2 + c^2 + 2ab,  b^2 + 2ac + 2bc)
    M (multiply S): (a,b,c) -> (a + b,  b + c,  a + b + c)

Each binary digit of m costs one Q, plus one M when the digit is 1.  The
final triple yields P_n mod n through a three-way extraction depending on i.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

from . import _kernels

# First Perrin numbers, enough for every n with m = floor(n/3) = 0.
PERRIN_SMALL = (3, 0, 2, 3, 2, 5)

# The step matrix S: (P_3m, P_3m+1, P_3m+2) = S^m (3, 0, 2).
STEP_MATRIX = ((1, 1, 0), (0, 1, 1), (1, 1, 1))

# Below this modulus all intermediate products fit machine words and the
# compiled kernels take over (when available); above it, Python's big
# integers do the work.  Exposed for benchmarking.
NATIVE_LIMIT = 1 << 31


class TripleState(NamedTuple):
    """The (a, b, c) register triple: first column of S^t mod n."""

    a: int
    b: int
    c: int


class TraceResult(NamedTuple):
    """Full record of one engine run, for display and verification.

    extraction_value is the unreduced linear combination (e.g. 3b + 2c);
    residue is that value mod n, i.e. P_n mod n.
    """

    n: int
    m: int
    i: int
    word: str
    states: list[TripleState]
    extraction: str
    extraction_value: int
    residue: int


def q_step(state: TripleState, n: int) -> TripleState:
    """Squaring update: the triple of S^t becomes the triple of S^2t."""
    a, b, c = state
    bb = b * b
    bc = b * c
    return TripleState(
        (a * a + bc + bc) % n,
        (bb + c * c + 2 * a * b) % n,
        (bb + 2 * a * c + bc + bc) % n,
    )


def m_step(state: TripleState, n: int) -> TripleState:
    """Multiply-by-S update: the triple of S^t becomes the triple of S^(t+1)."""
    a, b, c = state
    return TripleState((a + b) % n, (b + c) % n, (a + b + c) % n)


_EXTRACTION_LABELS = ("3a+2b", "3b+2c", "2a+2b+3c")


def _extract(a: int, b: int, c: int, i: int, n: int) -> int:
    if i == 0:
        return (3 * a + 2 * b) % n
    if i == 1:
        return (3 * b + 2 * c) % n
    return (2 * a + 2 * b + 3 * c) % n


def _residue_bigint(n: int) -> int:
    """P_n mod n with Python integers; valid for any n >= 2."""
    m, i = divmod(n, 3)
    if m == 0:
        return PERRIN_SMALL[n] % n
    a, b, c = 1 % n, 0, 0
    for bit in bin(m)[2:]:
        bb = b * b
        bc = b * c
        a, b, c = (
            (a * a + bc + bc) % n,
            (bb + c * c + 2 * a * b) % n,
            (bb + 2 * a * c + bc + bc) % n,
        )
        if bit == "1":
            a, b, c = (a + b) % n, (b + c) % n, (a + b + c) % n
    return _extract(a, b, c, i, n)


def perrin_residue(n: int) -> int:
    """P_n mod n.

    Uses the compiled native-width kernel below NATIVE_LIMIT when numba is
    available, otherwise (and always above the limit) the big-integer path.
    """
    if n < 2:
        raise ValueError(f"test index must be >= 2, got {n}")
    if n < NATIVE_LIMIT and _kernels.HAVE_NUMBA:
        return int(_kernels.perrin_residue_u64(n))
    return _residue_bigint(n)


def perrin_trace(n: int) -> TraceResult:
    """Run the engine recording the Q/M word and every intermediate triple."""
    if n < 2:
        raise ValueError(f"test index must be >= 2, got {n}")
    m, i = divmod(n, 3)
    states = [TripleState(1 % n, 0, 0)]
    word_parts = []
    if m == 0:
        value = PERRIN_SMALL[n]
        return TraceResult(
            n, m, i, "", states, _EXTRACTION_LABELS[i], value, value % n
        )
    for bit in bin(m)[2:]:
        states.append(q_step(states[-1], n))
        word_parts.append("Q")
        if bit == "1":
            states.append(m_step(states[-1], n))
            word_parts.append("M")
    a, b, c = states[-1]
    if i == 0:
        value = 3 * a + 2 * b
    elif i == 1:
        value = 3 * b + 2 * c
    else:
        value = 2 * a + 2 * b + 3 * c
    word = "".join(word_parts)
    return TraceResult(n, m, i, word, states, _EXTRACTION_LABELS[i], value, value % n)


def rule_multiple_of_four(n: int) -> bool:
    """n = 0 mod 4 forces P_n != 0 mod 4, so n cannot divide P_n."""
    return n & 3 == 0


def rule_three_thirteen(n: int) -> bool:
    """n = 0 mod 3 with n mod 13 outside {0,1,3,9} forces P_n != 0 mod 3."""
    return n % 3 == 0 and n % 13 not in (0, 1, 3, 9)


# Exclusion rules are pluggable: each returns True when n provably fails the
# Perrin test.  Only these two are known-safe; add discovered rules here
# once they are verified over a scanned range.
DEFAULT_SIEVE_RULES: tuple[Callable[[int], bool], ...] = (
    rule_multiple_of_four,
    rule_three_thirteen,
)


def presieve(n: int, rules=DEFAULT_SIEVE_RULES) -> bool:
    """True when n survives the cheap exclusion rules (it may still fail
    the full test); False only when some rule proves n does not divide P_n."""
    if n < 2:
        raise ValueError(f"test index must be >= 2, got {n}")
    return not any(rule(n) for rule in rules)


def is_perrin_probable(n: int) -> bool:
    """True iff n divides P_n.  Prime n always qualifies; composite n that
    qualify are the Perrin pseudoprimes."""
    if n < 2:
        raise ValueError(f"test index must be >= 2, got {n}")
    if not presieve(n):
        return False
    return perrin_residue(n) == 0
