"""Compile integer polynomials into pseudoprime tests.

A polynomial  Q(x) = -x^k + a1*x^(k-1) + ... + a_(k-1)*x + a_k  with integer
coefficients has a power-sum sequence g_n = x1^n + ... + xk^n over its roots.
The g_n are integers, satisfy the linear recurrence with coefficients (a1..ak),
and every prime p divides g_p - a1^p.  A `SequenceSpec` packages the
coefficients, the first k power sums, and the test offset a1; `power_sum_mod`
evaluates g_n mod n via block-matrix exponentiation so the test runs in
O(log n) matrix products.

Roots are never computed numerically: initial values come from Newton's
identities, everything else is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

VALID_BASES = (2, 4, 8)

# Built-in polynomials, loadable by name. "perrin" is the classic
# x^3 - x - 1 sequence; "q17" and "r14" are degree-4 polynomials whose
# sequences show no pseudoprimes in scanned ranges; "g154" is the degree-5
# lift of r14 that absorbs the 11^n offset into the recurrence.
BUILTIN_COEFFS = {
    "perrin": (0, 1, 1),
    "q17": (1, -17, 0, 5),
    "r14": (11, 1, -12, 14),
}


@dataclass(frozen=True)
class SequenceSpec:
    """An integer recurrence plus its pseudoprime test rule.

    coefficients       (a1..ak) of Q(x) = -x^k + a1*x^(k-1) + ... + ak
    initial_power_sums first k sequence values g_0..g_(k-1)
    trace_offset       a1; the test rule is n | (g_n - a1^n)
    name               optional label for built-in configs
    """

    coefficients: tuple[int, ...]
    initial_power_sums: tuple[int, ...]
    trace_offset: int
    name: str | None = None

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __str__(self) -> str:
        return self.name or f"poly{self.coefficients}"


@dataclass(frozen=True)
class BlockMatrix:
    """k x k integer matrix advancing a window of k sequence values by k steps."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.entries)

    def apply(self, vector: tuple[int, ...], mod: int | None = None) -> tuple[int, ...]:
        """Multiply onto a column vector, optionally reducing mod `mod`."""
        k = self.order
        out = []
        for row in self.entries:
            s = sum(row[t] * vector[t] for t in range(k))
            out.append(s % mod if mod else s)
        return tuple(out)


def compile_spec(coefficients, name: str | None = None) -> SequenceSpec:
    """Build a SequenceSpec for Q(x) = -x^k + a1*x^(k-1) + ... + ak.

    Initial values are the exact power sums of the roots, from Newton's
    identities with e_j = (-1)^(j+1) * a_j:

        p_0 = k,  p_1 = e_1,
        p_m = e_1*p_(m-1) - e_2*p_(m-2) + ... + (-1)^(m-1) * m * e_m

    Raises ValueError for k < 2 and for a_k = 0 (zero root: deflate first).
    """
    coeffs = tuple(int(a) for a in coefficients)
    k = len(coeffs)
    if k < 2:
        raise ValueError(f"polynomial order must be >= 2, got {k}")
    if coeffs[-1] == 0:
        raise ValueError("degenerate polynomial (zero root); deflate first")
    e = [0] + [(-1) ** (j + 1) * coeffs[j - 1] for j in range(1, k + 1)]
    p = [k]
    for m in range(1, k):
        s = sum((-1) ** (i - 1) * e[i] * p[m - i] for i in range(1, m))
        p.append(s + (-1) ** (m - 1) * m * e[m])
    return SequenceSpec(coeffs, tuple(p), coeffs[0], name)


def lift_polynomial(spec: SequenceSpec, name: str | None = None) -> SequenceSpec:
    """Absorb the a1^n offset into an order-(k+1) recurrence.

    The returned spec generates f_n = g_n - a1^n of the input spec and tests
    with offset 0.  Its polynomial is Q(x)*(x - a1), i.e. coefficients

        (2*a1,  a2 - a1*a1,  a3 - a1*a2, ...,  ak - a1*a_(k-1),  -a1*ak)

    and its initial values are (g_i - a1^i) for i = 0..k.  The last
    coefficient may legitimately be zero (a1 = 0 makes the lift trivial),
    so this constructs the spec directly instead of going via compile_spec.
    """
    a = spec.coefficients
    k = spec.order
    a1 = a[0]
    lifted = [2 * a1]
    lifted += [a[i + 1] - a1 * a[i] for i in range(k - 1)]
    lifted.append(-a1 * a[k - 1])
    g = iterate_sequence(spec, k + 1)
    init = tuple(g[i] - a1**i for i in range(k + 1))
    return SequenceSpec(tuple(lifted), init, 0, name)


def iterate_sequence(spec: SequenceSpec, count: int, mod: int | None = None) -> list[int]:
    """First `count` sequence values by direct recurrence iteration.

    Exact integers by default; reduced mod `mod` when given.  This is the
    slow reference path (O(count) steps) used for small indices and oracles.
    """
    a = spec.coefficients
    k = spec.order
    vals = list(spec.initial_power_sums[:count])
    if mod:
        vals = [v % mod for v in vals]
    while len(vals) < count:
        s = sum(a[j] * vals[-1 - j] for j in range(k))
        vals.append(s % mod if mod else s)
    return vals


@lru_cache(maxsize=64)
def build_block_matrix(spec: SequenceSpec) -> BlockMatrix:
    """Matrix A with (g_k..g_(2k-1)) = A * (g_0..g_(k-1)).

    Rows are obtained by iterating the recurrence symbolically k steps over
    the basis of initial values; row 0 is (c_0..c_(k-1)) with c_(k-1-i) =
    a_(i+1), i.e. the recurrence coefficients in reverse.
    """
    a = spec.coefficients
    k = spec.order
    rows = [[1 if j == i else 0 for j in range(k)] for i in range(k)]
    for n in range(k, 2 * k):
        row = [0] * k
        for j in range(1, k + 1):
            prev = rows[n - j]
            aj = a[j - 1]
            if aj:
                for t in range(k):
                    row[t] += aj * prev[t]
        rows.append(row)
    return BlockMatrix(tuple(tuple(r) for r in rows[k:]))


def _mat_mul(x, y, n: int, k: int):
    """k x k matrix product with every entry reduced mod n."""
    out = []
    for i in range(k):
        xi = x[i]
        row = []
        for j in range(k):
            s = 0
            for t in range(k):
                s += xi[t] * y[t][j]
            row.append(s % n)
        out.append(row)
    return out


def power_sum_mod(spec: SequenceSpec, n: int, base: int = 8) -> int:
    """g_n mod n via Horner base-`base` block-matrix exponentiation.

    Writes n = m*k + i, raises the block matrix to the m-th power mod n
    (precomputed powers A^0..A^(base-1), then per base-digit: `base`-th power
    by repeated squaring plus one multiply), applies it to the initial
    vector and selects component i.  Every entry is reduced mod n at each
    step, so operands stay below n^2.  For m = 0 the stored initial values
    answer directly.
    """
    if n < 2:
        raise ValueError(f"test index must be >= 2, got {n}")
    if base not in VALID_BASES:
        raise ValueError(f"base must be one of {VALID_BASES}, got {base}")
    k = spec.order
    m, i = divmod(n, k)
    if m == 0:
        return spec.initial_power_sums[i] % n
    block = build_block_matrix(spec)
    amod = [[v % n for v in row] for row in block.entries]
    ident = [[1 % n if r == c else 0 for c in range(k)] for r in range(k)]
    pows = [ident, amod]
    for _ in range(2, base):
        pows.append(_mat_mul(pows[-1], amod, n, k))
    squarings = base.bit_length() - 1  # base is 2, 4 or 8
    digits = []
    mm = m
    while mm:
        digits.append(mm % base)
        mm //= base
    digits.reverse()
    acc = pows[digits[0]]
    for d in digits[1:]:
        for _ in range(squarings):
            acc = _mat_mul(acc, acc, n, k)
        if d:
            acc = _mat_mul(acc, pows[d], n, k)
    init = [v % n for v in spec.initial_power_sums]
    row = acc[i]
    return sum(row[t] * init[t] for t in range(k)) % n


def target_residue(spec: SequenceSpec, n: int) -> int:
    """a1^n mod n, the value g_n must match for the test to pass.

    Trivial offsets (-1, 0, 1) skip the modular exponentiation.
    """
    a1 = spec.trace_offset
    if a1 == 0:
        return 0
    if a1 == 1:
        return 1 % n
    if a1 == -1:
        return (n - 1) % n if n & 1 else 1 % n
    return pow(a1, n, n)


def passes_test(spec: SequenceSpec, n: int) -> bool:
    """True iff n divides g_n - a1^n.  Primes always pass (no converse)."""
    if n < 2:
        raise ValueError(f"test index must be >= 2, got {n}")
    return power_sum_mod(spec, n) == target_residue(spec, n)


@lru_cache(maxsize=None)
def builtin_spec(name: str) -> SequenceSpec:
    """Load a named built-in spec: perrin, q17, r14 or g154."""
    if name in BUILTIN_COEFFS:
        return compile_spec(BUILTIN_COEFFS[name], name)
    if name == "g154":
        return lift_polynomial(compile_spec(BUILTIN_COEFFS["r14"]), "g154")
    raise ValueError(
        f"unknown spec {name!r}; built-ins: perrin, q17, r14, g154"
    )


def parse_coefficients(text: str) -> tuple[int, ...]:
    """Parse the CLI polynomial format: comma-separated a1,...,ak."""
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad coefficient list {text!r}: {exc}") from None
