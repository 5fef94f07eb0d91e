"""Baseline primality machinery: classification, Fermat tests, Carmichael
numbers, prime counting and the error-rate statistic W(n) = P(n)/pi(n)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

# Deterministic Miller-Rabin witness set: correct for all n below this bound.
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# Known prime-counting values for powers of ten beyond desk-scale sieving.
PI_TABLE = {
    10**10: 455052511,
    10**11: 4118054813,
    10**12: 37607912018,
    10**13: 346065536839,
    10**14: 3204941750802,
}

SIEVE_LIMIT = 10**9
TRIAL_DIVISION_LIMIT = 10**6
RHO_MAX_ROUNDS = 64


class FactorizationError(Exception):
    """Raised when the factoring budget is exhausted (never a silent answer)."""


@dataclass(frozen=True)
class ClassifiedNumber:
    value: int
    is_prime: bool
    factorization: tuple[tuple[int, int], ...] | None = None

    def check(self) -> bool:
        """Factorization, when present, must multiply back and use prime factors."""
        if self.factorization is None:
            return True
        prod = 1
        for p, e in self.factorization:
            if not is_prime(p):
                return False
            prod *= p**e
        return prod == self.value


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set.

    Deterministic for n < MR_DETERMINISTIC_BOUND (~3.3e24); beyond that the
    same witnesses give a strong probable-prime answer, which suffices here
    because larger inputs only arise for constructed composites.
    """
    if n < 2:
        raise ValueError(f"primality is defined for n >= 2, got {n}")
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for base in MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def fermat_test(n: int, z: int = 2) -> bool:
    """True iff n divides z^n - z (Fermat's little theorem test, base z)."""
    if n < 2:
        raise ValueError(f"test index must be >= 2, got {n}")
    return pow(z, n, n) == z % n


def prime_mask(limit: int) -> bytearray:
    """Byte mask over [0, limit): mask[i] == 1 iff i is prime."""
    if limit < 2:
        return bytearray(max(limit, 0))
    mask = bytearray(b"\x01") * limit
    mask[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit - 1) + 1):
        if mask[p]:
            start = p * p
            step = p
            mask[start:limit:step] = b"\x00" * ((limit - 1 - start) // step + 1)
    return mask


def primes_up_to(limit: int) -> list[int]:
    """All primes < limit."""
    mask = prime_mask(limit)
    return [i for i, v in enumerate(mask) if v]


def sieve_segment(lo: int, hi: int, base_primes: list[int]) -> bytearray:
    """Prime mask for [lo, hi): mask[j] == 1 iff lo+j is prime.

    base_primes must cover every prime <= sqrt(hi-1).
    """
    size = hi - lo
    mask = bytearray(b"\x01") * size
    for j in range(min(2, hi) - lo):
        if 0 <= lo + j < 2:
            mask[j] = 0
    for p in base_primes:
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start >= hi:
            continue
        mask[start - lo : size : p] = b"\x00" * ((hi - 1 - start) // p + 1)
    return mask


@lru_cache(maxsize=32)
def count_primes(n: int) -> int:
    """pi(n), the number of primes <= n.

    Exact by segmented sieve for n <= 10^9; for 10^10..10^14 (powers of ten)
    the known table values are returned; anything else is rejected.
    """
    if n < 2:
        raise ValueError(f"pi(n) needs n >= 2, got {n}")
    if n > SIEVE_LIMIT:
        if n in PI_TABLE:
            return PI_TABLE[n]
        raise ValueError(
            f"pi({n}) unsupported: sieve covers n <= {SIEVE_LIMIT}, "
            "table covers powers of ten up to 10^14"
        )
    base = primes_up_to(math.isqrt(n) + 1)
    total = 0
    segment = 1 << 20
    lo = 0
    while lo <= n:
        hi = min(lo + segment, n + 1)
        total += sum(sieve_segment(lo, hi, base))
        lo = hi
    return total


class ErrorRate(NamedTuple):
    """Exact pseudoprime-to-prime ratio plus its 6-significant-figure text."""

    ratio: Fraction
    text: str


def error_rate(pseudoprime_count: int, n: int) -> ErrorRate:
    """W(n) = (pseudoprimes below n) / pi(n)."""
    if pseudoprime_count < 0:
        raise ValueError("pseudoprime count cannot be negative")
    pi = count_primes(n)
    ratio = Fraction(pseudoprime_count, pi)
    text = "0" if ratio == 0 else f"{float(ratio):.6g}"
    return ErrorRate(ratio, text)


def _pollard_rho(n: int) -> int | None:
    """Brent-cycle rho with a deterministic parameter sweep.

    Returns a nontrivial factor or None when every round fails.  n must be
    odd, composite and not a prime power handled elsewhere.
    """
    for c in range(1, RHO_MAX_ROUNDS + 1):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization (p, exponent) sorted by p.

    Trial division to TRIAL_DIVISION_LIMIT, then rho with a bounded round
    budget; raises FactorizationError when the budget runs out.
    """
    if n < 2:
        raise ValueError(f"factorization is defined for n >= 2, got {n}")
    factors: dict[int, int] = {}
    while n & 1 == 0:
        factors[2] = factors.get(2, 0) + 1
        n >>= 1
    p = 3
    while p <= TRIAL_DIVISION_LIMIT and p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d = _pollard_rho(m)
        if d is None:
            raise FactorizationError(f"factoring budget exhausted on {m}")
        stack += [d, m // d]
    return tuple(sorted(factors.items()))


def classify(n: int, with_factors: bool = False) -> ClassifiedNumber:
    prime = is_prime(n)
    factorization = None
    if with_factors:
        factorization = ((n, 1),) if prime else factorize(n)
    return ClassifiedNumber(n, prime, factorization)


def is_carmichael(n: int) -> bool:
    """Korselt's criterion: n composite, squarefree, and (q-1) | (n-1) for
    every prime q | n.  Equivalent to n | z^n - z for every base z.

    Raises FactorizationError (not False) when n cannot be factored within
    budget.
    """
    if n < 2:
        raise ValueError(f"test index must be >= 2, got {n}")
    if is_prime(n):
        return False
    factors = factorize(n)
    if any(e > 1 for _, e in factors):
        return False
    return all((n - 1) % (q - 1) == 0 for q, _ in factors)


def fermat_pseudoprimes(limit: int, z: int = 2) -> list[int]:
    """Composite n < limit with n | z^n - z."""
    mask = prime_mask(limit)
    return [
        n
        for n in range(2, limit)
        if not mask[n] and pow(z, n, n) == z % n
    ]


def carmichael_numbers(limit: int) -> list[int]:
    """All Carmichael numbers below limit (squarefree Korselt sweep)."""
    mask = prime_mask(limit)
    out = []
    for n in range(3, limit, 2):
        if mask[n]:
            continue
        m, ok = n, True
        p = 3
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0 or (n - 1) % (p - 1) != 0:
                    ok = False
                    break
            p += 2
        if not ok:
            continue
        if m > 1 and (n - 1) % (m - 1) != 0:
            continue
        if m == n:  # no odd factor found: n prime (already excluded) or 1
            continue
        out.append(n)
    return out
