"""Exhaustive pseudoprime scans over integer ranges.

A scan walks every composite in [lo, hi) (primes pass every test by
theorem, so they are sieved out, not tested) and reports the values that
pass the spec's divisibility rule.  The range is cut into fixed-size chunks
processed independently -- serially or across worker processes -- and the
chunk size never depends on the worker count, so the result set is
identical for any parallelism.

For the Perrin spec the two cheap exclusion rules run first and the
constant-footprint engine does the rest; other specs go through the
block-matrix path.  Below the native-width limit the compiled kernels are
used when available.
"""

from __future__ import annotations

import math
from multiprocessing import Pool

from . import _kernels
from .baseline import primes_up_to, sieve_segment
from .engine import NATIVE_LIMIT, is_perrin_probable, presieve, _residue_bigint
from .recurrence import SequenceSpec, build_block_matrix, passes_test, builtin_spec

CHUNK_SIZE = 1 << 20

# int64 headroom for kernel inputs: block-matrix entries are reduced mod n
# in-kernel, but must arrive representable.
_ENTRY_LIMIT = 1 << 62

_PERRIN = builtin_spec("perrin")


def _is_perrin_spec(spec: SequenceSpec) -> bool:
    return (
        spec.coefficients == _PERRIN.coefficients
        and spec.initial_power_sums == _PERRIN.initial_power_sums
        and spec.trace_offset == 0
    )


def _kernel_ok(spec: SequenceSpec, hi: int) -> bool:
    if not _kernels.HAVE_NUMBA or hi > NATIVE_LIMIT:
        return False
    block = build_block_matrix(spec)
    entries = [e for row in block.entries for e in row]
    entries += list(spec.initial_power_sums)
    return all(abs(e) < _ENTRY_LIMIT for e in entries)


def _scan_chunk(args) -> list[int]:
    spec, lo, hi, base_primes = args
    mask = sieve_segment(lo, hi, base_primes)
    hits: list[int] = []
    if _is_perrin_spec(spec):
        if _kernel_ok(spec, hi):
            import numpy as np

            comp = (np.frombuffer(bytes(mask), dtype=np.uint8) == 0).astype(np.uint8)
            out = np.empty(hi - lo, dtype=np.int64)
            count = _kernels.scan_perrin(lo, hi, comp, out)
            return [int(v) for v in out[:count]]
        for n in range(lo, hi):
            if mask[n - lo]:
                continue
            if presieve(n) and _residue_bigint(n) == 0:
                hits.append(n)
        return hits
    if _kernel_ok(spec, hi):
        import numpy as np

        comp = (np.frombuffer(bytes(mask), dtype=np.uint8) == 0).astype(np.uint8)
        block = np.array(build_block_matrix(spec).entries, dtype=np.int64)
        init = np.array(spec.initial_power_sums, dtype=np.int64)
        out = np.empty(hi - lo, dtype=np.int64)
        count = _kernels.scan_generic(lo, hi, comp, block, init, spec.trace_offset, out)
        return [int(v) for v in out[:count]]
    for n in range(lo, hi):
        if mask[n - lo]:
            continue
        if passes_test(spec, n):
            hits.append(n)
    return hits


def warm_kernels(spec: SequenceSpec) -> None:
    """Trigger kernel compilation in this process (before forking workers)."""
    if _kernels.HAVE_NUMBA:
        _kernels.perrin_residue_u64(97)
        if not _is_perrin_spec(spec) and _kernel_ok(spec, 100):
            import numpy as np

            block = np.array(build_block_matrix(spec).entries, dtype=np.int64)
            init = np.array(spec.initial_power_sums, dtype=np.int64)
            out = np.empty(8, dtype=np.int64)
            comp = np.ones(1, dtype=np.uint8)
            _kernels.scan_generic(95, 96, comp, block, init, spec.trace_offset, out)


def scan_range(
    spec: SequenceSpec,
    lo: int,
    hi: int,
    processes: int = 1,
    progress=None,
) -> list[int]:
    """All composite n in [lo, hi) passing the spec's test, sorted.

    `progress`, when given, is called as progress(done_chunks, total_chunks)
    after each chunk completes.
    """
    lo = max(lo, 2)
    if hi <= lo:
        raise ValueError(f"empty range [{lo}, {hi})")
    if processes < 1:
        raise ValueError("process count must be >= 1")
    base_primes = primes_up_to(math.isqrt(hi - 1) + 1)
    chunks = []
    start = lo
    while start < hi:
        end = min(start + CHUNK_SIZE, hi)
        chunks.append((spec, start, end, base_primes))
        start = end
    results: list[int] = []
    warm_kernels(spec)
    if processes == 1 or len(chunks) == 1:
        for idx, chunk in enumerate(chunks):
            results.extend(_scan_chunk(chunk))
            if progress:
                progress(idx + 1, len(chunks))
    else:
        with Pool(processes) as pool:
            for idx, part in enumerate(pool.imap(_scan_chunk, chunks)):
                results.extend(part)
                if progress:
                    progress(idx + 1, len(chunks))
    return sorted(results)


def is_pseudoprime(spec: SequenceSpec, n: int) -> bool:
    """Composite and passing: one-off form of what scan_range collects."""
    from .baseline import is_prime

    if _is_perrin_spec(spec):
        passing = is_perrin_probable(n)
    else:
        passing = passes_test(spec, n)
    return passing and not is_prime(n)
