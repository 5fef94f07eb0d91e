"""Native-width compiled kernels (numba) for scan-scale workloads.

Everything here mirrors an arbitrary-precision implementation elsewhere in
the package; results are bit-identical for moduli below
`perrin.engine.NATIVE_LIMIT` (2^31), where every intermediate sum of
products stays below 2^64.  All arithmetic is strictly uint64 -- mixing
signed literals into uint64 expressions would silently promote to float64
under numba and corrupt results above 2^53.

When numba is missing the package works unchanged through the pure-Python
paths; HAVE_NUMBA tells callers which world they are in.
"""

from __future__ import annotations

try:
    import numpy as np
    from numba import njit, uint64

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True)
    def perrin_residue_u64(n):
        """P_n mod n for 2 <= n < 2^31."""
        if n < 3:
            return uint64(0)  # P_2 = 2, so P_2 mod 2
        un = uint64(n)
        m = n // 3
        i = n - 3 * m
        a = uint64(1)
        b = uint64(0)
        c = uint64(0)
        nbits = 0
        mm = m
        while mm:
            nbits += 1
            mm >>= 1
        for bi in range(nbits - 1, -1, -1):
            aa = a * a
            bb = b * b
            cc = c * c
            ab = a * b
            ac = a * c
            bc = b * c
            bbm = bb % un
            # sums below stay < 2^64: at most 4 raw products of values < 2^31
            a2 = (aa + bc + bc) % un
            b2 = (bb + cc + ab + ab) % un
            c2 = (bbm + ac + ac + bc + bc) % un
            a = a2
            b = b2
            c = c2
            if (m >> bi) & 1:
                a2 = (a + b) % un
                b2 = (b + c) % un
                c2 = (a + b + c) % un
                a = a2
                b = b2
                c = c2
        if i == 0:
            return (a + a + a + b + b) % un
        if i == 1:
            return (b + b + b + c + c) % un
        return (a + a + b + b + c + c + c) % un

    @njit(cache=True)
    def scan_perrin(lo, hi, composite_mask, hits):
        """Collect composite n in [lo, hi) with n | P_n.

        composite_mask[j] marks lo+j composite; the two standard exclusion
        rules run inline before the engine.  Returns the hit count, values
        in hits[:count] in increasing order.
        """
        count = 0
        for n in range(lo, hi):
            if not composite_mask[n - lo]:
                continue
            if n & 3 == 0:
                continue
            if n % 3 == 0:
                r13 = n % 13
                if r13 != 0 and r13 != 1 and r13 != 3 and r13 != 9:
                    continue
            if perrin_residue_u64(n) == uint64(0):
                hits[count] = n
                count += 1
        return count

    @njit(cache=True)
    def power_sum_u64(n, block, init, digit_bits):
        """g_n mod n by Horner base-2^digit_bits block-matrix powers.

        block is the k x k jump matrix (int64, any sign), init the first k
        sequence values.  Mirrors perrin.recurrence.power_sum_mod.
        """
        k = block.shape[0]
        un = uint64(n)
        m = n // k
        i = n - m * k
        if m == 0:
            v = init[i] % n
            if v < 0:
                v += n
            return uint64(v)
        base = 1 << digit_bits
        pows = np.empty((base, k, k), dtype=np.uint64)
        for r in range(k):
            for c in range(k):
                v = block[r, c] % n
                if v < 0:
                    v += n
                pows[1, r, c] = uint64(v)
                pows[0, r, c] = uint64(1 % n) if r == c else uint64(0)
        for j in range(2, base):
            for r in range(k):
                for c in range(k):
                    s = uint64(0)
                    for t in range(k):
                        s += (pows[j - 1, r, t] * pows[1, t, c]) % un
                    pows[j, r, c] = s % un
        ndig = 0
        mm = m
        while mm:
            ndig += 1
            mm >>= digit_bits
        acc = np.empty((k, k), dtype=np.uint64)
        tmp = np.empty((k, k), dtype=np.uint64)
        mask = base - 1
        first = (m >> (digit_bits * (ndig - 1))) & mask
        for r in range(k):
            for c in range(k):
                acc[r, c] = pows[first, r, c]
        for di in range(ndig - 2, -1, -1):
            d = (m >> (digit_bits * di)) & mask
            for _ in range(digit_bits):
                for r in range(k):
                    for c in range(k):
                        s = uint64(0)
                        for t in range(k):
                            s += (acc[r, t] * acc[t, c]) % un
                        tmp[r, c] = s % un
                acc[:, :] = tmp
            if d:
                for r in range(k):
                    for c in range(k):
                        s = uint64(0)
                        for t in range(k):
                            s += (acc[r, t] * pows[d, t, c]) % un
                        tmp[r, c] = s % un
                acc[:, :] = tmp
        s = uint64(0)
        for t in range(k):
            v = init[t] % n
            if v < 0:
                v += n
            s += (acc[i, t] * uint64(v)) % un
        return s % un

    @njit(cache=True)
    def scan_generic(lo, hi, composite_mask, block, init, offset, hits):
        """Collect composite n in [lo, hi) passing the n | (g_n - offset^n) rule."""
        count = 0
        for n in range(lo, hi):
            if not composite_mask[n - lo]:
                continue
            g = power_sum_u64(n, block, init, 3)
            un = uint64(n)
            if offset == 0:
                target = uint64(0)
            elif offset == 1:
                target = uint64(1 % n)
            else:
                r = offset % n
                if r < 0:
                    r += n
                b = uint64(r)
                acc = uint64(1 % n)
                e = n
                while e:
                    if e & 1:
                        acc = (acc * b) % un
                    b = (b * b) % un
                    e >>= 1
                target = acc
            if g == target:
                hits[count] = n
                count += 1
        return count
