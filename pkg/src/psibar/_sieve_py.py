"""Pure-Python sieve kernels.

Reference implementation of the kernel contract; `_sieve_fast.pyx` is the
compiled twin and must produce bit-identical arrays.  Keep the two in
lockstep.

Contract
--------
build_d_spf(limit) -> (d, spf)
    int32 arrays of length limit + 1.  spf[n] is the smallest prime factor
    of n (spf[0] = spf[1] = 0); d[n] is the completely additive companion
    of the iteration count (d[1] = 0, d[2] = 1, d at an odd prime p equals
    d[p + 1]).

lambda_trajectory_block(spf, n_max, cap) -> out
    int32 array of length n_max + 1; out[n] is the number of halved-map
    steps from n to 2, measured by actually iterating inside the spf table.
    out[0] = -1; out[n] = -1 when an iterate leaves the table or cap is
    exceeded (callers recompute those by other means).
"""

from __future__ import annotations

import numpy as np


def build_d_spf(limit: int) -> tuple[np.ndarray, np.ndarray]:
    if limit < 2:
        raise ValueError("limit must be >= 2")
    d = [0] * (limit + 1)
    spf = [0] * (limit + 1)
    primes = []
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            primes.append(i)
            if i == 2:
                d[2] = 1
            else:
                m = i + 1
                t = (m & -m).bit_length() - 1
                # odd part of i + 1 is <= (i + 1) / 2 < i, so d there is known
                d[i] = t + d[m >> t]
        di = d[i]
        si = spf[i]
        for p in primes:
            if p > si:
                break
            ip = i * p
            if ip > limit:
                break
            spf[ip] = p
            d[ip] = di + d[p]
    return np.array(d, dtype=np.int32), np.array(spf, dtype=np.int32)


def lambda_trajectory_block(spf: np.ndarray, n_max: int, cap: int) -> np.ndarray:
    limit = len(spf) - 1
    if not 1 <= n_max <= limit:
        raise ValueError("n_max out of table range")
    spf_l = spf.tolist()  # C-int indexing is slow on ndarray in a tight loop
    out = np.empty(n_max + 1, dtype=np.int32)
    out[0] = -1
    out[1] = 0
    for n in range(2, n_max + 1):
        m = n
        steps = 0
        while m != 2:
            v = 1
            mm = m
            while mm > 1:
                p = spf_l[mm]
                pk = 1
                while mm % p == 0:
                    mm //= p
                    pk *= p
                if p == 2:
                    v *= pk >> 1
                else:
                    v *= (pk // p) * (p + 1)
            m = v
            steps += 1
            if m > limit or steps > cap:
                steps = -1
                break
        out[n] = steps
    return out
