# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve kernels; must stay in lockstep with `_sieve_py`.

Same contract as the pure module: build_d_spf and lambda_trajectory_block
return the identical int32 arrays, just faster.
"""

from libc.math cimport log

import numpy as np


def build_d_spf(long long limit):
    if limit < 2:
        raise ValueError("limit must be >= 2")
    d_arr = np.zeros(limit + 1, dtype=np.int32)
    spf_arr = np.zeros(limit + 1, dtype=np.int32)
    # Rosser-style overallocation for the prime list
    cdef long long prime_cap = <long long>(1.3 * (limit + 1) / log(limit + 1.0)) + 64
    primes_arr = np.empty(prime_cap, dtype=np.int32)
    cdef int[::1] d = d_arr
    cdef int[::1] spf = spf_arr
    cdef int[::1] primes = primes_arr
    cdef long long i, ip, mm
    cdef long long nprimes = 0
    cdef long long j
    cdef int t, di, si, p
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = <int>i
            primes[nprimes] = <int>i
            nprimes += 1
            if i == 2:
                d[2] = 1
            else:
                mm = i + 1
                t = 0
                while (mm & 1) == 0:
                    mm >>= 1
                    t += 1
                d[i] = t + d[mm]
        di = d[i]
        si = spf[i]
        j = 0
        while j < nprimes:
            p = primes[j]
            if p > si:
                break
            ip = i * p
            if ip > limit:
                break
            spf[ip] = p
            d[ip] = di + d[p]
            j += 1
    return d_arr, spf_arr


def lambda_trajectory_block(int[::1] spf, long long n_max, long long cap):
    cdef long long limit = spf.shape[0] - 1
    if not 1 <= n_max <= limit:
        raise ValueError("n_max out of table range")
    out_arr = np.empty(n_max + 1, dtype=np.int32)
    cdef int[::1] out = out_arr
    cdef long long n, m, mm, v, pk, steps
    cdef long long p
    out[0] = -1
    out[1] = 0
    for n in range(2, n_max + 1):
        m = n
        steps = 0
        while m != 2:
            v = 1
            mm = m
            while mm > 1:
                p = spf[mm]
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
        out[n] = <int>steps
    return out_arr
