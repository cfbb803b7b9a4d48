# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: odd-only Eratosthenes sieve and compensated log prefix sums."""

import numpy as np

cimport numpy as cnp
from libc.math cimport log as clog

cnp.import_array()


def sieve_primes(long long limit):
    """All primes <= limit as an int64 array (odd-only flag storage)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    if limit == 2:
        return np.array([2], dtype=np.int64)

    # flags[i] marks 2*i + 3; even numbers are never stored
    cdef long long size = (limit - 1) // 2
    flags_arr = np.ones(size, dtype=np.uint8)
    cdef unsigned char[::1] flags = flags_arr
    cdef long long i, p, start, j, count

    i = 0
    while True:
        p = 2 * i + 3
        if p * p > limit:
            break
        if flags[i]:
            start = (p * p - 3) // 2
            j = start
            while j < size:
                flags[j] = 0
                j += p
        i += 1

    count = 1  # the prime 2
    for i in range(size):
        if flags[i]:
            count += 1

    out_arr = np.empty(count, dtype=np.int64)
    cdef long long[::1] out = out_arr
    out[0] = 2
    j = 1
    for i in range(size):
        if flags[i]:
            out[j] = 2 * i + 3
            j += 1
    return out_arr


def log_prefix(cnp.int64_t[::1] primes):
    """Kahan-compensated cumulative sums of ln p over a prime array."""
    cdef Py_ssize_t n = primes.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double total = 0.0, comp = 0.0, y, t
    cdef Py_ssize_t i
    for i in range(n):
        y = clog(<double> primes[i]) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        out[i] = total
    return out_arr
