"""Fallback sieve kernels used when the compiled extension is unavailable.

Same contracts as ``_fastsieve``: ``sieve_primes`` returns an int64 array of
primes, ``log_prefix`` returns Kahan-compensated cumulative sums of ln p.
"""

from __future__ import annotations

import math

import numpy as np


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (numpy boolean sieve)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def log_prefix(primes: np.ndarray) -> np.ndarray:
    """Kahan-compensated cumulative sums of ln p over a prime array."""
    logs = np.log(primes.astype(np.float64))
    out = np.empty(len(primes), dtype=np.float64)
    total = 0.0
    comp = 0.0
    for i, v in enumerate(logs):
        y = float(v) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        out[i] = total
    return out
