#!/usr/bin/env python3
"""Benchmark the compiled sieve kernel against the numpy/pure-Python fallback,
and the two big-integer arithmetic paths used by the primality tests.

Usage:
    python benchmarks/bench_backends.py [--limit 10000000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_sieve(limit: int, repeat: int) -> list[tuple[str, float, float]]:
    from primorial_lab import _pysieve

    rows = []
    try:
        from primorial_lab import _fastsieve

        primes = _fastsieve.sieve_primes(limit)
        rows.append(
            (
                "cython",
                best_of(lambda: _fastsieve.sieve_primes(limit), repeat),
                best_of(lambda: _fastsieve.log_prefix(primes), repeat),
            )
        )
    except ImportError:
        print("compiled kernel not available; benchmarking the fallback only")
    primes = _pysieve.sieve_primes(limit)
    rows.append(
        (
            "python",
            best_of(lambda: _pysieve.sieve_primes(limit), repeat),
            best_of(lambda: _pysieve.log_prefix(primes), repeat),
        )
    )
    return rows


def bench_bigint(repeat: int) -> list[tuple[str, float]]:
    from primorial_lab import _pysieve

    primes = [int(p) for p in _pysieve.sieve_primes(8000)[:1000]]
    value = 1
    for p in primes:
        value *= p
    candidate = value + 1
    rows = [("int pow", best_of(lambda: pow(2, candidate - 1, candidate), repeat))]
    try:
        import gmpy2

        mc = gmpy2.mpz(candidate)
        rows.append(("gmpy2 powmod", best_of(lambda: gmpy2.powmod(2, mc - 1, mc), repeat)))
    except ImportError:
        pass
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=10_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"sieve kernels at limit {args.limit} (best of {args.repeat}):")
    for name, t_sieve, t_prefix in bench_sieve(args.limit, args.repeat):
        print(f"  {name:8s} sieve {t_sieve * 1000:9.1f} ms   log-prefix {t_prefix * 1000:9.1f} ms")

    print("base-2 Fermat step at the p_1000#+1 scale (3393 digits):")
    for name, t in bench_bigint(args.repeat):
        print(f"  {name:14s} {t * 1000:9.1f} ms")


if __name__ == "__main__":
    main()
