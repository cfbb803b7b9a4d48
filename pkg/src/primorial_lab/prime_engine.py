"""Sieved primes with exact prime counting, Chebyshev theta, and twin-pair queries.

A :class:`PrimeTable` is immutable after construction and safe to share across
threads; construction is single-threaded. The sieve kernel is the compiled
extension when available (see ``primorial_lab._backend``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from primorial_lab import _backend
from primorial_lab.errors import DomainError, RangeError, ResourceLimitError

DEFAULT_MEMORY_CEILING = 200_000_000


@dataclass(frozen=True)
class PrimeStats:
    """Exact pi(x) and theta(x) = sum of ln p over p <= x."""

    x: int
    pi: int
    theta: float


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray = field(repr=False)
    theta_prefix: np.ndarray = field(repr=False)

    @property
    def prime_count(self) -> int:
        return len(self.primes)

    def nth_prime(self, n: int) -> int:
        """The n-th prime, 1-indexed (p_1 = 2)."""
        if n < 1 or n > len(self.primes):
            raise RangeError(
                f"n={n} out of range: sieve to limit {self.limit} holds "
                f"{len(self.primes)} primes; a larger sieve is required"
            )
        return int(self.primes[n - 1])

    def pi(self, x: int) -> int:
        if x > self.limit:
            raise RangeError(f"x={x} exceeds sieve limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def theta(self, x: int) -> float:
        """Chebyshev theta: sum of ln p over primes p <= x."""
        k = self.pi(x)
        return float(self.theta_prefix[k - 1]) if k else 0.0

    def stats_at(self, x: int) -> PrimeStats:
        return PrimeStats(x=x, pi=self.pi(x), theta=self.theta(x))

    def primes_below_sqrt(self, x: int) -> list[int]:
        """The set {p : p*p <= x}, by integer comparison only."""
        root = math.isqrt(x)
        if root > self.limit:
            raise RangeError(
                f"primes_below_sqrt({x}) needs the sieve to reach {root}, limit is {self.limit}"
            )
        return self.prime_list(root)

    def prime_list(self, upper: int) -> list[int]:
        """Primes <= upper as plain ints (upper must be within the sieve)."""
        if upper > self.limit:
            raise RangeError(f"upper={upper} exceeds sieve limit {self.limit}")
        cut = int(np.searchsorted(self.primes, upper, side="right"))
        return [int(p) for p in self.primes[:cut]]

    def twin_count(self, x: int) -> int:
        """Number of primes p <= x with p + 2 also prime."""
        if x + 2 > self.limit:
            raise RangeError(
                f"twin_count({x}) needs the sieve to reach {x + 2}, limit is {self.limit}"
            )
        cut = int(np.searchsorted(self.primes, x, side="right"))
        lower = self.primes[:cut]
        pos = np.searchsorted(self.primes, lower + 2)
        pos = np.minimum(pos, len(self.primes) - 1)
        return int(np.count_nonzero(self.primes[pos] == lower + 2))


def sieve_up_to(limit: int, memory_ceiling: int = DEFAULT_MEMORY_CEILING) -> PrimeTable:
    """Sieve of Eratosthenes up to ``limit`` with cumulative theta sums."""
    if limit < 2:
        raise DomainError("sieve limit must be at least 2")
    if limit > memory_ceiling:
        raise ResourceLimitError(
            f"sieve limit {limit} exceeds the configured ceiling {memory_ceiling}"
        )
    primes = _backend.sieve_primes(limit)
    theta_prefix = _backend.log_prefix(primes)
    primes.setflags(write=False)
    theta_prefix.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes, theta_prefix=theta_prefix)
