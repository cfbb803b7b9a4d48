"""Primorials, universal primorials, and tiered primality testing.

Verdict tiers (deterministic for a given input):

* x < 2: composite by convention (no witness).
* x < 10^7: trial division; exact, witness is the smallest factor.
* 10^7 <= x < 3,317,044,064,679,887,385,961,981: Miller-Rabin with the
  first 13 primes as bases - a published base set that is deterministic
  over this whole range - classification ``prime``/``composite``.
* larger: Baillie-PSW (strong base-2 test + strong Lucas test with
  Selfridge's parameter choice), classification ``probable_prime``/
  ``composite``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterator, Literal, Optional

from primorial_lab import intops
from primorial_lab.errors import DomainError, RangeError, ResourceLimitError
from primorial_lab.prime_engine import PrimeTable

PRIMORIAL_MAX_N = 20_000
TRIAL_DIVISION_CEILING = 10_000_000
# Largest range for which MR with the first 13 prime bases is deterministic.
DETERMINISTIC_MR_CEILING = 3_317_044_064_679_887_385_961_981
MR_BASE_SET = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SCREEN_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

Classification = Literal["prime", "composite", "probable_prime"]
Method = Literal["trial_division", "deterministic_mr", "bpsw"]


@dataclass(frozen=True)
class Primorial:
    """p_n# with its index and exact natural log (theta at p_n)."""

    n: int
    value: int
    log_value: float


@dataclass(frozen=True)
class UniversalPrimorial:
    """K*p_n# + g with K = N/2 and the parity rule on g."""

    N: int
    n: int
    g: int

    def __post_init__(self) -> None:
        if self.N < 1 or self.n < 1:
            raise DomainError("N and n must be positive")
        if self.N % 2 == 0:
            if self.g not in (-1, 1):
                raise DomainError(f"g={self.g} incompatible with N parity: even N needs g in {{-1, +1}}")
        elif self.g not in (2, 4):
            raise DomainError(f"g={self.g} incompatible with N parity: odd N needs g in {{2, 4}}")


@dataclass(frozen=True)
class PrimalityVerdict:
    classification: Classification
    method: Method
    witness: Optional[int]
    elapsed_ms: int

    @property
    def is_prime_like(self) -> bool:
        return self.classification in ("prime", "probable_prime")


def primorial(table: PrimeTable, n: int, max_n: int = PRIMORIAL_MAX_N) -> Primorial:
    """Exact product of the first n primes via a balanced product tree."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n > max_n:
        raise ResourceLimitError(f"primorial index {n} exceeds the configured maximum {max_n}")
    if n == 0:
        return Primorial(0, 1, 0.0)
    if n > table.prime_count:
        raise RangeError(
            f"primorial({n}) needs {n} sieved primes, table holds {table.prime_count}"
        )
    value = intops.product_tree([int(p) for p in table.primes[:n]])
    return Primorial(n, value, float(table.theta_prefix[n - 1]))


def primorial_values(table: PrimeTable, n_max: int) -> Iterator[tuple[int, int]]:
    """(n, p_n#) for n = 1..n_max by incremental multiplication."""
    if n_max > table.prime_count:
        raise RangeError(f"need {n_max} sieved primes, table holds {table.prime_count}")
    value = 1
    for n in range(1, n_max + 1):
        value *= int(table.primes[n - 1])
        yield n, value


def log_primorial(table: PrimeTable, n: int) -> float:
    """ln(p_n#), read from the sieve's cumulative log sums (no big-integer work)."""
    if n < 1 or n > table.prime_count:
        raise RangeError(f"log_primorial({n}) requires {n} sieved primes, table holds {table.prime_count}")
    return float(table.theta_prefix[n - 1])


def realize(table: PrimeTable, u: UniversalPrimorial) -> int:
    """The integer K*p_n# + g; for odd N computed as N*(p_n#/2) + g."""
    pn_sharp = primorial(table, u.n).value
    if u.N % 2 == 0:
        value = (u.N // 2) * pn_sharp + u.g
    else:
        value = u.N * (pn_sharp // 2) + u.g
    if value <= 0 or value % 2 == 0 or u.g >= value:
        raise DomainError(f"realized value {value} is not an odd positive integer above g")
    return value


def _trial_division(x: int) -> PrimalityVerdict | None:
    """Exact verdict for x < TRIAL_DIVISION_CEILING (None means out of tier)."""
    if x in (2, 3):
        return PrimalityVerdict("prime", "trial_division", None, 0)
    if x % 2 == 0:
        return PrimalityVerdict("composite", "trial_division", 2, 0)
    d = 3
    while d * d <= x:
        if x % d == 0:
            return PrimalityVerdict("composite", "trial_division", d, 0)
        d += 2
    return PrimalityVerdict("prime", "trial_division", None, 0)


def _mr_strong_test(x: int, base: int) -> bool:
    """Strong probable-prime test of odd x > 2 to the given base."""
    d = x - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    a = base % x
    if a == 0:
        return True
    xz = intops.as_fast_int(x)
    y = intops.as_fast_int(intops.powmod(a, d, x))
    if y == 1 or y == x - 1:
        return True
    for _ in range(s - 1):
        y = (y * y) % xz
        if y == x - 1:
            return True
    return False


def _selfridge_d(x: int) -> tuple[int | None, int | None]:
    """First D in 5, -7, 9, -11, ... with Jacobi(D, x) = -1.

    Returns (D, None) on success, (None, factor_or_None) when x is proven
    composite during the search (perfect square or a shared factor).
    """
    d = 5
    while True:
        j = intops.jacobi(d, x)
        if j == 0:
            if abs(d) != x:
                return None, math.gcd(abs(d), x)
            return d, None
        if j == -1:
            return d, None
        d = -(d + 2) if d > 0 else -(d - 2)
        if abs(d) == 13 and intops.is_perfect_square(x):
            return None, None


def _lucas_strong_test(x: int) -> tuple[bool, int | None]:
    """Strong Lucas probable-prime test with Selfridge's parameters.

    Returns (passed, witness): a witness is a nontrivial factor discovered
    during parameter selection, when one exists.
    """
    d, factor = _selfridge_d(x)
    if d is None:
        return False, factor if factor not in (None, x) else None
    q = (1 - d) // 4

    # x + 1 = k * 2^s with k odd
    k = x + 1
    s = (k & -k).bit_length() - 1
    k >>= s

    # Binary chain for U_k, V_k (mod x) with P = 1, tracking Q^k.
    xz = intops.as_fast_int(x)
    u = intops.as_fast_int(1)
    v = intops.as_fast_int(1)
    qk = intops.as_fast_int(q % x)
    for bit in bin(k)[3:]:
        u, v = (u * v) % xz, (v * v - 2 * qk) % xz
        qk = (qk * qk) % xz
        if bit == "1":
            u, v = u + v, v + u * d
            if u & 1:
                u += xz
            if v & 1:
                v += xz
            u, v = (u >> 1) % xz, (v >> 1) % xz
            qk = (qk * q) % xz

    if u == 0 or v == 0:
        return True, None
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % xz
        if v == 0:
            return True, None
        qk = (qk * qk) % xz
    return False, None


def is_prime(x: int) -> PrimalityVerdict:
    """Tiered primality verdict; deterministic for a given input."""
    if x < 0:
        raise DomainError("primality is defined for nonnegative integers")
    start = time.perf_counter()

    def done(classification: Classification, method: Method, witness: int | None) -> PrimalityVerdict:
        elapsed = int((time.perf_counter() - start) * 1000)
        return PrimalityVerdict(classification, method, witness, elapsed)

    if x < 2:
        return done("composite", "trial_division", None)
    if x < TRIAL_DIVISION_CEILING:
        v = _trial_division(x)
        assert v is not None
        return done(v.classification, v.method, v.witness)

    for p in _SCREEN_PRIMES:
        if x % p == 0:
            return done("composite", "trial_division", p)

    if x < DETERMINISTIC_MR_CEILING:
        for base in MR_BASE_SET:
            if not _mr_strong_test(x, base):
                return done("composite", "deterministic_mr", base)
        return done("prime", "deterministic_mr", None)

    if not _mr_strong_test(x, 2):
        return done("composite", "bpsw", 2)
    passed, witness = _lucas_strong_test(x)
    if not passed:
        return done("composite", "bpsw", witness)
    return done("probable_prime", "bpsw", None)
