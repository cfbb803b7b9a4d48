"""Prime-likelihood heuristics: Mertens products, exclusion sets, L values,
scale factors, the twin prime constant, and the Omega series.

Two evaluation domains are supported for the literal product definition of L:
``exact_rational`` (integer product trees, one reduced Fraction) and
``log_domain`` (compensated sums of ln terms). Both enumerate the same primes
up to the same exact cutoff floor(x^c), so they agree to float precision
wherever both run; cutoffs beyond the sieve raise :class:`CapabilityError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Union

import numpy as np

from primorial_lab import intops
from primorial_lab.bignum import UniversalPrimorial, realize
from primorial_lab.errors import (
    CapabilityError,
    DegenerateInputError,
    DomainError,
    RangeError,
    ResourceLimitError,
)
from primorial_lab.prime_engine import PrimeTable

# Euler-Mascheroni constant, 50 digits (band checks need far fewer).
EULER_GAMMA = 0.57721566490153286060651209008240243104215933593992

# zeta(2) at the 6-significant-digit precision used by the published
# elementary-bound derivation; the full-precision value is reported alongside.
ZETA2_PUBLISHED = 1.64494
ZETA2 = math.pi * math.pi / 6

# 0.796775 * log x / x < 1/pi(x) < log x / x, valid for x >= 17.
PI_RECIPROCAL_LOWER_COEFF = 0.796775

EXACT_MERTENS_CUTOFF = 10_000
EXACT_PRODUCT_CEILING = 1_000_000

Domain = Literal["exact_rational", "log_domain"]


@dataclass(frozen=True)
class HeuristicParams:
    """k in {1, 2}, cutoff exponent c in [1/2, 1], and the evaluation domain."""

    k: int
    c: float = 0.5
    domain: Domain = "log_domain"

    def __post_init__(self) -> None:
        if self.k not in (1, 2):
            raise DomainError("k must be 1 or 2")
        if not 0.5 <= self.c <= 1.0:
            raise DomainError("c must lie in [1/2, 1]")
        if self.domain not in ("exact_rational", "log_domain"):
            raise DomainError(f"unknown evaluation domain {self.domain!r}")


@dataclass(frozen=True)
class ExclusionSet:
    """Primes known not to divide the generating x (they divide x-g but not g)."""

    primes: tuple[int, ...]


@dataclass(frozen=True)
class ThetaFactor:
    """The constant relating L to (log p_n / log x)^k at the given cutoffs."""

    k: int
    c: float
    x_cutoff: int
    n: int
    value: float


@dataclass(frozen=True)
class OmegaValue:
    N: int
    value: float


@dataclass(frozen=True)
class OmegaBounds:
    lower: float
    upper: float
    partial_17: float
    tail: float
    tail_full_precision: float


def mertens_product(
    table: PrimeTable, x_cutoff: int, k: int, exact: bool = False
) -> Union[float, Fraction]:
    """prod_{p <= x_cutoff, p > k} (p - k)/p.

    The float path sums ln terms; the exact path is limited to small cutoffs
    where the rational stays manageable.
    """
    if k not in (1, 2):
        raise DomainError("k must be 1 or 2")
    if x_cutoff > table.limit:
        raise RangeError(f"cutoff {x_cutoff} exceeds sieve limit {table.limit}")
    primes = [p for p in table.prime_list(x_cutoff) if p > k]
    if exact:
        if x_cutoff > EXACT_MERTENS_CUTOFF:
            raise ResourceLimitError(
                f"exact rational Mertens product capped at cutoff {EXACT_MERTENS_CUTOFF}"
            )
        return intops.exact_ratio(
            intops.product_tree([p - k for p in primes]), intops.product_tree(primes)
        )
    return math.exp(_log_restricted_product(primes, k))


def _log_restricted_product(primes: list[int], k: int) -> float:
    """Compensated sum of ln((p-k)/p) over the given primes (all > k)."""
    return math.fsum(math.log(p - k) - math.log(p) for p in primes)


def exclusion_set(table: PrimeTable, x: int, g: int) -> ExclusionSet:
    """Primes dividing x - g but not |g|, via trial division over the sieve."""
    if x <= abs(g):
        raise DomainError("require x > |g|")
    m = x - g
    found: list[int] = []
    for p in table.prime_list(min(table.limit, math.isqrt(m) + 1)):
        if m % p == 0:
            found.append(p)
            while m % p == 0:
                m //= p
        if m == 1:
            break
    if m > 1:
        # The cofactor survived all sieved primes; it is prime iff it is
        # below the square of the trial bound.
        if m <= table.limit * table.limit:
            found.append(m)
        else:
            raise CapabilityError(
                f"cannot complete the factorization of x-g (cofactor ~1e{len(str(m)) - 1})"
            )
    g_abs = abs(g)
    return ExclusionSet(tuple(p for p in sorted(found) if g_abs % p != 0))


def exclusion_set_structural(table: PrimeTable, u: UniversalPrimorial) -> ExclusionSet:
    """Exclusion set of a universal primorial without factoring the value.

    x - g = (N/2) * p_n#, so the candidate primes are those <= p_n plus the
    prime divisors of N, minus any divisor of |g| (relevant for g in {2, 4}).
    """
    base = set(table.prime_list(table.nth_prime(u.n)))
    m = u.N
    for p in table.prime_list(min(table.limit, math.isqrt(m) + 1)):
        if m % p == 0:
            base.add(p)
            while m % p == 0:
                m //= p
        if m == 1:
            break
    if m > 1:
        base.add(m)
    if u.N % 2 == 1:
        base.discard(2)  # N * (p_n#/2) is odd
    g_abs = abs(u.g)
    return ExclusionSet(tuple(p for p in sorted(base) if g_abs % p != 0))


def _resolve_x_spec(
    table: PrimeTable, n: int, x_spec: Optional[UniversalPrimorial]
) -> UniversalPrimorial:
    if x_spec is None:
        return UniversalPrimorial(N=2, n=n, g=1)
    if x_spec.n != n:
        raise DomainError(f"x_spec.n={x_spec.n} disagrees with n={n}")
    return x_spec


def likelihood(
    table: PrimeTable,
    n: int,
    params: HeuristicParams,
    x_spec: Optional[UniversalPrimorial] = None,
) -> Union[float, Fraction]:
    """L_k for x = K*p_n# + g (default x = p_n# + 1), by the literal products.

    Values are reported raw, never clamped to [0, 1]; small-n values may reach
    or exceed 1.
    """
    u = _resolve_x_spec(table, n, x_spec)
    x = realize(table, u)
    cutoff = intops.floor_power(x, params.c)
    if cutoff < 2:
        raise DegenerateInputError(f"cutoff floor(x^c) = {cutoff} is below the first prime")
    if cutoff > table.limit:
        raise CapabilityError(
            f"cutoff floor(x^c) ~ 1e{len(str(cutoff)) - 1} exceeds the sieve limit {table.limit}"
        )
    excl = exclusion_set_structural(table, u)
    return _likelihood_from_parts(table, cutoff, excl, params)


def _likelihood_from_parts(
    table: PrimeTable, cutoff: int, excl: ExclusionSet, params: HeuristicParams
) -> Union[float, Fraction]:
    k = params.k
    cut_primes = [p for p in table.prime_list(cutoff) if p > k]
    # The p > k guard applies to the exclusion product as well (otherwise the
    # factor at p = k would vanish and L would be undefined for k = 2).
    ex_primes = [p for p in excl.primes if p > k]
    if params.domain == "exact_rational":
        if cutoff > EXACT_PRODUCT_CEILING:
            raise CapabilityError(
                f"exact rational evaluation capped at cutoff {EXACT_PRODUCT_CEILING}; got {cutoff}"
            )
        num = intops.product_tree([p - k for p in cut_primes])
        den = intops.product_tree(cut_primes)
        ex_num = intops.product_tree([p - k for p in ex_primes])
        ex_den = intops.product_tree(ex_primes)
        return intops.exact_ratio(num * ex_den, den * ex_num)
    log_l = _log_restricted_product(cut_primes, k) - _log_restricted_product(ex_primes, k)
    return math.exp(log_l)


def likelihood_for_value(
    table: PrimeTable, x: int, g: int, params: HeuristicParams
) -> Union[float, Fraction]:
    """L_k for an arbitrary odd x, with the exclusion set factored from x - g."""
    cutoff = intops.floor_power(x, params.c)
    if cutoff < 2:
        raise DegenerateInputError(f"cutoff floor(x^c) = {cutoff} is below the first prime")
    if cutoff > table.limit:
        raise CapabilityError(f"cutoff {cutoff} exceeds sieve limit {table.limit}")
    return _likelihood_from_parts(table, cutoff, exclusion_set(table, x, g), params)


def log_x_of(table: PrimeTable, u: UniversalPrimorial) -> float:
    """ln(K*p_n# + g) without big-integer work: theta(p_n) + ln K + ln(1 + g/(K p_n#))."""
    theta = float(table.theta_prefix[u.n - 1])
    log_k = math.log(u.N / 2)
    rel = u.g * math.exp(-theta - log_k) if theta + log_k < 700 else 0.0
    return theta + log_k + math.log1p(rel)


def likelihood_asymptotic(
    table: PrimeTable,
    n: int,
    params: HeuristicParams,
    x_spec: Optional[UniversalPrimorial] = None,
) -> float:
    """theta_k * (ln p_n / ln x)^k - the closed form usable at any scale.

    For k = 2 the twin-constant ratio is taken at the sieve limit, where the
    partial product has converged far below float precision.
    """
    u = _resolve_x_spec(table, n, x_spec)
    pn = table.nth_prime(n)
    log_x = log_x_of(table, u)
    th = theta_factor(table, HeuristicParams(params.k, params.c), table.limit, n).value
    return th * (math.log(pn) / log_x) ** params.k


def _log_twin_ratio_product(primes: list[int]) -> float:
    """Compensated sum of ln(p(p-2)/(p-1)^2) over odd primes."""
    arr = np.array([p for p in primes if p > 2], dtype=np.float64)
    if len(arr) == 0:
        return 0.0
    return math.fsum(np.log(arr) + np.log(arr - 2) - 2 * np.log(arr - 1))


def twin_prime_constant(table: PrimeTable, cutoff: int) -> float:
    """prod_{2 < p <= cutoff} p(p-2)/(p-1)^2, monotone decreasing in the cutoff."""
    if cutoff > table.limit:
        raise RangeError(f"cutoff {cutoff} exceeds sieve limit {table.limit}")
    return math.exp(_log_twin_ratio_product(table.prime_list(cutoff)))


def theta_factor(
    table: PrimeTable, params: HeuristicParams, x_cutoff: int, n: int
) -> ThetaFactor:
    """theta_k: 1/c for k = 1; the twin-ratio quotient divided by c^2 for k = 2."""
    if n < 2:
        raise DomainError("theta_factor requires n > 1")
    if x_cutoff > table.limit:
        raise RangeError(f"cutoff {x_cutoff} exceeds sieve limit {table.limit}")
    if params.k == 1:
        value = 1.0 / params.c
    else:
        pn = table.nth_prime(n)
        log_ratio = _log_twin_ratio_product(table.prime_list(x_cutoff)) - _log_twin_ratio_product(
            table.prime_list(pn)
        )
        value = math.exp(log_ratio) / (params.c * params.c)
    return ThetaFactor(k=params.k, c=params.c, x_cutoff=x_cutoff, n=n, value=value)


def alpha(table: PrimeTable, x_log: float, k: int, n: int) -> float:
    """(ln p_n# / ln x)^k = (theta(p_n)/ln x)^k."""
    if x_log <= 0:
        raise DomainError("x_log must be positive")
    theta = float(table.theta_prefix[n - 1])
    return (theta / x_log) ** k


def omega_sum(table: PrimeTable, N: int) -> OmegaValue:
    """Sum over the first N primes of (ln p / p)^2 (exactly-rounded summation)."""
    if N < 1 or N > table.prime_count:
        raise RangeError(f"omega_sum({N}) requires {N} sieved primes, table holds {table.prime_count}")
    p = table.primes[:N].astype(np.float64)
    return OmegaValue(N=N, value=math.fsum((np.log(p) / p) ** 2))


def omega_elementary_bounds(table: PrimeTable) -> OmegaBounds:
    """Elementary bracket for the full Omega series.

    Splits at the 17th prime (59): the head is summed exactly; the tail
    sum of 1/n^2 enters as-is on the lower side and scaled by the reciprocal
    square of the 0.796775 coefficient on the upper side. The published
    bracket is reproduced with the 6-digit zeta(2) constant; the
    full-precision tail is carried as a diagnostic.
    """
    partial = omega_sum(table, 17).value
    h17 = math.fsum(1.0 / (i * i) for i in range(1, 18))
    tail = ZETA2_PUBLISHED - h17
    tail_full = ZETA2 - h17
    upper_scale = 1.0 / (PI_RECIPROCAL_LOWER_COEFF**2)
    return OmegaBounds(
        lower=partial + tail,
        upper=partial + upper_scale * tail,
        partial_17=partial,
        tail=tail,
        tail_full_precision=tail_full,
    )
