"""Searches and reproducible tables: primorial-prime census, twin census,
expected-count tables, and the enumeration/brute-force checks.

Search work items (one per (n, form)) run concurrently when jobs > 1; cache
writes go through the single parent process and results are assembled in
(n, form) order, so output is deterministic regardless of parallelism.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from primorial_lab import intops
from primorial_lab.bignum import UniversalPrimorial, is_prime, primorial_values, realize
from primorial_lab.bounds import LogPoint, theta_error_bound
from primorial_lab.cache import CachedVerdict, SearchCache
from primorial_lab.errors import DomainError, RangeError
from primorial_lab.heuristics import EULER_GAMMA, HeuristicParams, likelihood, omega_sum
from primorial_lab.prime_engine import PrimeTable
from primorial_lab.report import CheckReport, TableRow

SQRT_PRODUCT_THRESHOLD = 106  # largest x for which the sqrt-product inequality may fail


@dataclass(frozen=True)
class SearchRecord:
    n: int
    form: str  # "minus" | "plus"
    classification: str
    method: str
    elapsed_ms: int

    @property
    def is_prime_like(self) -> bool:
        return self.classification in ("prime", "probable_prime")


def _classify(task: tuple[int, str, int, str]) -> tuple[int, str, str, str, int, str]:
    n, form, value, digest = task
    verdict = is_prime(value)
    return n, form, verdict.classification, verdict.method, verdict.elapsed_ms, digest


def _run_tasks(
    tasks: list[tuple[int, str, int, str]],
    cache: SearchCache,
    jobs: int,
    progress: Optional[Callable[[str], None]],
) -> dict[tuple[int, str], SearchRecord]:
    out: dict[tuple[int, str], SearchRecord] = {}
    if not tasks:
        return out
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_classify, tasks, chunksize=1)
            for n, form, classification, method, elapsed, digest in results:
                cache.put(CachedVerdict(n, form, classification, method, elapsed, digest))
                out[(n, form)] = SearchRecord(n, form, classification, method, elapsed)
                if progress:
                    progress(f"{form}:{n} {classification}")
    else:
        for task in tasks:
            n, form, classification, method, elapsed, digest = _classify(task)
            cache.put(CachedVerdict(n, form, classification, method, elapsed, digest))
            out[(n, form)] = SearchRecord(n, form, classification, method, elapsed)
            if progress:
                progress(f"{form}:{n} {classification}")
    return out


def _gather(
    table: PrimeTable,
    n_max: int,
    forms: Sequence[str],
    cache: SearchCache,
    jobs: int,
    progress: Optional[Callable[[str], None]] = None,
    restrict: Optional[Callable[[int, str], bool]] = None,
) -> dict[tuple[int, str], SearchRecord]:
    """Verdicts for the requested (n, form) grid, hitting the cache first."""
    records: dict[tuple[int, str], SearchRecord] = {}
    tasks: list[tuple[int, str, int, str]] = []
    for n, pv in primorial_values(table, n_max):
        for form in forms:
            if restrict is not None and not restrict(n, form):
                continue
            value = pv - 1 if form == "minus" else pv + 1
            digest = intops.decimal_digest(value)
            hit = cache.get(n, form, digest)
            if hit is not None:
                records[(n, form)] = SearchRecord(
                    hit.n, hit.form, hit.classification, hit.method, hit.elapsed_ms
                )
            else:
                tasks.append((n, form, value, digest))
    records.update(_run_tasks(tasks, cache, jobs, progress))
    return records


def search_primorial_primes(
    table: PrimeTable,
    n_max: int,
    cache: SearchCache,
    jobs: int = 1,
    progress: Optional[Callable[[str], None]] = None,
) -> list[SearchRecord]:
    """Classify p_n# - 1 and p_n# + 1 for every n <= n_max, ordered by (n, form)."""
    records = _gather(table, n_max, ("minus", "plus"), cache, jobs, progress)
    return [records[(n, form)] for n in range(1, n_max + 1) for form in ("minus", "plus")]


def search_twins(
    table: PrimeTable,
    n_max: int,
    cache: SearchCache,
    jobs: int = 1,
    progress: Optional[Callable[[str], None]] = None,
) -> list[int]:
    """All n <= n_max with both p_n# - 1 and p_n# + 1 prime/probable-prime.

    The plus form is only tested where the minus form survived.
    """
    minus = _gather(table, n_max, ("minus",), cache, jobs, progress)
    survivors = {n for (n, _), rec in minus.items() if rec.is_prime_like}
    plus = _gather(
        table,
        n_max,
        ("plus",),
        cache,
        jobs,
        progress,
        restrict=lambda n, form: n in survivors,
    )
    return sorted(n for n in survivors if plus[(n, "plus")].is_prime_like)


def _actual_count(records: Sequence[SearchRecord], n_limit: int) -> int:
    return sum(1 for r in records if r.n <= n_limit and r.is_prime_like)


def table1(
    table: PrimeTable,
    n_list: Sequence[int],
    records: Optional[Sequence[SearchRecord]] = None,
    theta1_low: float = 1.0,
    theta1_high: float = 2.0,
) -> list[TableRow]:
    """Actual and expected primorial-prime counts up to p_N# + 1.

    Expected interval is [2*theta1_low*ln p_N, 2*theta1_high*ln p_N]; the
    final column is the 2*e^gamma*ln p_N estimate it refines.
    """
    rows = []
    for N in n_list:
        log_pn = math.log(table.nth_prime(N))
        rows.append(
            TableRow(
                N=N,
                actual=_actual_count(records, N) if records is not None else None,
                expected_low=2.0 * theta1_low * log_pn,
                expected_high=2.0 * theta1_high * log_pn,
                cg=2.0 * math.exp(EULER_GAMMA) * log_pn,
            )
        )
    return rows


def table2(table: PrimeTable, n_list: Sequence[int]) -> list[TableRow]:
    """Partial sums of the Omega series for each N."""
    return [TableRow(N=N, omega=omega_sum(table, N).value) for N in n_list]


def table3(
    table: PrimeTable,
    n_list: Sequence[int],
    twin_ns: Optional[Sequence[int]] = None,
    theta2: float = 4.0,
) -> list[TableRow]:
    """Actual and expected primorial twin-pair counts up to (p_N#-1, p_N#+1)."""
    rows = []
    for N in n_list:
        expected = theta2 * omega_sum(table, N).value
        actual = sum(1 for n in twin_ns if n <= N) if twin_ns is not None else None
        rows.append(TableRow(N=N, actual=actual, expected_low=expected, expected_high=expected))
    return rows


def _exceeds_prime_product(table: PrimeTable, bound: int, y: int) -> bool:
    """Exact truth of bound < prod_{p <= y} p, via the shortest deciding prefix.

    The full product can be astronomically large (y ~ 1e13 at n = 20), but the
    comparison is decided as soon as the running prefix exceeds ``bound``; if
    the primes <= y run out first, that prefix *is* the full product.
    """
    acc = 1
    for p in table.primes:
        p = int(p)
        if p > y:
            return acc > bound
        acc *= p
        if acc > bound:
            return True
    raise RangeError(f"sieve limit {table.limit} too small to decide the product comparison")


def check_sqrt_prime_product(
    table: PrimeTable, n_max: int, convention: str = "half_primorial"
) -> CheckReport:
    """Enumerates x = p_n#/2 + g and tests p_n# < prod_{p <= sqrt(x)} p exactly.

    convention "half_primorial" uses g = +-1 (the statement under test);
    "universal" uses g in {2, 4} (the parity rule for N = 1). Violations are
    expected only at x <= 106.
    """
    if n_max < 4:
        raise DomainError("n_max must be at least 4 to reach the violation boundary")
    g_values = (-1, 1) if convention == "half_primorial" else (2, 4)
    violations: list[tuple[int, int]] = []
    checked = 0
    for n, pv in primorial_values(table, n_max):
        if n < 2:
            continue
        for g in g_values:
            x = pv // 2 + g
            checked += 1
            if not _exceeds_prime_product(table, pv, math.isqrt(x)):
                violations.append((n, x))
    # The structural claim: every violation happens at n <= 4 (x <= 106 for
    # the +-1 convention, x <= 109 for the {2, 4} one).
    passed = all(n <= 4 for n, _ in violations)
    if convention == "half_primorial":
        passed = passed and all(x <= SQRT_PRODUCT_THRESHOLD for _, x in violations)
    return CheckReport(
        check_name="sqrt-prime-product",
        passed=bool(passed),
        max_residual=float(max((x for _, x in violations), default=0)),
        details=[("checked", float(checked)), ("max_violating_n", float(max((n for n, _ in violations), default=0)))]
        + [("violation", float(x)) for _, x in sorted(violations, key=lambda t: t[1])],
    )


def maximality_check(
    table: PrimeTable,
    x_u: UniversalPrimorial,
    xbar_u: UniversalPrimorial,
    params: HeuristicParams,
) -> CheckReport:
    """Strict L(x) > L(xbar) for two universal primorials with the same P-set."""
    x = realize(table, x_u)
    xbar = realize(table, xbar_u)
    if xbar == x:
        raise DomainError("xbar must differ from x")
    if table.primes_below_sqrt(x) != table.primes_below_sqrt(xbar):
        raise DomainError("P-set mismatch: the two values see different primes below their square roots")
    exact = HeuristicParams(k=params.k, c=params.c, domain="exact_rational")
    lx = likelihood(table, x_u.n, exact, x_u)
    lxbar = likelihood(table, xbar_u.n, exact, xbar_u)
    assert isinstance(lx, Fraction) and isinstance(lxbar, Fraction)
    return CheckReport(
        check_name="maximality",
        passed=bool(lx > lxbar),
        max_residual=float(lxbar - lx),
        details=[("L_x", float(lx)), ("L_xbar", float(lxbar))],
    )


def maximality_sweep(
    table: PrimeTable,
    targets: Sequence[tuple[int, int]] = ((3, -1), (3, 1), (5, -1), (5, 1)),
    xbar_max: int = 500,
    c: float = 0.5,
) -> CheckReport:
    """Brute force: for x = p_n# + g, every qualifying odd xbar <= xbar_max with
    the same P-set satisfies L_k(x) > L_k(xbar) strictly, k in {1, 2}.

    Each xbar is decomposed as ((xbar - g)/2) * p_1# + g, the universal form
    with n = 1 and the sign of g matched to x.
    """
    counterexamples: list[tuple[int, int, int]] = []
    compared = 0
    for n, g in targets:
        x_u = UniversalPrimorial(N=2, n=n, g=g)
        x = realize(table, x_u)
        pset = table.primes_below_sqrt(x)
        lx = {
            k: likelihood(table, n, HeuristicParams(k=k, c=c, domain="exact_rational"), x_u)
            for k in (1, 2)
        }
        for xbar in range(3, xbar_max + 1, 2):
            if xbar == x or table.primes_below_sqrt(xbar) != pset:
                continue
            xbar_u = UniversalPrimorial(N=xbar - g, n=1, g=g)
            for k in (1, 2):
                lxbar = likelihood(table, 1, HeuristicParams(k=k, c=c, domain="exact_rational"), xbar_u)
                compared += 1
                if not lx[k] > lxbar:
                    counterexamples.append((x, xbar, k))
    return CheckReport(
        check_name="maximality-sweep",
        passed=not counterexamples,
        max_residual=float(len(counterexamples)),
        details=[("comparisons", float(compared))]
        + [(f"counterexample_x{x}_xbar{xb}_k{k}", 0.0) for x, xb, k in counterexamples],
    )


def divergence_partial_sum(table: PrimeTable, p_max: int, n_max: int) -> float:
    """Double partial sum over primes p <= p_max and N <= n_max of
    (ln p / (p + ln(N/2)))^2 (the theta_2 factor excluded)."""
    if p_max > table.limit:
        raise RangeError(f"p_max {p_max} exceeds sieve limit {table.limit}")
    shifts = np.log(np.arange(1, n_max + 1, dtype=np.float64) / 2.0)
    totals = []
    for p in table.prime_list(p_max):
        terms = (math.log(p) / (p + shifts)) ** 2
        totals.append(math.fsum(terms))
    return math.fsum(totals)


def divergence_inner_sum(p: int, n_from: int, n_to: int) -> float:
    """Sum over N in [n_from, n_to] of (ln p / (p + ln(N/2)))^2."""
    shifts = np.log(np.arange(n_from, n_to + 1, dtype=np.float64) / 2.0)
    return math.fsum((math.log(p) / (p + shifts)) ** 2)


def threshold_root() -> float:
    """Root of N = (2 + ln(N/2))^2 near 17.26, by bisection."""
    f = lambda t: t - (2.0 + math.log(t / 2.0)) ** 2
    lo, hi = 16.0, 18.0
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def check_threshold_inequality(n_max: int) -> CheckReport:
    """N > (2 + ln(N/2))^2 for all integers 18 <= N <= n_max, and fails at N = 17."""
    holds = all(N > (2.0 + math.log(N / 2.0)) ** 2 for N in range(18, n_max + 1))
    fails_at_17 = not (17 > (2.0 + math.log(17 / 2.0)) ** 2)
    root = threshold_root()
    return CheckReport(
        check_name="divergence-threshold",
        passed=bool(holds and fails_at_17),
        max_residual=abs(root - 17.262),
        details=[("root", root), ("holds_from_18", float(holds)), ("fails_at_17", float(fails_at_17))],
    )


def loglog_shift_constants() -> CheckReport:
    """Recompute the ln(1 +- eps(599)) shift constants against 0.1334 / 0.15398."""
    eps = theta_error_bound(LogPoint.from_int(599))
    low = math.log1p(eps)
    high = -math.log1p(-eps)
    low_resid = abs(low - 0.1334)
    high_resid = abs(high - 0.15398)
    return CheckReport(
        check_name="loglog-shift-constants",
        passed=bool(low_resid < 1e-3 and high_resid < 1e-3),
        max_residual=float(max(low_resid, high_resid)),
        details=[("eps_599", eps), ("low", low), ("high", high)],
    )


def brun_envelope(table: PrimeTable, x: int) -> tuple[int, float]:
    """(exact twin count pi2(x), x (ln ln x)^2 / ln^2 x).

    The ratio of the two is reported for inspection; the implied constant is
    unspecified, so nothing is asserted about it.
    """
    if x < 3:
        raise DomainError("x must be at least 3")
    envelope = x * math.log(math.log(x)) ** 2 / math.log(x) ** 2
    return table.twin_count(x), envelope
