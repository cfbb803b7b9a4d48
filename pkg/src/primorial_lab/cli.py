"""Command-line interface.

Data goes to stdout, progress to stderr. Exit codes: 0 on success with all
checks passed, 1 when a verification fails, 2 on usage errors. Identical
argv produces byte-identical stdout given a warm cache, and ``--jobs`` never
changes output bytes (work items are aggregated in input order).
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional

import click

from primorial_lab import bounds, experiments, heuristics, report
from primorial_lab.bignum import UniversalPrimorial, is_prime, primorial
from primorial_lab.cache import SearchCache, default_cache_path
from primorial_lab.errors import CacheIntegrityError
from primorial_lab.intops import decimal_digest
from primorial_lab.prime_engine import PrimeTable, sieve_up_to

DEFAULT_SIEVE_LIMIT = 2_000_000
LONG_RUN_GATE = 2_000


@dataclass
class CliConfig:
    sieve_limit: int = DEFAULT_SIEVE_LIMIT
    c: float = 0.5
    k: int = 1
    output_format: str = "md"
    cache_path: Optional[str] = None
    jobs: int = 1
    long_run: bool = False
    precision: int = report.DEFAULT_PRECISION

    _table: Optional[PrimeTable] = None

    def table(self, need_limit: Optional[int] = None) -> PrimeTable:
        limit = max(self.sieve_limit, need_limit or 0)
        if self._table is None or self._table.limit < limit:
            click.echo(f"sieving to {limit} ...", err=True)
            self._table = sieve_up_to(limit)
        return self._table

    def cache(self) -> SearchCache:
        return SearchCache(default_cache_path(self.cache_path))


pass_config = click.make_pass_decorator(CliConfig)


def _echo_rows(cfg: CliConfig, rows, columns) -> None:
    click.echo(report.render_rows(rows, columns, cfg.output_format, cfg.precision))


def _echo_check(cfg: CliConfig, rep: report.CheckReport) -> None:
    click.echo(report.render_check(rep, cfg.output_format, cfg.precision))
    if not rep.passed:
        sys.exit(1)


@click.group()
@click.option("--sieve-limit", type=int, default=DEFAULT_SIEVE_LIMIT, show_default=True)
@click.option("--c", type=float, default=0.5, show_default=True, help="Cutoff exponent in [1/2, 1].")
@click.option("--k", type=click.IntRange(1, 2), default=1, show_default=True)
@click.option("--format", "output_format", type=click.Choice(["csv", "json", "md"]), default="md", show_default=True)
@click.option("--cache", "cache_path", type=click.Path(), default=None, help="Verdict cache file (overrides PRIMORIAL_LAB_CACHE).")
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel primality workers for searches.")
@click.option("--long-run", is_flag=True, help="Allow searches beyond n = 2000.")
@click.option("--precision", type=int, default=report.DEFAULT_PRECISION, show_default=True, help="Significant digits for numeric output.")
@click.pass_context
def main(ctx, sieve_limit, c, k, output_format, cache_path, jobs, long_run, precision):
    """Primorial primality heuristics, explicit bounds, and reproducible tables."""
    ctx.obj = CliConfig(
        sieve_limit=sieve_limit,
        c=c,
        k=k,
        output_format=output_format,
        cache_path=cache_path,
        jobs=jobs,
        long_run=long_run,
        precision=precision,
    )


@main.command()
@click.argument("limit", type=int)
@pass_config
def sieve(cfg: CliConfig, limit: int):
    """Sieve to LIMIT and report pi(limit) and theta(limit)."""
    table = cfg.table(limit)
    stats = table.stats_at(limit)
    _echo_rows(cfg, [{"limit": limit, "pi": stats.pi, "theta": stats.theta}], ["limit", "pi", "theta"])


@main.command("primorial")
@click.argument("n", type=int)
@click.option("--full", is_flag=True, help="Print the full decimal value.")
@pass_config
def primorial_cmd(cfg: CliConfig, n: int, full: bool):
    """p_n#: the product of the first N primes, with its exact natural log."""
    table = cfg.table()
    pr = primorial(table, n)
    row = {
        "n": n,
        "p_n": table.nth_prime(n) if n >= 1 else None,
        "digits": len(str(pr.value)),
        "log_value": pr.log_value,
    }
    _echo_rows(cfg, [row], ["n", "p_n", "digits", "log_value"])
    if full:
        click.echo(str(pr.value))


@main.command("isprime")
@click.argument("value", type=str, required=False)
@click.option("--primorial-n", type=int, default=None, help="Test p_n# +- 1 instead of VALUE.")
@click.option("--form", type=click.Choice(["minus", "plus"]), default="plus", show_default=True)
@pass_config
def isprime_cmd(cfg: CliConfig, value: Optional[str], primorial_n: Optional[int], form: str):
    """Tiered primality verdict (trial division / deterministic MR / BPSW)."""
    if (value is None) == (primorial_n is None):
        raise click.UsageError("give either VALUE or --primorial-n")
    if primorial_n is not None:
        x = primorial(cfg.table(), primorial_n).value + (1 if form == "plus" else -1)
    else:
        try:
            x = int(value)
        except ValueError:
            raise click.UsageError("VALUE must be a decimal integer")
    verdict = is_prime(x)
    row = {
        "digits": len(str(x)),
        "classification": verdict.classification,
        "method": verdict.method,
        "witness": verdict.witness,
    }
    _echo_rows(cfg, [row], ["digits", "classification", "method", "witness"])


@main.command("lk")
@click.option("--n", type=int, required=True, help="Primorial index.")
@click.option("--g", type=int, default=1, show_default=True, help="Offset g (+-1 for x = p_n# +- 1).")
@click.option("--big-n", "big_n", type=int, default=2, show_default=True, help="N with K = N/2.")
@click.option("--domain", type=click.Choice(["exact_rational", "log_domain", "asymptotic"]), default="log_domain", show_default=True)
@pass_config
def lk_cmd(cfg: CliConfig, n: int, g: int, big_n: int, domain: str):
    """Prime-likelihood L_k of a universal primorial K p_n# + g."""
    table = cfg.table()
    u = UniversalPrimorial(N=big_n, n=n, g=g)
    if domain == "asymptotic":
        value = heuristics.likelihood_asymptotic(table, n, heuristics.HeuristicParams(cfg.k, cfg.c), u)
    else:
        value = float(
            heuristics.likelihood(table, n, heuristics.HeuristicParams(cfg.k, cfg.c, domain), u)
        )
    _echo_rows(cfg, [{"n": n, "k": cfg.k, "c": cfg.c, "L": value}], ["n", "k", "c", "L"])


@main.command("theta")
@click.option("--cutoff", type=int, required=True)
@click.option("--n", type=int, required=True)
@pass_config
def theta_cmd(cfg: CliConfig, cutoff: int, n: int):
    """The scale factor theta_k at the given cutoff and index."""
    table = cfg.table(cutoff)
    tf = heuristics.theta_factor(table, heuristics.HeuristicParams(cfg.k, cfg.c), cutoff, n)
    _echo_rows(
        cfg,
        [{"k": tf.k, "c": tf.c, "cutoff": tf.x_cutoff, "n": tf.n, "theta_k": tf.value}],
        ["k", "c", "cutoff", "n", "theta_k"],
    )


@main.command("omega")
@click.option("--N", "n_list", type=str, required=True, help="Comma-separated N values.")
@pass_config
def omega_cmd(cfg: CliConfig, n_list: str):
    """Partial sums of the squared-log density series Omega."""
    ns = [int(s) for s in n_list.split(",")]
    table = cfg.table(_sieve_needed_for_nth(max(ns)))
    rows = [{"N": N, "omega": heuristics.omega_sum(table, N).value} for N in ns]
    _echo_rows(cfg, rows, ["N", "omega"])


def _sieve_needed_for_nth(n: int) -> int:
    """An upper bound for p_n, for sizing the sieve."""
    if n < 6:
        return 15
    return int(n * (math.log(n) + math.log(math.log(n))) * 1.2) + 10


@main.command("tables")
@click.option("--which", type=click.IntRange(1, 3), required=True)
@click.option("--N", "n_list", type=str, required=True, help="Comma-separated N values.")
@click.option("--expected-only", is_flag=True, help="Skip the search for the actual column.")
@pass_config
def tables_cmd(cfg: CliConfig, which: int, n_list: str, expected_only: bool):
    """Reproduce the three output tables (counts, Omega values, twin expectations)."""
    ns = [int(s) for s in n_list.split(",")]
    n_top = max(ns)
    table = cfg.table(_sieve_needed_for_nth(n_top))
    if which == 2:
        rows = experiments.table2(table, ns)
        _echo_rows(cfg, report.table_rows_as_dicts(rows), ["N", "omega"])
        return
    records = twins = None
    if not expected_only:
        if n_top > LONG_RUN_GATE and not cfg.long_run:
            raise click.UsageError(
                f"searching to n={n_top} exceeds the default gate {LONG_RUN_GATE}; pass --long-run"
            )
        cache = cfg.cache()
        if which == 1:
            records = experiments.search_primorial_primes(table, n_top, cache, cfg.jobs, _progress)
        else:
            twins = experiments.search_twins(table, n_top, cache, cfg.jobs, _progress)
    if which == 1:
        rows = experiments.table1(table, ns, records)
        _echo_rows(cfg, report.table_rows_as_dicts(rows), ["N", "actual", "expected_low", "expected_high", "cg"])
    else:
        rows = experiments.table3(table, ns, twins)
        _echo_rows(cfg, report.table_rows_as_dicts(rows), ["N", "actual", "expected_low"])


def _progress(msg: str) -> None:
    click.echo(msg, err=True)


@main.command("search-primes")
@click.option("--max-n", type=int, required=True)
@pass_config
def search_primes_cmd(cfg: CliConfig, max_n: int):
    """Classify p_n# - 1 and p_n# + 1 for every n up to --max-n."""
    if max_n > LONG_RUN_GATE and not cfg.long_run:
        raise click.UsageError(f"--max-n {max_n} exceeds the default gate {LONG_RUN_GATE}; pass --long-run")
    table = cfg.table(_sieve_needed_for_nth(max_n))
    records = experiments.search_primorial_primes(table, max_n, cfg.cache(), cfg.jobs, _progress)
    rows = [
        {"n": r.n, "form": r.form, "classification": r.classification, "method": r.method}
        for r in records
    ]
    _echo_rows(cfg, rows, ["n", "form", "classification", "method"])


@main.command("search-twins")
@click.option("--max-n", type=int, required=True)
@pass_config
def search_twins_cmd(cfg: CliConfig, max_n: int):
    """All n up to --max-n with both p_n# - 1 and p_n# + 1 prime(-like)."""
    if max_n > LONG_RUN_GATE and not cfg.long_run:
        raise click.UsageError(f"--max-n {max_n} exceeds the default gate {LONG_RUN_GATE}; pass --long-run")
    table = cfg.table(_sieve_needed_for_nth(max_n))
    twins = experiments.search_twins(table, max_n, cfg.cache(), cfg.jobs, _progress)
    click.echo(" ".join(str(n) for n in twins))


@main.command("verify")
@click.option(
    "--check",
    "check_name",
    type=click.Choice(
        ["t2", "dusart-pi", "mertens", "constants", "lemma-a", "denns", "lemma-eq", "brun", "int1", "int5", "theta-error"]
    ),
    required=True,
)
@click.option("--range", "range_spec", type=str, default=None, help="lo:hi for range checks.")
@click.option("--x", "x_point", type=int, default=None, help="Evaluation point for point checks.")
@click.option("--n-max", type=int, default=20, show_default=True, help="Enumeration depth for lemma-a.")
@click.option("--n", "n_index", type=int, default=6, show_default=True, help="Index for int5.")
@click.option("--samples", type=int, default=1000, show_default=True, help="Sample count for dusart-pi.")
@pass_config
def verify_cmd(cfg, check_name, range_spec, x_point, n_max, n_index, samples):
    """Run one machine check; exits 1 if it fails.

    t2: |theta/(pi ln x) - 1| < 0.30543 over a range. dusart-pi: pi(x)
    envelopes at sampled points. mertens: the product-vs-e^-gamma/ln x bands.
    constants: the named envelope constants. lemma-a: the sqrt-product
    enumeration. denns: the maximality brute force. lemma-eq: the ln(1+-eps)
    shifts. brun: the twin-count envelope. int1: the theta-ratio sandwich.
    int5: the weak sandwich at one index. theta-error: |theta(x)-x| < x eps(x).
    """
    if check_name == "t2":
        lo, hi = _parse_range(range_spec, 599, cfg.sieve_limit)
        _echo_check(cfg, bounds.check_h_deviation(cfg.table(hi), lo, hi))
    elif check_name == "dusart-pi":
        lo, hi = _parse_range(range_spec, 599, cfg.sieve_limit)
        table = cfg.table(hi)
        pts = sorted({int(v) for v in _sample_points(lo, hi, samples)})
        worst = None
        for x in pts:
            rep = bounds.check_dusart_pi(table, x)
            if worst is None or rep.max_residual > worst.max_residual or not rep.passed:
                worst = rep
            if not rep.passed:
                break
        assert worst is not None
        worst.details.insert(0, ("sampled", float(len(pts))))
        _echo_check(cfg, worst)
    elif check_name == "mertens":
        _echo_check(cfg, _mertens_band_check(cfg))
    elif check_name == "constants":
        _echo_check(cfg, bounds.reproduce_constants(cfg.table()))
    elif check_name == "lemma-a":
        _echo_check(cfg, experiments.check_sqrt_prime_product(cfg.table(), n_max))
    elif check_name == "denns":
        _echo_check(cfg, experiments.maximality_sweep(cfg.table()))
    elif check_name == "lemma-eq":
        rep = experiments.loglog_shift_constants()
        thr = experiments.check_threshold_inequality(10_000)
        rep.details += thr.details
        rep.passed = rep.passed and thr.passed
        _echo_check(cfg, rep)
    elif check_name == "brun":
        x = x_point or 100_000
        pi2, envelope = experiments.brun_envelope(cfg.table(x + 2), x)
        _echo_rows(cfg, [{"x": x, "pi2": pi2, "envelope": envelope, "ratio": pi2 / envelope}], ["x", "pi2", "envelope", "ratio"])
    elif check_name == "int1":
        _echo_check(cfg, bounds.check_theta_ratio_sandwich(cfg.table()))
    elif check_name == "int5":
        _echo_check(cfg, bounds.check_weak_sandwich(cfg.table(), n_index))
    elif check_name == "theta-error":
        _echo_check(cfg, bounds.check_theta_error(cfg.table()))


def _sample_points(lo: int, hi: int, count: int) -> list[int]:
    if hi - lo <= count:
        return list(range(lo, hi + 1))
    step = (hi - lo) / count
    return [int(lo + i * step) for i in range(count + 1)]


def _parse_range(spec: Optional[str], lo_default: int, hi_default: int) -> tuple[int, int]:
    if spec is None:
        return lo_default, hi_default
    try:
        lo_s, hi_s = spec.split(":")
        return int(lo_s), int(hi_s)
    except ValueError:
        raise click.UsageError("--range must look like LO:HI")


def _mertens_band_check(cfg: CliConfig) -> report.CheckReport:
    """Product-over-primes bands: the 1/(5 ln^3 x) envelope at 2.3e6 and 1e7,
    the sharper pair beyond 4.7e7."""
    points_narrow = [2_300_000, 10_000_000]
    axler_point = 47_000_000
    table = cfg.table(axler_point)
    details = []
    passed = True
    worst = 0.0
    for x in points_narrow:
        dev = _mertens_dev(table, x)
        band = 1.0 / (5.0 * math.log(x) ** 3)
        details.append((f"dev_{x}", dev))
        worst = max(worst, abs(dev) / band)
        passed = passed and abs(dev) < band
    lx = math.log(axler_point)
    dev = _mertens_dev(table, axler_point)
    lo_band = -(1.0 / (20.0 * lx**3) + 3.0 / (16.0 * lx**4))
    hi_band = 1.0 / (20.0 * lx**3) + 3.0 / (16.0 * lx**4) + 1.02 / ((axler_point - 1) * lx)
    details.append((f"dev_{axler_point}", dev))
    passed = passed and lo_band < dev < hi_band
    return report.CheckReport("mertens-bands", bool(passed), float(worst), details)


def _mertens_dev(table: PrimeTable, x: int) -> float:
    value = heuristics.mertens_product(table, x, 1)
    return value * math.exp(heuristics.EULER_GAMMA) * math.log(x) - 1.0


@main.group("cache")
def cache_group():
    """Inspect or verify the verdict cache."""


@cache_group.command("inspect")
@pass_config
def cache_inspect(cfg: CliConfig):
    """List cached verdicts in (n, form) order."""
    cache = cfg.cache()
    rows = [
        {
            "n": r.n,
            "form": r.form,
            "classification": r.classification,
            "method": r.method,
            "elapsed_ms": r.elapsed_ms,
            "digest": r.digest[:16],
        }
        for r in cache.records()
    ]
    _echo_rows(cfg, rows, ["n", "form", "classification", "method", "elapsed_ms", "digest"])


@cache_group.command("verify")
@pass_config
def cache_verify(cfg: CliConfig):
    """Recompute candidate digests for every cached record."""
    cache = cfg.cache()
    records = list(cache.records())
    if not records:
        click.echo("cache empty")
        return
    n_top = max(r.n for r in records)
    table = cfg.table(_sieve_needed_for_nth(n_top))
    from primorial_lab.bignum import primorial_values

    values = dict(primorial_values(table, n_top))
    bad = 0
    for r in records:
        candidate = values[r.n] + (1 if r.form == "plus" else -1)
        if decimal_digest(candidate) != r.digest:
            bad += 1
            click.echo(f"digest mismatch at n={r.n} form={r.form}", err=True)
    click.echo(f"records: {len(records)}, mismatches: {bad}")
    if bad:
        raise CacheIntegrityError(f"{bad} cache records failed digest verification")


if __name__ == "__main__":
    main()
