import math

import pytest

from primorial_lab.bignum import UniversalPrimorial
from primorial_lab.cache import SearchCache
from primorial_lab.errors import DomainError
from primorial_lab.experiments import (
    brun_envelope,
    check_sqrt_prime_product,
    check_threshold_inequality,
    divergence_inner_sum,
    divergence_partial_sum,
    loglog_shift_constants,
    maximality_check,
    maximality_sweep,
    search_primorial_primes,
    search_twins,
    table1,
    table2,
    table3,
    threshold_root,
)
from primorial_lab.heuristics import HeuristicParams


@pytest.fixture()
def cache(tmp_path):
    return SearchCache(tmp_path / "verdicts.jsonl")


class TestSearch:
    def test_counts_to_100(self, table, cache):
        records = search_primorial_primes(table, 100, cache)
        assert len(records) == 200
        assert [r.n for r in records[:4]] == [1, 1, 2, 2]
        assert sum(1 for r in records if r.n <= 10 and r.is_prime_like) == 9
        assert sum(1 for r in records if r.is_prime_like) == 15
        by_key = {(r.n, r.form): r for r in records}
        assert by_key[(6, "plus")].classification == "composite"
        assert by_key[(1, "minus")].classification == "composite"

    def test_twins(self, table, cache):
        assert search_twins(table, 100, cache) == [2, 3, 5]
        assert search_twins(table, 1, cache) == []

    def test_twins_skip_plus_when_minus_composite(self, table, cache):
        search_twins(table, 30, cache)
        # n=4: 4#-1 = 209 = 11*19 is composite, so 4#+1 was never tested
        assert cache.get(4, "minus", _digest_for(table, 4, "minus")) is not None
        assert (4, "plus") not in {(r.n, r.form) for r in cache.records()}

    def test_parallel_matches_serial(self, table, tmp_path):
        serial = search_primorial_primes(table, 40, SearchCache(tmp_path / "a.jsonl"), jobs=1)
        parallel = search_primorial_primes(table, 40, SearchCache(tmp_path / "b.jsonl"), jobs=2)
        strip = lambda rs: [(r.n, r.form, r.classification, r.method) for r in rs]
        assert strip(serial) == strip(parallel)

    def test_warm_cache_roundtrip(self, table, tmp_path):
        path = tmp_path / "c.jsonl"
        first = search_primorial_primes(table, 50, SearchCache(path))
        second = search_primorial_primes(table, 50, SearchCache(path))
        assert first == second  # elapsed_ms preserved from the original run


def _digest_for(table, n, form):
    from primorial_lab.bignum import primorial
    from primorial_lab.intops import decimal_digest

    value = primorial(table, n).value + (1 if form == "plus" else -1)
    return decimal_digest(value)


class TestTables:
    def test_table1_intervals(self, table):
        rows = table1(table, [10, 100, 1000])
        assert rows[0].expected_low == pytest.approx(6.74, abs=0.01)
        assert rows[0].expected_high == pytest.approx(13.47, abs=0.01)
        assert rows[0].cg == pytest.approx(2 * math.exp(0.5772156649) * math.log(29), rel=1e-9)
        assert rows[2].expected_low == pytest.approx(17.96, abs=0.01)
        assert rows[2].expected_high == pytest.approx(35.90, abs=0.01)

    def test_table1_actual_counts(self, table, cache):
        records = search_primorial_primes(table, 100, cache)
        rows = table1(table, [10, 100], records)
        assert [r.actual for r in rows] == [9, 15]

    def test_table3_expected_equals_theta2_times_omega(self, table):
        ns = [10, 100, 1000]
        omega_rows = table2(table, ns)
        twin_rows = table3(table, ns, twin_ns=[2, 3, 5])
        for o, t in zip(omega_rows, twin_rows):
            assert t.expected_low == 4.0 * o.omega  # identical code path, exact equality
            assert t.actual == 3

    def test_table2_values(self, table):
        rows = table2(table, [10, 100])
        assert rows[0].omega == pytest.approx(0.605414, abs=1e-6)
        assert rows[1].omega == pytest.approx(0.728261, abs=1e-6)


class TestSqrtPrimeProduct:
    def test_violation_set(self, table):
        rep = check_sqrt_prime_product(table, 20)
        violations = sorted(int(v) for k, v in rep.details if k == "violation")
        assert violations == [2, 4, 14, 16, 104, 106]
        assert rep.passed  # all violations at or below the 106 threshold

    def test_holds_from_n5(self, table):
        rep = check_sqrt_prime_product(table, 4)
        v4 = {int(v) for k, v in rep.details if k == "violation"}
        rep20 = check_sqrt_prime_product(table, 20)
        v20 = {int(v) for k, v in rep20.details if k == "violation"}
        assert v20 == v4  # nothing new for 5 <= n <= 20

    def test_universal_convention(self, table):
        # with g in {2, 4} the violating x reach 109 (isqrt(109) = 10, product 210 = 4#)
        rep = check_sqrt_prime_product(table, 10, convention="universal")
        assert rep.passed
        violations = sorted(int(v) for k, v in rep.details if k == "violation")
        assert violations == [5, 7, 17, 19, 107, 109]

    def test_requires_n4(self, table):
        with pytest.raises(DomainError):
            check_sqrt_prime_product(table, 3)


class TestMaximality:
    def test_29_versus_27(self, table):
        rep = maximality_check(
            table,
            UniversalPrimorial(N=2, n=3, g=-1),
            UniversalPrimorial(N=26, n=1, g=1),  # 13*2# + 1 = 27
            HeuristicParams(1, 0.5),
        )
        assert rep.passed
        assert rep.detail_map()["L_x"] == 1.0
        assert rep.detail_map()["L_xbar"] == pytest.approx(52 / 90, rel=1e-12)

    def test_same_value_rejected(self, table):
        with pytest.raises(DomainError):
            maximality_check(
                table,
                UniversalPrimorial(N=2, n=3, g=-1),
                UniversalPrimorial(N=30, n=1, g=-1),  # also 29
                HeuristicParams(1, 0.5),
            )

    def test_pset_mismatch_rejected(self, table):
        with pytest.raises(DomainError):
            maximality_check(
                table,
                UniversalPrimorial(N=2, n=3, g=-1),
                UniversalPrimorial(N=52, n=1, g=-1),  # 51: P-set {2,3,5,7}
                HeuristicParams(1, 0.5),
            )

    def test_sweep_standard_targets(self, table):
        rep = maximality_sweep(table)
        assert rep.passed
        assert rep.detail_map()["comparisons"] > 0

    def test_sweep_full_window_for_n5(self, table):
        # the qualifying window for 5# +- 1 is [2209, 2808]; nothing below 500 qualifies
        rep = maximality_sweep(table, targets=((5, -1), (5, 1)), xbar_max=2808)
        assert rep.passed
        assert rep.detail_map()["comparisons"] > 100


class TestDivergence:
    def test_threshold_root(self):
        root = threshold_root()
        assert root == pytest.approx(17.262, abs=1e-2)
        f = lambda t: t - (2 + math.log(t / 2)) ** 2
        assert f(root - 1e-6) < 0 < f(root + 1e-6)

    def test_threshold_inequality(self):
        rep = check_threshold_inequality(10_000)
        assert rep.passed

    def test_partial_sum_monotone(self, table):
        base = divergence_partial_sum(table, 50, 1000)
        assert divergence_partial_sum(table, 50, 2000) > base
        assert divergence_partial_sum(table, 100, 1000) > base

    def test_inner_sum_dominates_harmonic_tail(self, table):
        # for N >= 19 each term beats ln^2(2)/N, and the N <= 18 head is ~1.0659
        head = divergence_inner_sum(2, 1, 18)
        assert head == pytest.approx(1.0659, abs=1e-3)
        inner = divergence_inner_sum(2, 19, 10_000)
        harmonic = math.fsum(math.log(2) ** 2 / n for n in range(19, 10_001))
        assert inner > harmonic


class TestTwinRetest:
    def test_twin_members_pass_an_independent_tier(self, table, cache):
        # every twin-list member re-verified with the full 13-base MR battery,
        # independently of the trial-division tier that classified it
        from primorial_lab.bignum import MR_BASE_SET, _mr_strong_test, primorial

        twins = search_twins(table, 10, cache)
        assert twins == [2, 3, 5]
        for n in twins:
            for g in (-1, 1):
                value = primorial(table, n).value + g
                assert all(_mr_strong_test(value, b) for b in MR_BASE_SET if b % value != 0)


class TestSmallChecks:
    def test_loglog_shift_constants(self):
        rep = loglog_shift_constants()
        assert rep.passed
        values = rep.detail_map()
        assert values["low"] == pytest.approx(0.1334, abs=1e-3)
        assert values["high"] == pytest.approx(0.15398, abs=1e-3)
        assert values["eps_599"] == pytest.approx(0.14271, abs=5e-6)

    def test_brun_envelope(self, table):
        pi2, env = brun_envelope(table, 100_000)
        assert pi2 == 1224
        assert env > 0
        assert brun_envelope(table, 10)[0] == 2

    def test_brun_envelope_increasing(self, table):
        values = [brun_envelope(table, x)[1] for x in (16, 100, 10_000, 1_000_000)]
        assert values == sorted(values)
