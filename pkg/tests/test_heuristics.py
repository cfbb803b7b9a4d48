import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primorial_lab.bignum import UniversalPrimorial, realize
from primorial_lab.errors import (
    CapabilityError,
    DegenerateInputError,
    DomainError,
    ResourceLimitError,
)
from primorial_lab.heuristics import (
    EULER_GAMMA,
    HeuristicParams,
    alpha,
    exclusion_set,
    exclusion_set_structural,
    likelihood,
    likelihood_asymptotic,
    mertens_product,
    omega_elementary_bounds,
    omega_sum,
    theta_factor,
    twin_prime_constant,
)


class TestParams:
    def test_validation(self):
        with pytest.raises(DomainError):
            HeuristicParams(k=3)
        with pytest.raises(DomainError):
            HeuristicParams(k=1, c=0.4)
        with pytest.raises(DomainError):
            HeuristicParams(k=1, c=0.5, domain="decimal")


class TestMertensProduct:
    def test_exact_examples(self, table):
        assert mertens_product(table, 2, 1, exact=True) == Fraction(1, 2)
        assert mertens_product(table, 3, 2, exact=True) == Fraction(1, 3)

    def test_exact_cap(self, table):
        with pytest.raises(ResourceLimitError):
            mertens_product(table, 100_000, 1, exact=True)

    def test_float_matches_exact(self, table):
        for cutoff in (10, 100, 9973):
            for k in (1, 2):
                exact = mertens_product(table, cutoff, k, exact=True)
                assert mertens_product(table, cutoff, k) == pytest.approx(float(exact), rel=1e-12)

    def test_dusart_band_at_1e7(self, table_10m):
        x = 10**7
        value = mertens_product(table_10m, x, 1)
        ratio = value * math.exp(EULER_GAMMA) * math.log(x)
        band = 1.0 / (5.0 * math.log(x) ** 3)
        assert 1.0 - band < ratio < 1.0 + band


class TestExclusionSet:
    def test_primorial_neighbor(self, table):
        assert exclusion_set(table, 31, 1).primes == (2, 3, 5)
        assert exclusion_set(table, 29, -1).primes == (2, 3, 5)

    def test_factored_cases(self, table):
        assert exclusion_set(table, 27, 1).primes == (2, 13)
        assert exclusion_set(table, 17, 2).primes == (3, 5)

    def test_structural_equals_factored(self, table):
        for N, n, g in ((2, 3, 1), (2, 3, -1), (26, 1, 1), (1, 3, 2), (7, 2, 4), (12, 4, -1)):
            u = UniversalPrimorial(N=N, n=n, g=g)
            x = realize(table, u)
            assert exclusion_set_structural(table, u) == exclusion_set(table, x, g)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=1, max_value=300), st.integers(min_value=1, max_value=8))
    def test_structural_matches_factored_random(self, table, N, n):
        g = 1 if N % 2 == 0 else 2
        u = UniversalPrimorial(N=N, n=n, g=g)
        x = realize(table, u)
        if x <= abs(g):
            return
        assert exclusion_set_structural(table, u) == exclusion_set(table, x, g)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=5, max_value=10**6))
    def test_members_divide_x_minus_g(self, table, x):
        x |= 1
        for g in (-1, 1, 2, 4):
            es = exclusion_set(table, x, g)
            for p in es.primes:
                assert (x - g) % p == 0
                assert abs(g) % p != 0

    def test_unfactorable_raises(self, table):
        x = (2**127 - 1) * (2**131 - 1) + 1  # x - 1 has two enormous prime factors
        with pytest.raises(CapabilityError):
            exclusion_set(table, x, 1)


class TestLikelihood:
    def test_exact_example_24_35(self, table):
        value = likelihood(table, 2, HeuristicParams(1, 1.0, "exact_rational"))
        assert value == Fraction(24, 35)

    def test_exact_example_unity(self, table):
        u = UniversalPrimorial(N=2, n=3, g=-1)
        value = likelihood(table, 3, HeuristicParams(1, 0.5, "exact_rational"), u)
        assert value == 1

    def test_never_clamped(self, table):
        # x = 3# - 1 = 5: cutoff {2} against exclusion {2, 3} gives L = 3/2
        u = UniversalPrimorial(N=2, n=2, g=-1)
        value = likelihood(table, 2, HeuristicParams(1, 0.5, "exact_rational"), u)
        assert value == Fraction(3, 2)

    def test_degenerate_cutoff(self, table):
        with pytest.raises(DegenerateInputError):
            likelihood(table, 1, HeuristicParams(1, 0.5), UniversalPrimorial(N=2, n=1, g=1))

    def test_cutoff_beyond_sieve(self, table):
        with pytest.raises(CapabilityError):
            likelihood(table, 30, HeuristicParams(1, 0.5))

    @pytest.mark.parametrize("n", range(2, 9))
    @pytest.mark.parametrize("k", [1, 2])
    @pytest.mark.parametrize("g", [-1, 1])
    def test_domains_agree(self, table, n, k, g):
        u = UniversalPrimorial(N=2, n=n, g=g)
        exact = likelihood(table, n, HeuristicParams(k, 0.5, "exact_rational"), u)
        logd = likelihood(table, n, HeuristicParams(k, 0.5, "log_domain"), u)
        assert logd == pytest.approx(float(exact), rel=1e-9)

    @pytest.mark.parametrize("n", range(2, 11))
    @pytest.mark.parametrize("k", [1, 2])
    def test_minus_equals_plus(self, table, n, k):
        params = HeuristicParams(k, 0.5, "exact_rational")
        lm = likelihood(table, n, params, UniversalPrimorial(N=2, n=n, g=-1))
        lp = likelihood(table, n, params, UniversalPrimorial(N=2, n=n, g=1))
        assert lm == lp

    def test_asymptotic_ratio_approaches_theta(self, table):
        # n^k * L / theta_k tends to 1 from above; check the trend, not a rate
        params = HeuristicParams(1, 0.5)
        devs = []
        for n in (100, 10_000, 100_000):
            value = likelihood_asymptotic(table, n, params)
            devs.append(abs(value * n / 2.0 - 1.0))
        assert devs[0] > devs[1] > devs[2]
        assert devs[2] < 0.09


class TestThetaFactor:
    def test_k1(self, table):
        assert theta_factor(table, HeuristicParams(1, 0.5), 100, 5).value == 2.0
        assert theta_factor(table, HeuristicParams(1, 1.0), 100, 5).value == 1.0

    def test_equal_cutoffs_give_inverse_c_squared(self, table):
        pn = table.nth_prime(7)
        tf = theta_factor(table, HeuristicParams(2, 0.5), pn, 7)
        assert tf.value == pytest.approx(4.0, rel=1e-12)

    def test_k2_value_against_direct_product(self, table):
        # 4 * Pi2(1e6) / Pi2(5) with Pi2 over odd primes; Pi2(5) = (3/4)(15/16) = 45/64
        tf = theta_factor(table, HeuristicParams(2, 0.5), 10**6, 3)
        direct = 4.0 * twin_prime_constant(table, 10**6) / (45.0 / 64.0)
        assert tf.value == pytest.approx(direct, rel=1e-12)

    def test_band_for_n_at_least_3(self, table):
        for n in (3, 4, 6, 10, 25):
            pn = table.nth_prime(n)
            for cutoff in (pn, 10 * pn, 10**6):
                for c in (0.5, 1.0):
                    v = theta_factor(table, HeuristicParams(2, c), cutoff, n).value
                    assert 15.0 / 16.0 < v * c * c <= 1.0

    def test_requires_n_above_one(self, table):
        with pytest.raises(DomainError):
            theta_factor(table, HeuristicParams(2, 0.5), 100, 1)


class TestTwinPrimeConstant:
    def test_small_products(self, table):
        assert twin_prime_constant(table, 3) == pytest.approx(0.75, rel=1e-15)
        assert twin_prime_constant(table, 5) == pytest.approx(45.0 / 64.0, rel=1e-14)

    def test_published_value(self, table_10m):
        assert twin_prime_constant(table_10m, 10**7) == pytest.approx(0.66016, abs=2e-5)

    def test_monotone_decreasing(self, table):
        values = [twin_prime_constant(table, c) for c in (10, 100, 1000, 10**6)]
        assert values == sorted(values, reverse=True)


class TestAlpha:
    def test_identity_at_primorial(self, table):
        theta = float(table.theta_prefix[4])
        assert alpha(table, theta, 2, 5) == 1.0

    def test_direct_value(self, table):
        value = alpha(table, math.log(31), 2, 3)
        assert value == pytest.approx((math.log(30) / math.log(31)) ** 2, rel=1e-12)

    def test_tends_to_one_for_fixed_k(self, table):
        from primorial_lab.heuristics import log_x_of

        devs = [
            abs(alpha(table, log_x_of(table, UniversalPrimorial(N=10, n=n, g=1)), 1, n) - 1.0)
            for n in (10, 100, 1000)
        ]
        assert devs == sorted(devs, reverse=True)


class TestOmega:
    def test_table_values(self, table):
        assert omega_sum(table, 10).value == pytest.approx(0.605414, abs=1e-6)
        assert omega_sum(table, 100000).value == pytest.approx(0.741586, abs=1e-6)
        assert omega_sum(table, 17).value == pytest.approx(0.660163, abs=1e-6)

    def test_single_term(self, table):
        assert omega_sum(table, 1).value == pytest.approx((math.log(2) / 2) ** 2, rel=1e-14)

    def test_increasing_and_bounded(self, table):
        values = [omega_sum(table, n).value for n in (1, 10, 100, 1000, 10_000, 100_000)]
        assert values == sorted(values)
        assert all(v < 0.750159 for v in values)

    def test_elementary_bounds(self, table):
        ob = omega_elementary_bounds(table)
        assert ob.lower == pytest.approx(0.717297, abs=1e-5)
        assert ob.upper == pytest.approx(0.750159, abs=1e-5)
        assert ob.tail == pytest.approx(0.057134, abs=1e-6)
        assert ob.lower < ob.upper
        # full-precision zeta(2) diagnostic sits a hair below the published tail
        assert ob.tail_full_precision == pytest.approx(0.0571273, abs=1e-6)
