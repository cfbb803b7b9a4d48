import math

import numpy as np
import pytest

from primorial_lab.bounds import (
    BoundConstants,
    LogPoint,
    check_dusart_pi,
    check_h_deviation,
    check_theta_error,
    check_theta_ratio_sandwich,
    check_weak_sandwich,
    h_deviation_bound,
    log_theta_error_bound,
    pi_upper_factor,
    reproduce_constants,
    slack_factors,
    theta_error_argmax,
    theta_error_bound,
    weak_sandwich_factors,
)
from primorial_lab.errors import DegenerateInputError, DomainError


class TestLogPoint:
    def test_constructors(self):
        assert LogPoint.from_int(599).log_x == pytest.approx(math.log(599), rel=1e-15)
        pt = LogPoint.from_mantissa_exp10(8, 989079)
        assert pt.log_x == pytest.approx(math.log(8) + 989079 * math.log(10), rel=1e-15)
        with pytest.raises(DomainError):
            LogPoint(0.0)

    def test_constants_frozen(self):
        bc = BoundConstants()
        assert bc.trudgian_coeff == pytest.approx(math.sqrt(8 / (17 * math.pi)), rel=1e-15)
        assert bc.trudgian_scale == 6.455
        assert bc.dusart_terms == (1.0, 1.0, 2.0, 7.59)


class TestThetaErrorBound:
    def test_at_599(self):
        assert theta_error_bound(LogPoint.from_int(599)) == pytest.approx(0.14271, abs=5e-6)

    def test_validity_floor(self):
        with pytest.raises(DomainError):
            theta_error_bound(LogPoint.from_int(148))
        assert theta_error_bound(LogPoint.from_int(149)) > 0

    def test_log_form_at_huge_point(self):
        # value is ~9.433 * e^-593.984; compare in log space
        pt = LogPoint.from_mantissa_exp10(8, 989079)
        big_x = math.sqrt(pt.log_x / 6.455)
        assert big_x == pytest.approx(593.984, abs=1e-2)
        assert log_theta_error_bound(pt) == pytest.approx(math.log(9.433) - 593.984, abs=1e-2)

    def test_argmax(self):
        from primorial_lab.bounds import _eps_from_logx

        x, eps_max, recip = theta_error_argmax()
        assert x == pytest.approx(5.022, abs=1e-3)
        assert recip == pytest.approx(0.8576, abs=1e-4)
        assert eps_max == pytest.approx(float(_eps_from_logx(math.log(x))), rel=1e-12)
        # a true local max: nearby points are smaller
        for lx in (math.log(x) * 0.9, math.log(x) * 1.1):
            assert float(_eps_from_logx(lx)) < eps_max

    def test_strictly_decreasing_beyond_argmax(self):
        # 1000 adjacent sampled pairs above x = 5.022
        logs = np.linspace(math.log(5.03), math.log(1e300), 1001)
        from primorial_lab.bounds import _eps_from_logx

        eps = _eps_from_logx(logs)
        assert np.all(np.diff(eps) < 0)


class TestPiUpperFactor:
    def test_at_599(self):
        lx = math.log(599)
        expected = 1 + 1 / lx + 2 / lx**2 + 7.59 / lx**3
        assert pi_upper_factor(LogPoint.from_int(599)) == pytest.approx(expected, rel=1e-15)
        assert pi_upper_factor(LogPoint.from_int(599)) == pytest.approx(1.23428, abs=1e-5)

    def test_coarse_domination(self):
        # rho(x) < 1 + 4/ln x once ln x >= 4
        for lx in (4.0, 6.0, 20.0, 300.0):
            assert pi_upper_factor(LogPoint(lx)) < 1 + 4 / lx

    def test_limit_to_one(self):
        assert pi_upper_factor(LogPoint.from_mantissa_exp10(8, 989079)) == pytest.approx(
            1 + 4.39e-7, abs=2e-9
        )


class TestHDeviationBound:
    def test_at_599(self):
        assert h_deviation_bound(LogPoint.from_int(599)) == pytest.approx(0.30543, abs=1e-5)

    def test_validity_floor(self):
        with pytest.raises(DomainError):
            h_deviation_bound(LogPoint.from_int(598))

    def test_published_large_points(self):
        v = h_deviation_bound(LogPoint.from_mantissa_exp10(3, 120))
        assert abs(v - 0.0050222) / 0.0050222 < 0.01
        v = h_deviation_bound(LogPoint.from_mantissa_exp10(8, 989079))
        assert abs(v - 4.39e-7) / 4.39e-7 < 0.01

    def test_vanishes_at_astronomical_points(self):
        assert h_deviation_bound(LogPoint.from_mantissa_exp10(1, 10**6)) < 1e-6


class TestSweeps:
    def test_h_deviation_range(self, table):
        rep = check_h_deviation(table, 599, 100_000)
        assert rep.passed
        assert rep.max_residual < 0.30543

    def test_h_deviation_single_point(self, table):
        rep = check_h_deviation(table, 599, 599)
        assert rep.passed

    def test_h_deviation_floor_rejected(self, table):
        with pytest.raises(DomainError):
            check_h_deviation(table, 2, 598)

    def test_dusart_pi_points(self, table):
        for x in (599, 1000, 10**6):
            assert check_dusart_pi(table, x).passed

    def test_dusart_pi_floor(self, table):
        with pytest.raises(DomainError):
            check_dusart_pi(table, 500)

    def test_theta_error_sweep(self, table):
        rep = check_theta_error(table)
        assert rep.passed

    def test_theta_ratio_sandwich(self, table):
        rep = check_theta_ratio_sandwich(table)
        assert rep.passed


class TestSlackFactors:
    def test_degenerate_inner_argument(self):
        with pytest.raises(DegenerateInputError):
            slack_factors(LogPoint.from_int(5), 1.1133)  # z ~ 1.54 <= e

    def test_ordering_at_valid_points(self, table):
        # x = 13# - 1 scale: z = 0.8576 * alpha * ln x ~ 8.8
        log_x = math.log(30029.0)
        lam1, lam2 = slack_factors(LogPoint(log_x), 1.0)
        assert lam1 < 1.0 < lam2
        for lx in (15.0, 100.0, 2e6):
            l1, l2 = slack_factors(LogPoint(lx), 1.0)
            assert l1 < 1.0 < l2


class TestWeakSandwich:
    def test_far_right_factor_peak(self):
        _, right = weak_sandwich_factors(math.log(5.0), 3)
        assert right == pytest.approx(6.9579, abs=1e-3)

    def test_sandwich_holds_with_exponentiated_factors(self, table):
        for n in (2, 3, 5, 6, 8, 10):
            for g in (-1, 1):
                rep = check_weak_sandwich(table, n, g=g)
                assert rep.passed, (n, g, rep.details)

    def test_far_right_factor_below_peak(self, table):
        rep = check_weak_sandwich(table, 6)
        assert rep.detail_map()["far_right_factor"] <= 6.9579


class TestReproduceConstants:
    def test_all_asserted_constants(self, table):
        rep = reproduce_constants(table)
        assert rep.passed
        values = rep.detail_map()
        assert values["eps_599"] == pytest.approx(0.14271, abs=5e-6)
        assert values["phi_599"] == pytest.approx(0.30543, abs=1e-5)
        assert values["band_lower_factor"] == pytest.approx(0.76603, abs=1e-4)
        assert values["band_upper_factor"] == pytest.approx(1.4397, abs=1e-4)
        assert values["recip_one_plus_max_eps"] == pytest.approx(0.8576, abs=1e-4)
        assert values["far_right_factor"] == pytest.approx(6.9579, abs=1e-3)
        assert abs(values["mertens_aggregate_band"] - 6.42e-5) / 6.42e-5 < 0.02

    def test_band_constants_reported_not_asserted(self, table):
        values = reproduce_constants(table).detail_map()
        assert values["band_n_gt_5_upper_published"] == 1.46135
        assert "band_n_gt_5_upper_residual" in values
        assert values["band_n_gt_62_lower_published"] == 0.99392
