"""Special-function kernels against exact closed forms and quadrature."""

import math

import numpy as np
import pytest

from svalue.specfun import (
    ChiSquare,
    chisq_survival,
    log_chisq_survival,
    log_gamma,
    log_reg_gamma_upper,
    normal_cdf,
    normal_quantile,
    reg_gamma_upper,
)

from oracles import chisq_survival_by_quadrature, chisq_survival_closed_form_even


class TestLogGamma:
    def test_gamma_of_one_is_zero(self):
        assert abs(log_gamma(1.0)) < 1e-12

    def test_half_integer_anchor(self):
        # ln Gamma(1/2) = ln sqrt(pi)
        assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 5, 10, 20, 50, 170, 300])
    def test_matches_exact_factorials(self, n):
        exact = math.log(math.factorial(n - 1))  # integer arithmetic, then one log
        assert log_gamma(float(n)) == pytest.approx(exact, rel=1e-12)

    def test_large_argument(self):
        # mpmath (40 digits): loggamma(1e6)
        assert log_gamma(1e6) == pytest.approx(12815504.569147611, rel=1e-12)

    def test_recurrence(self):
        rng = np.random.default_rng(7)
        for x in rng.uniform(0.5, 200.0, size=200):
            assert log_gamma(x + 1.0) == pytest.approx(
                log_gamma(x) + math.log(x), rel=1e-11, abs=1e-11
            )

    @pytest.mark.parametrize("bad", [0.0, -1.0, -0.5, math.nan, math.inf])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            log_gamma(bad)


class TestRegGammaUpper:
    def test_at_zero(self):
        assert reg_gamma_upper(1.0, 0.0) == 1.0
        assert reg_gamma_upper(7.3, 0.0) == 1.0

    def test_exponential_case(self):
        # Q(1, x) = exp(-x)
        assert reg_gamma_upper(1.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)

    def test_integer_shape_closed_form(self):
        # Q(2, 3) = (1 + 3) e^-3
        assert reg_gamma_upper(2.0, 3.0) == pytest.approx(4.0 * math.exp(-3.0), rel=1e-12)

    def test_integer_shape_poisson_sum(self):
        for a in (1, 2, 3, 5, 10):
            for x in (0.1, 0.9, 2.0, 7.5, 30.0):
                term, acc = 1.0, 1.0
                for j in range(1, a):
                    term *= x / j
                    acc += term
                assert reg_gamma_upper(float(a), x) == pytest.approx(
                    math.exp(-x) * acc, rel=1e-12
                )

    def test_decreasing_in_x(self):
        rng = np.random.default_rng(11)
        for a in (0.5, 1.5, 4.0, 20.0):
            xs = np.sort(rng.uniform(0.0, 60.0, size=50))
            vals = [reg_gamma_upper(a, float(x)) for x in xs]
            assert all(u > v for u, v in zip(vals, vals[1:]))

    def test_limits(self):
        assert reg_gamma_upper(3.0, 1e4) < 1e-200
        assert reg_gamma_upper(3.0, 1e-12) == pytest.approx(1.0, abs=1e-10)

    def test_log_version_consistent(self):
        for a in (0.5, 1.0, 2.5, 10.0):
            for x in (0.2, 1.0, 3.0, 12.0, 80.0):
                q = reg_gamma_upper(a, x)
                assert math.exp(log_reg_gamma_upper(a, x)) == pytest.approx(q, rel=1e-12)

    def test_log_version_deep_tail(self):
        # mpmath (40 digits): log Q(2, 1500)
        assert log_reg_gamma_upper(2.0, 1500.0) == pytest.approx(
            -1492.6861131683665, rel=1e-13
        )

    @pytest.mark.parametrize("a,x", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.5), (math.nan, 1.0), (1.0, math.nan)])
    def test_domain(self, a, x):
        with pytest.raises(ValueError):
            reg_gamma_upper(a, x)


class TestChiSquare:
    def test_df_validation(self):
        with pytest.raises(ValueError):
            ChiSquare(0)
        with pytest.raises(ValueError):
            ChiSquare(-3)
        with pytest.raises(ValueError):
            ChiSquare(2.0)  # non-integer df is out of scope

    def test_survival_at_zero(self):
        assert chisq_survival(ChiSquare(2), 0.0) == 1.0

    def test_two_df_exponential(self):
        x = -2.0 * math.log(0.05)
        assert chisq_survival(ChiSquare(2), x) == pytest.approx(0.05, rel=1e-12)

    def test_four_df_closed_form_anchor(self):
        # (1 + x/2) exp(-x/2) at x = 11.983
        x = 11.983
        expected = (1.0 + x / 2.0) * math.exp(-x / 2.0)
        assert expected == pytest.approx(0.017478130338748097, rel=1e-12)  # mpmath
        assert chisq_survival(ChiSquare(4), x) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("df", [2, 4, 8, 20])
    @pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 10.0, 50.0])
    def test_even_df_matches_closed_form(self, df, x):
        assert chisq_survival(ChiSquare(df), x) == pytest.approx(
            chisq_survival_closed_form_even(df, x), rel=1e-12
        )

    @pytest.mark.parametrize("df", [1, 3, 5])
    @pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 10.0, 50.0])
    def test_odd_df_matches_quadrature(self, df, x):
        assert chisq_survival(ChiSquare(df), x) == pytest.approx(
            chisq_survival_by_quadrature(df, x), abs=1e-8
        )

    def test_log_survival_underflow_regime(self):
        logp = log_chisq_survival(ChiSquare(4), 3000.0)
        assert math.isfinite(logp)
        assert logp == pytest.approx(-1492.6861131683665, rel=1e-13)  # mpmath

    def test_negative_statistic_rejected(self):
        with pytest.raises(ValueError):
            chisq_survival(ChiSquare(2), -1.0)


class TestNormalCdf:
    def test_symmetry_point(self):
        assert normal_cdf(0.0) == 0.5

    def test_upper_five_percent_cutoff(self):
        assert normal_cdf(1.6448536269514722) == pytest.approx(0.95, abs=1e-12)
        # the conventionally rounded 1.645 lands within 2e-5 of 0.95
        assert normal_cdf(1.645) == pytest.approx(0.95, abs=2e-5)

    def test_lower_tail_anchor(self):
        # mpmath (40 digits): Phi(-1.96)
        assert normal_cdf(-1.96) == pytest.approx(0.024997895148220435, abs=1e-12)

    def test_complement_identity(self):
        rng = np.random.default_rng(3)
        for z in rng.uniform(-8.0, 8.0, size=200):
            assert normal_cdf(z) + normal_cdf(-z) == pytest.approx(1.0, abs=1e-12)

    def test_monotone(self):
        # [-8, 8] keeps consecutive values representable as distinct doubles
        zs = np.sort(np.random.default_rng(5).uniform(-8, 8, size=100))
        vals = [normal_cdf(float(z)) for z in zs]
        assert all(u < v for u, v in zip(vals, vals[1:]))


class TestNormalQuantile:
    def test_median(self):
        assert normal_quantile(0.5) == 0.0

    def test_anchors(self):
        assert normal_quantile(0.95) == pytest.approx(1.6448536269514722, abs=1e-9)
        assert normal_quantile(0.975) == pytest.approx(1.959963984540054, abs=1e-9)

    def test_round_trip_through_cdf(self):
        qs = np.concatenate(
            [
                10.0 ** np.arange(-10, -1, 0.5),
                np.linspace(0.05, 0.95, 19),
                1.0 - 10.0 ** np.arange(-10, -1, 0.5),
            ]
        )
        for q in qs:
            assert normal_cdf(normal_quantile(float(q))) == pytest.approx(float(q), abs=1e-9)

    def test_inverse_round_trip(self):
        # above z ~ 5 the double spacing of q near 1 exceeds 1e-9 in z, so the
        # deep upper tail is exercised through the (fully representable) lower
        # tail instead
        for z in (-8.0, -6.0, -2.5, -0.3, 0.0, 0.7, 3.1, 5.0):
            assert normal_quantile(normal_cdf(z)) == pytest.approx(z, abs=1e-9)

    def test_monotone(self):
        qs = np.sort(np.random.default_rng(9).uniform(1e-8, 1 - 1e-8, size=200))
        vals = [normal_quantile(float(q)) for q in qs]
        assert all(u < v for u, v in zip(vals, vals[1:]))

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.7, math.nan])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            normal_quantile(bad)
