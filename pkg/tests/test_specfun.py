"""Special-function tests against independent oracles.

Expected values are frozen from two oracles that never touch the library
code path: an fsum-accumulated power series for Bessel, and a dense
trapezoid rule for the Anger integral.  scipy serves as a third, fully
external cross-check.
"""

import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from accelrad import (AccuracyBudget, ConvergenceError, anger_j, bessel_j,
                      bessel_j_orders, rational_period_integral)

# Frozen from the fsum power-series oracle below.
J1_AT_FIRST_PEAK = 0.5818652242276431
# Frozen from the 1e6-panel trapezoid oracle below.
ANGER_HALF_AT_ONE = 0.85516530967887


def series_oracle(n, x, terms=400):
    """Independent Bessel J_n power series, fsum-accumulated."""
    term = 1.0
    for i in range(1, n + 1):
        term *= 0.5 * x / i
    vals = []
    for k in range(terms):
        vals.append(term)
        term *= -(0.5 * x) ** 2 / ((k + 1) * (n + k + 1))
        if abs(term) < 1e-300:
            break
    return math.fsum(vals)


def anger_trapezoid_oracle(nu, x, panels=10**6):
    """Independent dense-trapezoid Anger evaluation."""
    t = np.linspace(0.0, math.pi, panels + 1)
    f = np.cos(x * np.sin(t) - nu * t)
    h = math.pi / panels
    return float(h * (0.5 * f[0] + f[1:-1].sum() + 0.5 * f[-1]) / math.pi)


class TestBessel:
    def test_j0_at_zero(self):
        assert bessel_j(0, 0.0) == 1.0

    def test_j1_at_zero(self):
        assert bessel_j(1, 0.0) == 0.0

    def test_first_peak_of_j1(self):
        assert series_oracle(1, 1.8412) == pytest.approx(J1_AT_FIRST_PEAK,
                                                         rel=1e-14)
        assert bessel_j(1, 1.8412) == pytest.approx(J1_AT_FIRST_PEAK,
                                                    rel=1e-12)

    @pytest.mark.parametrize("n", [0, 1, 2, 5, 9, 12])
    @pytest.mark.parametrize("x", [0.3, 1.7, 6.0, 11.9, 13.5, 20.0])
    def test_against_series_and_scipy(self, n, x):
        mine = bessel_j(n, x)
        if x <= 12.0:  # the series oracle itself cancels badly beyond here
            assert mine == pytest.approx(series_oracle(n, x), abs=1e-12)
        assert mine == pytest.approx(scipy.special.jv(n, x), abs=1e-12)

    @pytest.mark.parametrize("x", [15.0, 30.0, 60.0, 120.0, 500.0])
    def test_miller_branch_against_scipy(self, x):
        for n in (0, 1, 3, 10, 25):
            assert bessel_j(n, x) == pytest.approx(scipy.special.jv(n, x),
                                                   abs=1e-12)

    @given(st.integers(0, 12), st.floats(-20.0, 20.0))
    @settings(max_examples=200)
    def test_parity_symmetry(self, n, x):
        assert abs(bessel_j(n, -x) - (-1.0) ** n * bessel_j(n, x)) < 1e-12

    @given(st.integers(1, 12),
           st.floats(0.05, 20.0))
    @settings(max_examples=200)
    def test_three_term_recurrence(self, n, x):
        lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x)
        rhs = (2.0 * n / x) * bessel_j(n, x)
        assert abs(lhs - rhs) < 1e-10

    def test_orders_array_matches_scalar(self):
        for x in (0.0, 0.02, 0.8, 7.5, 11.99, 12.5, 29.7, 55.0):
            arr = bessel_j_orders(30, x)
            for n in (0, 1, 7, 18, 30):
                assert arr[n] == pytest.approx(bessel_j(n, x),
                                               rel=1e-11, abs=1e-13)

    def test_orders_array_negative_argument(self):
        arr = bessel_j_orders(6, -3.2)
        for n in range(7):
            assert arr[n] == pytest.approx(bessel_j(n, -3.2), rel=1e-11,
                                           abs=1e-14)

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            bessel_j(-1, 1.0)

    def test_rejects_non_finite_argument(self):
        with pytest.raises(ValueError):
            bessel_j(0, math.nan)
        with pytest.raises(ValueError):
            bessel_j(0, math.inf)


class TestAnger:
    def test_at_origin(self):
        assert anger_j(0.0, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_reduces_to_bessel_at_integer_order(self):
        assert anger_j(3.0, 2.0) == pytest.approx(bessel_j(3, 2.0), abs=1e-12)

    @pytest.mark.parametrize("nu", range(0, 9))
    @pytest.mark.parametrize("x", [0.0, 0.7, 2.5, 6.0, 10.0])
    def test_integer_order_agreement_grid(self, nu, x):
        assert abs(anger_j(float(nu), x) - bessel_j(nu, x)) < 1e-8

    def test_half_order_against_trapezoid_oracle(self):
        assert anger_trapezoid_oracle(0.5, 1.0) == pytest.approx(
            ANGER_HALF_AT_ONE, abs=1e-12)
        assert anger_j(0.5, 1.0) == pytest.approx(ANGER_HALF_AT_ONE,
                                                  abs=1e-10)

    def test_infeasible_budget_raises_with_estimate(self):
        tiny = AccuracyBudget(rel_tol=1e-14, max_terms=40)
        with pytest.raises(ConvergenceError) as excinfo:
            anger_j(0.5, 40.0, tiny)
        assert excinfo.value.error_estimate >= 0.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            anger_j(math.nan, 1.0)


class TestRationalPeriodIntegral:
    def test_half_integer_vanishes(self):
        assert abs(rational_period_integral(1.0, 3, 2)) < 1e-10

    def test_integer_ratio_reduces_to_bessel(self):
        assert rational_period_integral(2.0, 4, 2) == pytest.approx(
            bessel_j(2, 2.0), abs=1e-12)

    def test_five_thirds_vanishes(self):
        assert abs(rational_period_integral(0.7, 5, 3)) < 1e-10

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    @pytest.mark.parametrize("p", [1, 3, 7, 11])
    def test_coprime_grid_vanishes(self, p, q):
        if math.gcd(p, q) != 1:
            pytest.skip("not coprime")
        for x in (0.3, 2.5):
            assert abs(rational_period_integral(x, p, q)) < 1e-10

    @pytest.mark.parametrize("p,q", [(2, 1), (6, 3), (8, 2), (15, 5)])
    def test_divisible_reduces_to_bessel(self, p, q):
        assert rational_period_integral(1.3, p, q) == pytest.approx(
            bessel_j(p // q, 1.3), abs=1e-11)

    def test_rejects_bad_orders(self):
        with pytest.raises(ValueError):
            rational_period_integral(1.0, 0, 2)
        with pytest.raises(ValueError):
            rational_period_integral(1.0, 3, -1)


class TestAccuracyBudget:
    def test_rejects_non_positive_tolerance(self):
        with pytest.raises(ValueError):
            AccuracyBudget(rel_tol=0.0)

    def test_rejects_zero_terms(self):
        with pytest.raises(ValueError):
            AccuracyBudget(max_terms=0)
