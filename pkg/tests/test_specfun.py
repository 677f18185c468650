import math

import numpy as np
import pytest
from scipy.integrate import quad
import scipy.special

import qradon.specfun as sf
from qradon.errors import DomainError, RangeError

SQRT_PI = math.sqrt(math.pi)

# frozen before the build from the quadrature oracle below
DAWSON_AT_1 = 0.5380795069127684


class TestHermitePoly:
    def test_h0_is_one(self):
        assert sf.hermite_poly(0, 0.7) == 1.0

    def test_h1(self):
        assert sf.hermite_poly(1, 0.7) == pytest.approx(1.4, abs=1e-15)

    def test_h2(self):
        assert sf.hermite_poly(2, 1.0) == pytest.approx(2.0, abs=1e-14)

    def test_matches_scipy_eval_hermite(self):
        xs = np.linspace(-4, 4, 17)
        for n in (3, 7, 15, 30):
            ref = scipy.special.eval_hermite(n, xs)
            got = sf.hermite_poly(n, xs)
            assert np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1)) < 1e-12

    def test_overflow_raises_range_error(self):
        with pytest.raises(RangeError):
            sf.hermite_poly(400, 80.0)

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            sf.hermite_poly(-1, 0.0)


class TestHermiteFunction:
    def test_ground_state_value(self):
        assert sf.hermite_function(0, 0.0) == pytest.approx(np.pi ** -0.25, rel=1e-15)

    def test_odd_parity_zero(self):
        assert sf.hermite_function(1, 0.0) == 0.0

    def test_unit_norm_by_quadrature(self):
        val, _ = quad(lambda x: sf.hermite_function(3, x) ** 2, -12, 12,
                      epsabs=1e-13, limit=200)
        assert val == pytest.approx(1.0, abs=1e-10)

    def test_underflows_gracefully(self):
        assert sf.hermite_function(2, 60.0) == 0.0

    def test_large_order_stays_normalized(self):
        # normalized recurrence must not overflow even at n = 500
        val = sf.hermite_function(500, 1.3)
        assert np.isfinite(val) and abs(val) < 1.0

    def test_derivative_ladder(self):
        h = 1e-6
        for n in (0, 2, 5):
            for x in (-1.1, 0.3, 2.4):
                fd = (sf.hermite_function(n, x + h) - sf.hermite_function(n, x - h)) / (2 * h)
                assert sf.hermite_function_derivative(n, x) == pytest.approx(fd, abs=1e-7)


class TestDawson:
    def test_odd_at_zero(self):
        assert sf.dawson(0.0) == 0.0

    def test_value_at_one_vs_frozen_quadrature_oracle(self):
        inner, _ = quad(lambda t: math.exp(t * t), 0.0, 1.0, epsabs=1e-14)
        oracle = math.exp(-1.0) * inner
        assert oracle == pytest.approx(DAWSON_AT_1, abs=1e-13)
        assert sf.dawson(1.0) == pytest.approx(DAWSON_AT_1, abs=1e-13)

    def test_asymptotic_tail(self):
        assert sf.dawson(6.0) == pytest.approx(1 / 12 + 1 / (4 * 6 ** 3), abs=1e-3)

    def test_relative_accuracy_vs_scipy(self):
        xs = np.linspace(-10, 10, 401)
        got = sf.dawson(xs)
        ref = scipy.special.dawsn(xs)
        mask = np.abs(ref) > 0
        assert np.max(np.abs(got[mask] - ref[mask]) / np.abs(ref[mask])) < 1e-12

    def test_oddness(self):
        xs = np.linspace(0.1, 9, 40)
        assert np.allclose(sf.dawson(-xs), -sf.dawson(xs), rtol=0, atol=1e-16)


class TestGFunction:
    def test_g0_odd_parity(self):
        assert sf.g_function(0, 0.0) == 0.0

    def test_gm1_at_zero(self):
        assert sf.g_function(-1, 0.0) == pytest.approx(
            math.sqrt(2) * np.pi ** 0.25, rel=1e-14)

    def test_wronskian_with_h0_at_origin_neighborhood(self):
        w = sf.wronskian(lambda x: sf.hermite_function(0, x),
                         lambda x: sf.g_function(0, x), 0.3)
        assert w == pytest.approx(2.0, abs=1e-9)

    def test_wronskian_order3(self):
        w = sf.wronskian(lambda x: sf.hermite_function(3, x),
                         lambda x: sf.g_function(3, x), 0.5)
        assert w == pytest.approx(2.0, abs=1e-8)

    def test_wronskian_parity_side(self):
        w = sf.wronskian(lambda x: sf.hermite_function(1, x),
                         lambda x: sf.g_function(1, x), -2.0)
        assert w == pytest.approx(2.0, abs=1e-8)

    def test_matches_polynomial_expansion(self):
        # closed expansion through Hermite polynomials and the Dawson
        # integral, with i^{n-1-k} H_{n-1-k}(ix) generated as a real
        # polynomial by the sign-flipped recurrence
        def g_expansion(n, x):
            hplus = [np.ones_like(x), 2 * x]  # i^{-m} H_m(ix)
            for m in range(1, n):
                hplus.append(2 * x * hplus[m] + 2 * m * hplus[m - 1])
            herm = [np.ones_like(x), 2 * x]
            for m in range(1, n):
                herm.append(2 * x * herm[m] - 2 * m * herm[m - 1])
            poly = np.zeros_like(x)
            for k in range(n):
                sign = (-1.0) ** (n - 1 - k)
                poly += math.comb(n, k) * sign * hplus[n - 1 - k] * herm[k]
            pref = 2 * np.pi ** 0.25 / math.sqrt(2.0 ** n * math.factorial(n))
            return pref * np.exp(x * x / 2) * (herm[n] * scipy.special.dawsn(x) - poly)

        xs = np.linspace(-3.5, 3.5, 29)
        for n in (1, 2, 3, 5, 8):
            ref = g_expansion(n, xs)
            got = sf.g_function(n, xs)
            assert np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1)) < 1e-10

    def test_derivative_ladder(self):
        h = 1e-6
        for n in (-1, 0, 2, 4):
            for x in (-1.7, 0.4, 1.9):
                fd = (sf.g_function(n, x + h) - sf.g_function(n, x - h)) / (2 * h)
                assert sf.g_derivative(n, x) == pytest.approx(fd, rel=1e-7, abs=1e-7)

    def test_overflow_reports_safe_limit(self):
        with pytest.raises(RangeError) as info:
            sf.g_function(0, 40.0)
        assert info.value.safe_limit == pytest.approx(37.6, abs=0.2)


class TestWronskian:
    def test_self_wronskian_vanishes(self):
        f = lambda x: sf.hermite_function(0, x)
        assert sf.wronskian(f, f, 1.234) == 0.0

    def test_analytic_derivatives_accepted(self):
        w = sf.wronskian(lambda x: sf.hermite_function(2, x),
                         lambda x: sf.g_function(2, x), 0.9,
                         df=lambda x: sf.hermite_function_derivative(2, x),
                         dg=lambda x: sf.g_derivative(2, x))
        assert w == pytest.approx(2.0, abs=1e-12)


class TestMehler:
    def test_z_zero_collapses(self):
        assert sf.mehler_kernel(0.8, -1.1, 0.0) == pytest.approx(1.0, rel=1e-15)
        assert sf.mehler_kernel(0.8, -1.1, 0.0, series_terms=0) == 1.0

    def test_series_matches_closed(self):
        got = sf.mehler_kernel(0.5, -0.3, 0.6, series_terms=60)
        assert got == pytest.approx(sf.mehler_kernel(0.5, -0.3, 0.6), abs=1e-10)

    def test_direct_substitution(self):
        val = sf.mehler_kernel(1.0, 1.0, 0.9)
        assert val == pytest.approx((1 - 0.81) ** -0.5 * math.exp((1.8 - 1.62) / 0.19),
                                    rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.mehler_kernel(0.0, 0.0, 1.0)


class TestLaguerre:
    def test_degree_zero(self):
        assert sf.laguerre_assoc(0, 3, 1.7) == 1.0

    def test_degree_one(self):
        xs = np.linspace(-2, 2, 9)
        assert np.allclose(sf.laguerre_assoc(1, 0, xs), 1 - xs, atol=1e-15)

    def test_binomial_sum_oracle(self):
        def oracle(n, k, x):
            return sum((-1) ** j * math.comb(n + k, n - j) * x ** j / math.factorial(j)
                       for j in range(n + 1))

        for (n, k, x) in ((2, 1, 0.5), (4, 2, 1.3), (5, 0, -0.7), (3, 3, 2.0)):
            assert sf.laguerre_assoc(n, k, x) == pytest.approx(
                oracle(n, k, x), rel=1e-12)

    def test_matches_scipy(self):
        xs = np.linspace(0, 6, 13)
        ref = scipy.special.eval_genlaguerre(5, 2, xs)
        assert np.allclose(sf.laguerre_assoc(5, 2, xs), ref, rtol=1e-12)


class TestEvalGrid:
    def test_rejects_unsorted(self):
        with pytest.raises(DomainError):
            sf.EvalGrid(np.array([0.0, -1.0, 2.0]))

    def test_weight_shape_checked(self):
        with pytest.raises(DomainError):
            sf.EvalGrid(np.array([0.0, 1.0]), weights=np.array([1.0]))
