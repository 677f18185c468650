import math

import numpy as np
import pytest

import qradon.pattern as pt
import qradon.specfun as sf
from qradon.errors import (ConvergenceError, DomainError, RepresentationError,
                           UnreliableRegionWarning)


class TestHermiteSeries:
    def test_diagonal_zero_value(self):
        assert pt.pattern_hermite_series(0, 0, 0.0) == pytest.approx(2.0, abs=1e-12)

    def test_gap_two_zero_value(self):
        assert pt.pattern_hermite_series(2, 0, 0.0) == pytest.approx(
            -3 / math.sqrt(2), abs=1e-12)

    def test_odd_gap_vanishes(self):
        assert pt.pattern_hermite_series(3, 0, 0.0) == 0.0

    def test_zero_values_families(self):
        for n in range(13):
            assert pt.pattern_hermite_series(n, n, 0.0) == pytest.approx(
                (-1) ** n * 2, abs=1e-10)
            expected = (-1) ** (n + 1) * (2 * n + 3) / math.sqrt((n + 2) * (n + 1))
            assert pt.pattern_hermite_series(n + 2, n, 0.0) == pytest.approx(
                expected, abs=1e-10)
            assert abs(pt.pattern_hermite_series(n + 2 * 2 + 1, n, 0.0)) < 1e-10

    def test_fixed_truncation_converged_region(self):
        val_fixed = pt.pattern_hermite_series(1, 1, 0.5, trunc=80)
        val_adaptive = pt.pattern_hermite_series(1, 1, 0.5)
        assert val_fixed == pytest.approx(val_adaptive, abs=1e-13)

    def test_fixed_truncation_flags_nonconvergence(self):
        with pytest.raises(ConvergenceError):
            pt.pattern_hermite_series(0, 0, 6.0, trunc=10)

    def test_symmetry_in_indices(self):
        xs = np.linspace(-4, 4, 17)
        assert np.allclose(pt.pattern_hermite_series(5, 2, xs),
                           pt.pattern_hermite_series(2, 5, xs), atol=1e-12)

    def test_negative_index_rejected(self):
        with pytest.raises(DomainError):
            pt.pattern_hermite_series(-1, 0, 0.0)


class TestDerivProduct:
    def test_f00_constant_at_origin(self):
        assert pt.pattern_deriv_product(0, 0, 0.0) == pytest.approx(2.0, rel=1e-14)

    def test_f00_closed_structure(self):
        xs = np.linspace(-5, 5, 41)
        expected = 2 * (1 - 2 * xs * sf.dawson(xs))
        assert np.allclose(pt.pattern_deriv_product(0, 0, xs), expected, atol=1e-13)

    def test_equals_canonical_in_region(self):
        assert pt.pattern_deriv_product(1, 0, 0.5) == pytest.approx(
            pt.pattern_canonical(1, 0, 0.5), abs=1e-10)

    def test_swap_gives_other_family(self):
        xs = np.linspace(-3, 3, 13)
        assert np.allclose(pt.pattern_deriv_product(4, 1, xs, swapped=True),
                           pt.pattern_deriv_product(1, 4, xs), atol=0)

    def test_finite_difference_of_product(self):
        # independently: F'' = d/dx [h_m g_n] by central differences on the
        # public special functions
        h = 1e-6
        for (m, n) in ((0, 0), (2, 1), (1, 3), (4, 4)):
            for x in (-1.7, 0.2, 2.3):
                fd = ((sf.hermite_function(m, x + h) * sf.g_function(n, x + h)
                       - sf.hermite_function(m, x - h) * sf.g_function(n, x - h))
                      / (2 * h))
                assert pt.pattern_deriv_product(m, n, x) == pytest.approx(
                    fd, rel=2e-9, abs=2e-9)


class TestCanonical:
    def test_first_gap_equals_series(self):
        xs = np.linspace(-4.9, 4.9, 23)
        for n in (0, 2, 4):
            assert np.allclose(pt.pattern_canonical(n + 1, n, xs),
                               pt.pattern_hermite_series(n + 1, n, xs), atol=1e-12)

    def test_second_gap_correction(self):
        diff = (pt.pattern_hermite_series(2, 0, 1.3)
                - pt.pattern_canonical(2, 0, 1.3))
        assert diff == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_third_gap_correction(self):
        for n in (0, 1, 3):
            x = 0.8
            diff = (pt.pattern_hermite_series(n + 3, n, x)
                    - pt.pattern_canonical(n + 3, n, x))
            expected = math.sqrt(2 * math.factorial(n) / math.factorial(n + 3)) * 2 * x
            assert diff == pytest.approx(expected, abs=1e-12)

    def test_vanishes_at_infinity(self):
        vals = pt.pattern_canonical(5, 1, np.array([8.0, 12.0, 20.0]))
        assert abs(vals[-1]) < abs(vals[0]) < 0.2

    def test_seam_continuity(self):
        # series+correction below 5, product form above: both ~1e-11 accurate
        lo = pt.pattern_canonical(4, 2, 5.0 - 1e-9)
        hi = pt.pattern_canonical(4, 2, 5.0 + 1e-9)
        assert lo == pytest.approx(hi, abs=1e-10)


class TestF00Closed:
    def test_value_at_zero(self):
        assert pt.pattern_f00_closed(0.0) == 2.0

    def test_negative_tail_with_inverse_square_trend(self):
        # x^2 F00 -> -1 (negative tail falling like -1/x^2)
        for x in (8.0, 12.0, 20.0):
            val = pt.pattern_f00_closed(x)
            assert val < 0
            assert x * x * val == pytest.approx(-1.0, abs=3 / x ** 2 + 1e-6)

    def test_matches_series_on_core_interval(self):
        xs = np.linspace(-4, 4, 81)
        assert np.max(np.abs(pt.pattern_f00_closed(xs)
                             - pt.pattern_hermite_series(0, 0, xs))) < 1e-10

    def test_taylor_series_at_small_x(self):
        xs = np.linspace(-0.9, 0.9, 7)
        kmax = 40
        ref = np.zeros_like(xs)
        for k in range(kmax):
            ref += 2 * (-1) ** k * math.factorial(k) / math.factorial(2 * k) \
                * (2 * xs) ** (2 * k)
        assert np.allclose(pt.pattern_f00_closed(xs), ref, atol=1e-12)


class TestAsymptotic:
    def test_against_closed_form_far_out(self):
        with pytest.warns() if False else _nullcontext():
            val = pt.pattern_asymptotic(0, 0, 6.0)
        # the omitted smoothing convolution contributes ~ 1.5/x^2 relatively
        assert val == pytest.approx(pt.pattern_f00_closed(6.0), rel=6e-2)
        val12 = pt.pattern_asymptotic(0, 0, 12.0)
        assert val12 == pytest.approx(pt.pattern_f00_closed(12.0), rel=1.6e-2)

    def test_parity(self):
        for (m, n) in ((0, 0), (2, 1), (3, 3)):
            a = pt.pattern_asymptotic(m, n, 7.0)
            b = pt.pattern_asymptotic(m, n, -7.0)
            assert b == pytest.approx((-1) ** (m + n) * a, rel=1e-12)

    def test_leading_power(self):
        # leading term ~ (2x)^{m+n}: but the alternating sum tempers it;
        # compare the ratio at two far points against the closed form's
        for (m, n) in ((1, 0), (2, 1)):
            r_asym = pt.pattern_asymptotic(m, n, 10.0) / pt.pattern_asymptotic(m, n, 8.0)
            r_exact = (pt.pattern_deriv_product(min(m, n), max(m, n), 10.0)
                       / pt.pattern_deriv_product(min(m, n), max(m, n), 8.0))
            assert r_asym == pytest.approx(r_exact, rel=2e-2)

    def test_warns_in_unreliable_region(self):
        with pytest.warns(UnreliableRegionWarning):
            pt.pattern_asymptotic(0, 0, 2.0)


class _nullcontext:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False


class TestNonuniqueness:
    def test_series_vs_symmetrized_product(self):
        grid = sf.EvalGrid(np.linspace(-5, 5, 201))
        half = lambda m, n, x: (pt.pattern_deriv_product(m, n, x)
                                + pt.pattern_deriv_product(m, n, x, swapped=True)) / 2
        for (m, n) in ((3, 0), (5, 2), (4, 4)):
            coeffs, resid = pt.pattern_nonuniqueness_residual(
                "hermite-series", half, m, n, grid)
            assert resid < 1e-8
            if coeffs.size:
                assert np.max(np.abs(coeffs)) < 1e-9

    def test_known_single_coefficient(self):
        grid = sf.EvalGrid(np.linspace(-5, 5, 201))
        coeffs, resid = pt.pattern_nonuniqueness_residual(
            "hermite-series", "canonical", 2, 0, grid)
        assert resid < 1e-10
        assert coeffs[-1] == pytest.approx(1 / math.sqrt(2), abs=1e-10)

    def test_identical_representations(self):
        grid = sf.EvalGrid(np.linspace(-4, 4, 81))
        coeffs, resid = pt.pattern_nonuniqueness_residual(
            "canonical", "canonical", 3, 1, grid)
        assert resid == 0.0

    def test_inconsistency_raises(self):
        grid = sf.EvalGrid(np.linspace(-3, 3, 61))
        broken = lambda m, n, x: pt.pattern_canonical(m, n, x) + 1e-5 * np.asarray(x) ** 2
        with pytest.raises(RepresentationError):
            pt.pattern_nonuniqueness_residual("canonical", broken, 4, 0, grid)


class TestOde:
    def test_mixed_product_fourth_order(self):
        assert pt.ode_residual(2, 5, "hg", np.linspace(-2, 2, 17)) < 1e-4

    def test_diagonal_third_order(self):
        assert pt.ode_residual(3, 3, "hh", np.linspace(-2, 2, 17), order=3) < 1e-4

    def test_all_product_kinds(self):
        for kind in ("hh", "hg", "gh", "gg"):
            assert pt.ode_residual(1, 4, kind, np.linspace(-1.5, 1.5, 9)) < 1e-4

    def test_bad_kind_rejected(self):
        with pytest.raises(DomainError):
            pt.ode_residual(1, 1, "xx", [0.0])


class TestOrthogonality:
    def test_diagonal_unit(self):
        assert pt.orthogonality_check(2, 2, 1) == pytest.approx(1.0, abs=1e-6)

    def test_off_diagonal_zero(self):
        assert pt.orthogonality_check(1, 4, 0) == pytest.approx(0.0, abs=1e-6)

    def test_seed_case(self):
        assert pt.orthogonality_check(0, 0, 0) == pytest.approx(1.0, abs=1e-8)


class TestTables:
    def test_build_table_deterministic(self):
        grid = sf.EvalGrid(np.linspace(-5, 5, 101))
        t1 = pt.build_table(2, 1, "canonical", grid)
        t2 = pt.build_table(2, 1, "canonical", grid)
        assert np.array_equal(t1.values, t2.values)

    def test_first_step_derivative_identity(self):
        # d/dx[-(1/sqrt2) d/dx(h0 g0)] == d/dx[h1 g0]: the dropped constant
        # cannot survive differentiation
        xs = np.linspace(-3, 3, 25)
        f = sf.dawson(xs)
        lhs = -math.sqrt(2) * (-2 * f - 2 * xs * (1 - 2 * xs * f))
        assert np.allclose(lhs, pt.pattern_deriv_product(1, 0, xs), atol=1e-12)
