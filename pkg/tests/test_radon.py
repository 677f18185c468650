import math

import numpy as np
import pytest
from scipy.integrate import quad

import qradon.radon as rd
import qradon.states as st
from qradon.errors import AccuracyWarning, ConsistencyError, DomainError

SQRT_PI = math.sqrt(math.pi)


@pytest.fixture(scope="module")
def vacuum_field():
    vac = st.GaussianState()
    return rd.PlaneField(lambda q, p: vac.wigner(q, p), radius=7.0)


@pytest.fixture(scope="module")
def squeezed_field():
    s = st.GaussianState(0.2, -0.4, 0.3 + 0.25j)
    return rd.PlaneField(lambda q, p: s.wigner(q, p), radius=9.5)


class TestPlaneField:
    def test_tail_check_rejects_fat_fields(self):
        with pytest.raises(ConsistencyError):
            rd.PlaneField(lambda q, p: np.exp(-(q ** 2 + p ** 2) / 50), radius=5.0)

    def test_grid_backed_field_interpolates(self):
        xs = np.linspace(-6, 6, 301)
        vac = st.GaussianState()
        vals = vac.wigner(xs[:, None], xs[None, :])
        field = rd.PlaneField.from_grid(xs, xs, vals, radius=5.9)
        # bilinear on a 0.04 grid: error ~ (dx/2)^2 |W''| ~ 1.5e-4
        assert field(0.37, -0.21) == pytest.approx(vac.wigner(0.37, -0.21), abs=3e-4)


class TestRadonNumeric:
    def test_vacuum_profile(self, vacuum_field):
        for c in (-1.2, 0.0, 0.8):
            got = rd.radon_numeric(vacuum_field, 1.0, 0.0, c)
            assert got == pytest.approx(math.exp(-c * c) / SQRT_PI, abs=1e-9)

    def test_scaling_negative_mu(self, vacuum_field):
        mu = -3.0
        base = rd.radon_numeric(vacuum_field, 0.6, 0.8, 0.4)
        scaled = rd.radon_numeric(vacuum_field, mu * 0.6, mu * 0.8, mu * 0.4)
        assert scaled == pytest.approx(base / abs(mu), rel=1e-10)

    def test_vacuum_rotation_symmetry(self, vacuum_field):
        vals = [rd.radon_numeric(vacuum_field, math.cos(phi), math.sin(phi), 0.9)
                for phi in np.linspace(0, math.pi, 7, endpoint=False)]
        assert np.ptp(vals) < 1e-11

    def test_zero_normal_rejected(self, vacuum_field):
        with pytest.raises(DomainError):
            rd.radon_numeric(vacuum_field, 0.0, 0.0, 0.2)

    def test_matches_closed_form_on_squeezed_state(self, squeezed_field):
        s = st.GaussianState(0.2, -0.4, 0.3 + 0.25j)
        for (u, v, c) in ((0.9, 0.1, 0.3), (-0.4, 1.2, -0.6)):
            got = rd.radon_numeric(squeezed_field, u, v, c)
            assert got == pytest.approx(s.radon(u, v, c), abs=1e-9)


class TestFourierBridge:
    def test_b_independence_on_vacuum(self):
        vac = st.GaussianState()
        u, v = 0.7, -0.4
        vals = [rd.fourier_from_radon(lambda cs, b=b: vac.radon(u / b, v / b, cs),
                                      b, (-8 / abs(b) - 6, 8 / abs(b) + 6))
                for b in (0.5, 1.0, 2.0)]
        assert max(abs(a - b) for a in vals for b in vals) < 1e-8
        assert vals[1] == pytest.approx(vac.fourier(u, v), abs=1e-10)

    def test_unit_at_origin(self):
        vac = st.GaussianState()
        val = rd.fourier_from_radon(lambda cs: vac.radon(1, 0, cs), 1e-9, (-10, 10))
        assert val == pytest.approx(1.0, abs=1e-10)

    def test_inverse_direction_roundtrip(self):
        s = st.GaussianState(0.5, -0.1, 0.2)
        val = rd.radon_from_fourier(lambda u, v: s.fourier(u, v), 1.0, 0.0, 0.7)
        assert val == pytest.approx(s.radon(1.0, 0.0, 0.7), abs=1e-7)


class TestFilteredBackprojection:
    def test_vacuum_center(self):
        t = st.sample_tomogram(st.GaussianState())
        got = rd.wigner_from_tomogram(t, 0.0, 0.0)
        assert got == pytest.approx(1 / math.pi, abs=1e-3)

    def test_squeezed_probes(self):
        s = st.GaussianState(0, 0, 0.4)
        fbp = rd.FilteredBackprojection(st.sample_tomogram(s))
        pts = [(0, 0), (0.5, 0.5), (-1, 0.3), (0, 1), (1, -1),
               (0.2, 0), (0, -0.4), (-0.6, -0.6), (1.2, 0.8)]
        for (q, p) in pts:
            assert fbp.wigner(q, p) == pytest.approx(s.wigner(q, p), abs=5e-3)

    def test_linearity(self):
        t1 = st.sample_tomogram(st.GaussianState(0.5, 0, 0))
        t2 = st.sample_tomogram(st.GaussianState(-0.5, 0.2, 0.1),
                                phis=t1.phis, qs=t1.qs)
        mix = st.Tomogram(t1.phis, t1.qs, 0.5 * t1.values + 0.5 * t2.values)
        w_mix = rd.wigner_from_tomogram(mix, 0.3, -0.2)
        w_sep = 0.5 * rd.wigner_from_tomogram(t1, 0.3, -0.2) \
            + 0.5 * rd.wigner_from_tomogram(t2, 0.3, -0.2)
        assert w_mix == pytest.approx(w_sep, abs=1e-12)

    def test_coarse_grid_warns(self):
        t = st.sample_tomogram(st.GaussianState(),
                               phis=np.arange(32) * math.pi / 32,
                               qs=np.linspace(-6, 6, 257))
        with pytest.warns(AccuracyWarning):
            rd.FilteredBackprojection(t)

    def test_fock_state_inversion(self):
        # single photon: W(0,0) = -1/pi is the deepest nonclassical point
        rho = st.DensityMatrix.fock(1, 6)
        t = st.sample_tomogram(st.FockSource(rho),
                               phis=np.arange(181) * math.pi / 181,
                               qs=np.linspace(-7, 7, 1025))
        got = rd.wigner_from_tomogram(t, 0.0, 0.0)
        assert got == pytest.approx(-1 / math.pi, abs=2e-3)


class TestRegularizedFunctionals:
    def test_gaussian_worked_example(self):
        val = rd.reg_inv_square_functional(lambda x: np.exp(-np.asarray(x) ** 2))
        assert val == pytest.approx(-2 * SQRT_PI, abs=1e-9)

    def test_constant_gives_zero(self):
        val = rd.reg_inv_square_functional(lambda x: np.ones_like(np.asarray(x, dtype=float)))
        assert val == pytest.approx(0.0, abs=1e-10)

    def test_even_function_kills_pv(self):
        val = rd.pv_functional(lambda x: np.exp(-np.asarray(x) ** 2))
        assert val == pytest.approx(0.0, abs=1e-12)

    def test_pv_analytic_reduction(self):
        val = rd.pv_functional(lambda x: np.asarray(x) * np.exp(-np.asarray(x) ** 2))
        assert val == pytest.approx(SQRT_PI, abs=1e-10)

    def test_pv_against_shrinking_epsilon_oracle(self):
        def phi(x):
            x = np.asarray(x)
            return np.sin(x) * np.exp(-x * x / 2)

        def clipped(eps):
            up, _ = quad(lambda x: phi(x) / x, eps, 40, limit=300, epsabs=1e-13)
            lo, _ = quad(lambda x: phi(x) / x, -40, -eps, limit=300, epsabs=1e-13)
            return up + lo

        # I(eps) = I - 2 phi'(0) eps + O(eps^3): two-point Richardson
        eps = 1e-3
        oracle = 2 * clipped(eps / 2) - clipped(eps)
        assert rd.pv_functional(phi) == pytest.approx(oracle, abs=1e-8)

    def test_integration_by_parts_identity(self):
        def phi(x):
            x = np.asarray(x)
            return np.cos(x) * np.exp(-x * x / 3)

        def dphi(x):
            x = np.asarray(x)
            return (-np.sin(x) - 2 * x / 3 * np.cos(x)) * np.exp(-x * x / 3)

        lhs = rd.reg_inv_square_functional(phi)
        rhs = rd.pv_functional(dphi)
        assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_not_positive_on_positive_functions(self):
        assert rd.reg_inv_square_functional(lambda x: np.exp(-np.asarray(x) ** 2)) < 0


class TestGaussPanels:
    def test_polynomial_exactness(self):
        val = rd.gauss_panels(lambda x: x ** 6, 0.0, 2.0, panels=3, order=8)
        assert val == pytest.approx(2.0 ** 7 / 7, rel=1e-14)

    def test_complex_integrand(self):
        val = rd.gauss_panels(lambda x: np.exp(1j * x), 0.0, math.pi, panels=8)
        assert abs(val - 2j) < 1e-12
