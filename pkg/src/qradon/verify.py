"""Invariant suites behind the ``verify`` command.

Each suite re-derives a family of identities numerically and reports one
pass/fail record per check.  The suites are intentionally independent of
the code paths they exercise wherever a second route exists (quadrature
oracles, finite differences, exact integer arithmetic).
"""

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np

from . import pattern as pat
from . import radon as rad
from . import reconstruct as rec
from . import specfun as sf
from . import states as st
from . import symplectic as sp

__all__ = ["CheckResult", "SUITE_NAMES", "run_suite"]

SUITE_NAMES = ("specfun", "symplectic", "radon", "pattern", "reconstruct", "all")


@dataclass
class CheckResult:
    name: str
    measured: float
    tol: float
    seconds: float

    @property
    def passed(self):
        return self.measured <= self.tol

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return (f"{flag} {self.name}: measured {self.measured:.3e} "
                f"(tol {self.tol:.1e}, {self.seconds:.2f}s)")


def _check(results, name, tol, fn):
    t0 = time.perf_counter()
    measured = float(fn())
    results.append(CheckResult(name, measured, tol, time.perf_counter() - t0))


# ----------------------------------------------------------------------


def suite_specfun():
    out = []
    x_nodes, x_w = np.polynomial.legendre.leggauss(200)
    span = 14.0
    xs = x_nodes * span
    ws = x_w * span

    def orthonormality():
        rows = np.stack([sf.hermite_function(n, xs) for n in range(16)])
        gram = (rows * ws) @ rows.T
        return np.max(np.abs(gram - np.eye(16)))

    _check(out, "h orthonormality (m,n<=15, 200-pt quadrature)", 1e-8, orthonormality)

    def wronskian_const():
        worst = 0.0
        for n in range(11):
            for x in np.linspace(-4, 4, 21):
                w = sf.wronskian(lambda t: sf.hermite_function(n, t),
                                 lambda t: sf.g_function(n, t), float(x))
                worst = max(worst, abs(w - 2.0))
        return worst

    _check(out, "constant Wronskian W(h_n, g_n) = 2", 1e-7, wronskian_const)

    def ode_residual():
        worst = 0.0
        h = 1e-4
        for n in (0, 1, 3, 6, 10):
            for fn in (lambda t, n=n: sf.hermite_function(n, t),
                       lambda t, n=n: sf.g_function(n, t)):
                for x in np.linspace(-3, 3, 13):
                    x = float(x)
                    d2 = (fn(x + h) - 2 * fn(x) + fn(x - h)) / h ** 2
                    res = d2 - x * x * fn(x) + (2 * n + 1) * fn(x)
                    scale = max(abs(d2), abs(x * x * fn(x)), 1e-8)
                    worst = max(worst, abs(res) / scale)
        return worst

    _check(out, "oscillator ODE residual (h and g)", 1e-5, ode_residual)

    def parity():
        xs = np.linspace(0.1, 4.0, 17)
        worst = 0.0
        for n in range(9):
            worst = max(worst, np.max(np.abs(
                sf.hermite_function(n, -xs) - (-1) ** n * sf.hermite_function(n, xs))))
            worst = max(worst, np.max(np.abs(
                (sf.g_function(n, -xs) - (-1) ** (n + 1) * sf.g_function(n, xs))
                / np.maximum(np.abs(sf.g_function(n, xs)), 1e-30))))
        return worst

    _check(out, "parity h_n even/odd, g_n opposite", 1e-12, parity)

    def product_identity():
        xs = np.linspace(-3, 3, 25)
        worst = 0.0
        for m in range(9):
            for n in range(9):
                direct = sf.hermite_poly(m, xs) * sf.hermite_poly(n, xs)
                total = np.zeros_like(xs)
                for j in range(min(m, n) + 1):
                    coef = (math.factorial(m) * math.factorial(n)
                            / math.factorial(j) / math.factorial(m - j)
                            / math.factorial(n - j)) * 2 ** j
                    total += coef * sf.hermite_poly(m + n - 2 * j, xs)
                scale = np.maximum(np.abs(direct), 1.0)
                worst = max(worst, np.max(np.abs(direct - total) / scale))
        return worst

    _check(out, "Hermite product linearization (m,n<=8)", 1e-9, product_identity)

    def ladders():
        worst = 0.0
        h = 1e-5
        for n in range(6):
            for x in (-1.3, 0.4, 2.2):
                up = (x * sf.hermite_function(n, x)
                      - (sf.hermite_function(n, x + h) - sf.hermite_function(n, x - h))
                      / (2 * h)) / math.sqrt(2 * (n + 1))
                worst = max(worst, abs(up - sf.hermite_function(n + 1, x)))
        for x in (-0.9, 0.5, 1.4):
            down = (x * sf.g_function(0, x)
                    + (sf.g_function(0, x + 1e-5) - sf.g_function(0, x - 1e-5)) / 2e-5
                    ) / math.sqrt(2)
            worst = max(worst, abs(down - sf.g_function(-1, x)) / abs(sf.g_function(-1, x)))
            kill = (x * sf.g_function(-1, x)
                    - (sf.g_function(-1, x + 1e-5) - sf.g_function(-1, x - 1e-5)) / 2e-5)
            worst = max(worst, abs(kill) / abs(sf.g_function(-1, x)))
        return worst

    _check(out, "ladder actions (raise h, lower g_0, annihilate g_{-1})", 1e-5, ladders)

    def dawson_switchover():
        eps = 1e-9
        lo, hi = sf.dawson(7.0 - eps), sf.dawson(7.0 + eps)
        slope = abs(1 - 2 * 7.0 * sf.dawson(7.0))
        return abs(hi - lo) - 2 * eps * slope

    _check(out, "dawson branch continuity at the switchover", 1e-12, dawson_switchover)

    def mehler_moderate():
        rng = np.random.default_rng(2024)
        worst = 0.0
        for z in (0.3, -0.6):
            x = rng.uniform(-2, 2, 50)
            y = rng.uniform(-2, 2, 50)
            worst = max(worst, np.max(np.abs(
                sf.mehler_kernel(x, y, z, series_terms=60)
                - sf.mehler_kernel(x, y, z))))
        return worst

    _check(out, "Mehler series(60) vs closed form, |z| <= 0.6", 1e-10, mehler_moderate)
    return out


def suite_symplectic():
    out = []
    rng = np.random.default_rng(11)

    def unimodular_composition():
        worst = 0.0
        for _ in range(40):
            z1 = rng.uniform(-0.6, 0.6) + 1j * rng.uniform(-0.6, 0.6)
            z2 = rng.uniform(-0.6, 0.6) + 1j * rng.uniform(-0.6, 0.6)
            m1, _ = sp.unitary_squeeze_matrices(0.95 * z1 / max(1, abs(z1) / 0.9))
            m2 = sp.rotation_map(rng.uniform(0, math.pi)).compose(
                sp.unitary_squeeze_matrices(0.95 * z2 / max(1, abs(z2) / 0.9))[0])
            worst = max(worst, abs(m1.compose(m2).det - 1.0))
        return worst

    _check(out, "unimodularity under composition", 1e-11, unimodular_composition)

    def squeeze_roundtrip():
        worst = 0.0
        for _ in range(25):
            z = rng.uniform(-0.8, 0.8) + 1j * rng.uniform(-0.8, 0.8)
            z = z * 0.85 / max(abs(z), 0.85)
            eta = rng.uniform(-1.2, 1.2)
            params = sp.SqueezeParams.unitary_family(sp.zeta_reparam_inverse(z), eta)
            m = sp.matrix_from_squeeze(params)
            if (m.alpha + m.delta) / 2 <= -1:
                continue
            back = sp.matrix_from_squeeze(sp.squeeze_from_matrix(m))
            worst = max(worst, np.max(np.abs(back.matrix - m.matrix)))
        return worst

    _check(out, "matrix_from_squeeze o squeeze_from_matrix = id", 1e-9, squeeze_roundtrip)

    def representation_bijection():
        worst = 0.0
        for _ in range(30):
            z = rng.uniform(-0.7, 0.7) + 1j * rng.uniform(-0.7, 0.7)
            m, cm = sp.unitary_squeeze_matrices(z * 0.9 / max(abs(z), 0.9))
            m = m.compose(sp.rotation_map(rng.uniform(0, math.pi)))
            cm2 = sp.complex_from_real(m)
            back = sp.real_from_complex(cm2)
            worst = max(worst, np.max(np.abs(back.matrix - m.matrix)))
            worst = max(worst, abs((cm2.kappa + cm2.nu) - (m.alpha + m.delta)))
        return worst

    _check(out, "complex/real representation bijection and trace identity",
           1e-12, representation_bijection)

    def unitary_structure():
        worst = 0.0
        for _ in range(20):
            z = rng.uniform(-0.7, 0.7) + 1j * rng.uniform(-0.7, 0.7)
            real_m, cm = sp.unitary_squeeze_matrices(z * 0.9 / max(abs(z), 0.9))
            worst = max(worst, abs(cm.nu - cm.kappa.conjugate()))
            worst = max(worst, abs(cm.lam - cm.mu.conjugate()))
            worst = max(worst, abs(real_m.det - 1.0))
        return worst

    _check(out, "unitary subfamily: nu = conj(kappa), lam = conj(mu)",
           1e-12, unitary_structure)

    def small_eps_seam():
        import cmath
        worst = 0.0
        for phase in (1.0, -1.0, 1j, -1j, (1 + 1j) / math.sqrt(2)):
            eps = 1e-4 * phase
            series, ch_series = sp._sh_over_eps(eps * (1 - 1e-16))
            direct = cmath.sinh(eps) / eps
            worst = max(worst, abs(series - direct), abs(ch_series - cmath.cosh(eps)))
        return worst

    _check(out, "sh(eps)/eps series continuity at |eps| = 1e-4", 1e-13, small_eps_seam)

    def bilinear_invariance():
        worst = 0.0
        for _ in range(25):
            z = rng.uniform(-0.7, 0.7) + 1j * rng.uniform(-0.7, 0.7)
            m, _ = sp.unitary_squeeze_matrices(z * 0.9 / max(abs(z), 0.9))
            q, p, u, v = rng.normal(size=4)
            qp, pp = m.transform_point(q, p)
            up, vp = sp.transform_radon_args(u, v, m)
            worst = max(worst, abs((up * qp + vp * pp) - (u * q + v * p)))
        return worst

    _check(out, "uq + vp invariant under the contragredient pairing",
           1e-12, bilinear_invariance)
    return out


def suite_radon():
    out = []
    sq = st.GaussianState(0.4, -0.3, 0.35 + 0.2j)
    field = rad.PlaneField(lambda q, p: sq.wigner(q, p), radius=9.0)

    def normalization():
        worst = 0.0
        for phi in (0.0, 0.7, 1.9, 2.6):
            u, v = math.cos(phi), math.sin(phi)
            val = rad.gauss_panels(
                lambda cs: np.array([rad.radon_numeric(field, u, v, float(c)) for c in cs]),
                -9, 9, 36, order=12)
            worst = max(worst, abs(val - 1.0))
        return worst

    _check(out, "normalization: int dc of the line transform = 1", 1e-7, normalization)

    def homogeneity():
        worst = 0.0
        base = [(0.8, 0.6, 0.5), (1.0, 0.0, -0.4), (0.3, -1.1, 0.9)]
        for (u, v, c) in base:
            ref = rad.radon_numeric(field, u, v, c)
            for mu in (-3.0, -1.0, 0.5, 2.0):
                val = rad.radon_numeric(field, mu * u, mu * v, mu * c)
                worst = max(worst, abs(val - ref / abs(mu)) / abs(ref))
        return worst

    _check(out, "homogeneity W(mu u, mu v; mu c) = W(u, v; c)/|mu|", 1e-8, homogeneity)

    def b_independence():
        vac = st.GaussianState()
        u, v = 0.6, -0.8
        vals = []
        for b in (0.5, 1.0, 2.0):
            row = lambda cs, b=b: vac.radon(u / b, v / b, cs)
            vals.append(rad.fourier_from_radon(row, b, (-20 / abs(b) - 5, 20 / abs(b) + 5)))
        spread = max(abs(a - b) for a in vals for b in vals)
        anchor = abs(rad.fourier_from_radon(lambda cs: vac.radon(1, 0, cs), 1e-9,
                                            (-12, 12)) - 1.0)
        return max(spread, anchor)

    _check(out, "Fourier bridge: b-independence and value 1 at the origin",
           1e-8, b_independence)

    def inverse_bridge():
        vac = st.GaussianState()
        val = rad.radon_from_fourier(lambda u, v: vac.fourier(u, v), 1.0, 0.0, 0.7)
        return abs(val - vac.radon(1.0, 0.0, 0.7))

    _check(out, "inverse Fourier bridge round trip at c = 0.7", 1e-7, inverse_bridge)

    def functional_worked_example():
        val = rad.reg_inv_square_functional(lambda x: np.exp(-np.asarray(x) ** 2))
        return abs(val + 2 * math.sqrt(math.pi))

    _check(out, "regularized 1/x^2 on the Gaussian = -2 sqrt(pi)", 1e-9,
           functional_worked_example)

    def functional_identities():
        even = abs(rad.pv_functional(lambda x: np.exp(-np.asarray(x) ** 2)))
        reduced = abs(rad.pv_functional(
            lambda x: np.asarray(x) * np.exp(-np.asarray(x) ** 2)) - math.sqrt(math.pi))

        def test_phi(x):
            x = np.asarray(x)
            return np.sin(x) * np.exp(-x * x / 2)

        from scipy.integrate import quad
        pv_oracle = quad(test_phi, -30, 30, weight="cauchy", wvar=0.0,
                         limit=400)[0]
        pv_err = abs(rad.pv_functional(test_phi) - pv_oracle)

        def dphi(x):
            x = np.asarray(x)
            return (np.cos(x) - x * np.sin(x)) * np.exp(-x * x / 2)

        parts = abs(rad.reg_inv_square_functional(test_phi) - rad.pv_functional(dphi))
        sign_ok = 0.0 if rad.reg_inv_square_functional(
            lambda x: np.exp(-np.asarray(x) ** 2)) < 0 else 1.0
        return max(even, reduced, pv_err, parts, sign_ok)

    _check(out, "functional identities (even kill, analytic reductions, "
                "integration by parts, negativity)", 1e-8, functional_identities)

    def fbp_probes():
        vac_t = st.sample_tomogram(st.GaussianState())
        e0 = abs(rad.wigner_from_tomogram(vac_t, 0.0, 0.0) - 1 / math.pi) / 1e-3
        sq_st = st.GaussianState(0, 0, 0.4)
        fbp = rad.FilteredBackprojection(st.sample_tomogram(sq_st))
        pts = [(0, 0), (0.5, 0.5), (-1, 0.3), (0, 1), (1, -1),
               (0.2, 0), (0, -0.4), (-0.6, -0.6), (1.2, 0.8)]
        e1 = max(abs(fbp.wigner(q, p) - sq_st.wigner(q, p)) for q, p in pts) / 5e-3
        return max(e0, e1)

    _check(out, "filtered back-projection probes (scaled to their tolerances)",
           1.0, fbp_probes)

    def roundtrip_identity():
        sq_st = st.GaussianState(0.3, 0.2, 0.3)
        fbp = rad.FilteredBackprojection(st.sample_tomogram(sq_st))
        grid = np.linspace(-6.5, 6.5, 261)
        qq, pp = np.meshgrid(grid, grid, indexing="ij")
        w = fbp.wigner(qq, pp)
        field2 = rad.PlaneField.from_grid(grid, grid, w, radius=6.4,
                                          tail_eps=1e-10, check=False)
        worst = 0.0
        for phi in (0.2, 1.1, 2.3):
            for c in (-0.8, 0.0, 0.6):
                val = rad.radon_numeric(field2, math.cos(phi), math.sin(phi), c)
                worst = max(worst, abs(val - sq_st.radon(math.cos(phi), math.sin(phi), c)))
        return worst

    _check(out, "identity resolution: re-projected inversion matches the tomogram",
           5e-3, roundtrip_identity)
    return out


def suite_pattern():
    out = []

    def zero_values():
        worst = 0.0
        for n in range(13):
            worst = max(worst, abs(pat.pattern_hermite_series(n, n, 0.0)
                                   - (-1) ** n * 2))
            target = (-1) ** (n + 1) * (2 * n + 3) / math.sqrt((n + 2) * (n + 1))
            worst = max(worst, abs(pat.pattern_hermite_series(n + 2, n, 0.0) - target))
            worst = max(worst, abs(pat.pattern_hermite_series(n + 3, n, 0.0)))
        return worst

    _check(out, "series zero-values (diagonal, two off-diagonals)", 1e-10, zero_values)

    xs = np.linspace(-6, 6, 601)

    def cross_representation():
        worst = 0.0
        for m in range(9):
            for n in range(m, 9):
                series = pat.pattern_hermite_series(m, n, xs)
                mean = (pat.pattern_deriv_product(m, n, xs)
                        + pat.pattern_deriv_product(m, n, xs, swapped=True)) / 2
                worst = max(worst, float(np.max(np.abs(series - mean))))
        return worst

    _check(out, "series = mean of the two product forms on [-6, 6]",
           1e-8, cross_representation)

    def region_identity():
        worst = 0.0
        for n in range(9):
            for m in range(min(n + 2, 9)):
                canon = pat.pattern_canonical(m, n, xs)
                prod = pat.pattern_deriv_product(m, n, xs)
                worst = max(worst, float(np.max(np.abs(canon - prod))))
        return worst

    _check(out, "product form equals canonical for m <= n+1", 1e-9, region_identity)

    def corrections():
        xs2 = np.linspace(-4.5, 4.5, 41)
        worst = 0.0
        for n in range(5):
            a = pat.pattern_canonical(n + 2, n, xs2) - pat.pattern_hermite_series(n + 2, n, xs2)
            worst = max(worst, np.max(np.abs(
                a + math.sqrt(math.factorial(n) / math.factorial(n + 2)))))
            b = pat.pattern_canonical(n + 3, n, xs2) - pat.pattern_hermite_series(n + 3, n, xs2)
            worst = max(worst, np.max(np.abs(
                b + math.sqrt(2 * math.factorial(n) / math.factorial(n + 3)) * 2 * xs2)))
        return worst

    _check(out, "finite Hermite corrections for the first two gaps", 1e-9, corrections)

    def parity_symmetry():
        xs2 = np.linspace(0.05, 5.5, 30)
        worst = 0.0
        for (m, n) in ((0, 0), (1, 0), (3, 2), (5, 2), (4, 4), (7, 3)):
            f_pos = pat.pattern_canonical(m, n, xs2)
            f_neg = pat.pattern_canonical(m, n, -xs2)
            worst = max(worst, np.max(np.abs(f_neg - (-1) ** (m + n) * f_pos)))
            worst = max(worst, np.max(np.abs(
                pat.pattern_canonical(n, m, xs2) - f_pos)))
            worst = max(worst, np.max(np.abs(
                pat.pattern_hermite_series(n, m, xs2)
                - pat.pattern_hermite_series(m, n, xs2))))
        return worst

    _check(out, "parity (-1)^{m+n} and index symmetry", 1e-9, parity_symmetry)

    def nonuniqueness():
        grid = sf.EvalGrid(np.linspace(-5, 5, 201))
        half_sum = lambda m, n, x: (pat.pattern_deriv_product(m, n, x)
                                    + pat.pattern_deriv_product(m, n, x, swapped=True)) / 2
        worst = 0.0
        for (m, n) in ((4, 1), (5, 2), (6, 0)):
            coeffs, resid = pat.pattern_nonuniqueness_residual(
                "hermite-series", half_sum, m, n, grid)
            worst = max(worst, float(np.max(np.abs(coeffs))) if coeffs.size else 0.0,
                        resid)
        _, resid2 = pat.pattern_nonuniqueness_residual(
            "hermite-series", "canonical", 2, 0, grid)
        coeffs3, _ = pat.pattern_nonuniqueness_residual(
            "hermite-series", "canonical", 2, 0, grid)
        worst = max(worst, resid2, abs(float(coeffs3[-1]) - 1 / math.sqrt(2)))
        return worst

    _check(out, "nonuniqueness lives exactly in the low Hermite span", 1e-8,
           nonuniqueness)

    def ode_checks():
        grid = np.linspace(-2, 2, 17)
        worst = pat.ode_residual(2, 5, "hg", grid, order=4)
        worst = max(worst, pat.ode_residual(3, 3, "hh", grid, order=3))
        worst = max(worst, pat.ode_residual(1, 4, "gh", grid, order=4))
        return worst

    _check(out, "fourth-order product ODE (third-order on the diagonal)",
           1e-4, ode_checks)

    def orthogonality():
        worst = 0.0
        for k in (0, 2, 4):
            for m in (0, 2, 4):
                for j in (0, 1, 3):
                    val = pat.orthogonality_check(k, m, j)
                    worst = max(worst, abs(val - (1.0 if k == m else 0.0)))
        return worst

    _check(out, "biorthogonality of product derivatives against h-pairs",
           1e-6, orthogonality)

    def truncation_soundness():
        xs2 = np.array([-4.8, -2.0, 0.7, 3.3, 4.9])
        worst = 0.0
        for (m, n) in ((0, 0), (3, 1), (6, 6)):
            loose, _ = pat._series_core(m, n, np.asarray(xs2, dtype=pat.LD))
            tight, _ = pat._series_core(m, n, np.asarray(xs2, dtype=pat.LD),
                                        rel_tol=1e-15)
            worst = max(worst, float(np.max(np.abs(
                np.asarray(loose, dtype=float) - np.asarray(tight, dtype=float)))))
        return worst

    _check(out, "series result moves < 1e-12 when the stop rule tightens 10x",
           1e-12, truncation_soundness)

    def derivative_anomaly():
        xs2 = np.linspace(-3, 3, 25)
        f = sf.dawson(xs2)
        lhs = -math.sqrt(2) * (-2 * f - 2 * xs2 * (1 - 2 * xs2 * f))
        rhs = pat.pattern_deriv_product(1, 0, xs2)
        return np.max(np.abs(lhs - rhs))

    _check(out, "first-step derivative identity (constant shift drops out)",
           1e-10, derivative_anomaly)
    return out


def suite_reconstruct():
    out = []

    def circle_division():
        # exact integer residue classes: sum over the (n+1)-th roots is
        # (n+1) delta_{s,0}; verified without floating arithmetic
        for n in range(13):
            mod = n + 1
            for s in range(0, 3 * mod):
                residues = [(m * s) % mod for m in range(mod)]
                counts = np.bincount(residues, minlength=mod)
                if s % mod == 0:
                    if counts[0] != mod:
                        return 1.0
                else:
                    g = math.gcd(s, mod)
                    expected = {r: g for r in range(0, mod, g)}
                    actual = {r: c for r, c in enumerate(counts) if c}
                    if actual != expected or mod // g <= 1:
                        return 1.0
        return 0.0

    _check(out, "circle-division orthogonality by exact residue classes",
           0.5, circle_division)

    vac_t = st.sample_tomogram(st.GaussianState())

    def vacuum_elements():
        r00 = rec.fock_element_from_tomogram(vac_t, 0, 0)
        r11 = rec.fock_element_from_tomogram(vac_t, 1, 1)
        return max(abs(r00 - 1.0), abs(r11))

    _check(out, "vacuum reconstruction: rho_00 = 1, rho_11 = 0", 1e-6,
           vacuum_elements)

    sq_state = st.GaussianState(1.0, -0.5, 0.3)
    sq_t = st.sample_tomogram(sq_state)

    def moment_routes():
        worst = 0.0
        for (k, l) in ((0, 1), (1, 1), (0, 2), (2, 1), (2, 2)):
            avg = rec.moment_angle_average(sq_t, k, l)
            disc = rec.moment_discrete_angles(sq_state, k, l)
            worst = max(worst, abs(avg - disc))
            worst = max(worst, abs(rec.moment_angle_average(sq_t, l, k)
                                   - avg.conjugate()))
        low = rec.moments_low_order_custom(sq_state, rec.PRESET_QUARTERS)
        worst = max(worst, abs(low[(0, 1)] - rec.moment_angle_average(sq_t, 0, 1)))
        worst = max(worst, abs(low[(0, 0)] - 1.0))
        return worst

    _check(out, "moment routes agree (average, harmonic, explicit angles)",
           1e-8, moment_routes)

    def gaussian_density():
        # nmax = 12 keeps the genuinely truncated population below 1e-5;
        # the half grid is plenty for these tolerances
        rho, diag = rec.density_matrix_from_tomogram(sq_t.half_grid(), 12)
        return max(diag["hermiticity_defect"] / 1e-8,
                   abs(diag["trace"] - 1.0) / 1e-5) * 1e-8

    _check(out, "reconstructed density: Hermitian 1e-8, trace 1e-5 (scaled)",
           1e-8, gaussian_density)

    def diagonal_angle_shift():
        phis = vac_t.phis
        shifted_phis = np.sort(np.mod(phis + 0.37, math.pi))
        t_a = st.sample_tomogram(sq_state, phis, vac_t.qs)
        t_b = st.sample_tomogram(sq_state, shifted_phis, vac_t.qs)
        worst = 0.0
        for n in (0, 1, 3):
            a = rec.fock_element_from_tomogram(t_a, n, n)
            b = rec.fock_element_from_tomogram(t_b, n, n)
            worst = max(worst, abs(a - b))
        return worst

    _check(out, "diagonal elements ignore a global angle shift", 1e-9,
           diagonal_angle_shift)

    def displacement_covariance():
        alpha = 0.45 - 0.35j
        t = st.sample_tomogram(st.GaussianState(
            math.sqrt(2) * alpha.real, math.sqrt(2) * alpha.imag, 0.0))
        rho, _ = rec.density_matrix_from_tomogram(t.half_grid(), 8)
        return abs(rho.mean_annihilation() - alpha)

    _check(out, "end-to-end displacement covariance of <a rho>", 1e-5,
           displacement_covariance)
    return out


_SUITES = {
    "specfun": suite_specfun,
    "symplectic": suite_symplectic,
    "radon": suite_radon,
    "pattern": suite_pattern,
    "reconstruct": suite_reconstruct,
}


def run_suite(name):
    """Run one suite (or "all"); returns a list of CheckResult."""
    if name == "all":
        keys = ("specfun", "symplectic", "radon", "pattern", "reconstruct")
    elif name in _SUITES:
        keys = (name,)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    results = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for key in keys:
            results.extend(_SUITES[key]())
    return results
