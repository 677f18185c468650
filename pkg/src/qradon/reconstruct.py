"""Inverse problems on tomograms.

Fock matrix elements through pattern functions, Q-function values through
the Dawson kernel, normally ordered moments through Hermite-weighted
projections (angle-averaged, harmonic circle divisions, or explicit
low-order angle sets), and the density matrix from moments.

Sources may be sampled `Tomogram` objects (quadrature on the native grid:
periodic trapezoid over the half circle, trapezoid in q, both
superalgebraically accurate for smooth decaying rows) or analytic
evaluators (sampled on the default grid first; discrete-angle solvers
integrate analytic rows with composite Gauss-Legendre panels instead).
Each target element is independent; everything here is pure.
"""

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import _xprec
from .errors import (AccuracyError, AccuracyWarning, ConsistencyError,
                     DomainError, WindowError)
from .pattern import pattern_eval
from .radon import _periodic_weights, gauss_panels
from .specfun import dawson, hermite_poly
from .states import DensityMatrix, MomentSet, Tomogram, sample_tomogram, default_grid

__all__ = [
    "AngleDivision",
    "QuadratureSpec",
    "PRESET_QUARTERS",
    "PRESET_HARMONIC_THIRDS",
    "fock_element_from_tomogram",
    "density_matrix_from_tomogram",
    "qfunction_from_tomogram",
    "moment_angle_average",
    "moment_discrete_angles",
    "moments_low_order_custom",
    "moment_set_from_tomogram",
    "density_from_moments",
    "projection_identity_check",
]

#: explicit 3-angle preset (0, pi/4, pi/2) for the second-order solver
PRESET_QUARTERS = (0.0, math.pi / 4, math.pi / 2)
#: harmonic thirds (0, pi/3, 2pi/3)
PRESET_HARMONIC_THIRDS = (0.0, math.pi / 3, 2 * math.pi / 3)


@dataclass(frozen=True)
class AngleDivision:
    """Discrete angle set: harmonic division of given order or explicit list."""

    kind: str  # "harmonic" | "explicit"
    order: int = 0
    phi0: float = 0.0
    explicit: tuple = ()

    @classmethod
    def harmonic(cls, order, phi0=0.0):
        if order < 0:
            raise DomainError("harmonic division needs order >= 0")
        return cls("harmonic", order=order, phi0=float(phi0))

    @classmethod
    def from_angles(cls, angles):
        angles = tuple(float(a) for a in angles)
        for i, a in enumerate(angles):
            for b in angles[:i]:
                if abs(math.sin(a - b)) < 1e-12:
                    raise DomainError(
                        f"angles {a} and {b} are equivalent mod pi")
        return cls("explicit", explicit=angles)

    def angles(self):
        if self.kind == "harmonic":
            s = self.order
            return np.array([self.phi0 + m * math.pi / (s + 1) for m in range(s + 1)])
        return np.array(self.explicit)


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid and gating knobs for the reconstruction quadratures."""

    n_phi: int = 181
    n_q: int = 1025
    window: tuple | None = None  # (lo, hi) position window override
    panel_width: float = 0.5
    panel_order: int = 16
    window_factor: float = 8.0
    check_tol: float | None = None  # Richardson half-grid gate when set
    tail_tol: float = 1e-10

    def widened(self, extra_sigmas):
        return replace(self, window_factor=self.window_factor + extra_sigmas)


_DEFAULT_SPEC = QuadratureSpec()


def _as_tomogram(source, spec: QuadratureSpec):
    if isinstance(source, Tomogram):
        return source
    if spec.window is not None:
        lo, hi = spec.window
        qs = np.linspace(lo, hi, spec.n_q)
    else:
        center, sigma = source.grid_hints()
        half = center + spec.window_factor * sigma
        qs = np.linspace(-half, half, spec.n_q)
    phis = np.arange(spec.n_phi) * math.pi / spec.n_phi
    return sample_tomogram(source, phis, qs, validate=False)


def _trapezoid_weights(qs):
    w = np.empty_like(qs)
    w[1:-1] = (qs[2:] - qs[:-2]) / 2
    w[0] = (qs[1] - qs[0]) / 2
    w[-1] = (qs[-1] - qs[-2]) / 2
    return w


def _tail_guard(tomogram, weighted_rows, tol):
    """Estimate the Hermite-weighted mass beyond the window edges."""
    qs = tomogram.qs
    for side in (0, -1):
        near = weighted_rows[:, [side + 1 if side == 0 else -2, side]]
        f_in = np.max(np.abs(near[:, 0]))
        f_edge = np.max(np.abs(near[:, 1]))
        if f_edge == 0:
            continue
        dq = abs(qs[1] - qs[0]) if side == 0 else abs(qs[-1] - qs[-2])
        decay = math.log(max(f_in / f_edge, 1.01)) if f_in > f_edge else 0.1
        tail = f_edge * dq / decay
        if tail > tol:
            raise WindowError(
                f"Hermite-weighted tail ~{tail:.2e} outside the q-window (tol {tol:.1e})")


def _tomogram_integral(tomogram, q_kernel, phase_order, spec):
    """(1/pi) int dphi e^{i phase_order phi} int dq W(phi; q) kernel(phi, q).

    ``q_kernel`` maps the angle index to the kernel row over the q grid.
    """
    wq = _trapezoid_weights(tomogram.qs)
    row_ints = np.array([
        np.sum(tomogram.values[i] * q_kernel(i) * wq)
        for i in range(tomogram.n_angles)
    ])
    wphi = _periodic_weights(tomogram.phis, math.pi)
    phases = np.exp(1j * phase_order * tomogram.phis)
    return complex(np.sum(wphi * phases * row_ints) / math.pi)


def _gated(source, spec, compute):
    """Run ``compute`` on the (sampled) tomogram; gate with the half grid."""
    t = _as_tomogram(source, spec or _DEFAULT_SPEC)
    value = compute(t)
    spec = spec or _DEFAULT_SPEC
    if spec.check_tol is not None:
        coarse = compute(t.half_grid())
        drift = abs(value - coarse)
        if drift > spec.check_tol:
            raise AccuracyError(
                f"half-grid check moved the result by {drift:.3e} "
                f"(tol {spec.check_tol:.1e}); refine the tomogram grid")
    return value


def fock_element_from_tomogram(source, m, n, rep="canonical", spec=None, trunc=None):
    """<m| rho |n> = (1/pi) int dphi int dq W(phi; q) e^{i(m-n) phi} F_{m,n}(q / sqrt(hbar)).

    Any representation satisfying the nonuniqueness relation gives the same
    result; ``rep`` picks one of the four (or a callable).
    """
    if m < 0 or n < 0:
        raise DomainError("Fock indices must be nonnegative")

    def compute(t):
        x = t.qs / math.sqrt(t.hbar)
        f_row = np.asarray(pattern_eval(rep, m, n, x, trunc=trunc))
        return _tomogram_integral(t, lambda i: f_row, m - n, spec or _DEFAULT_SPEC)

    return _gated(source, spec, compute)


def density_matrix_from_tomogram(source, nmax, rep="canonical", spec=None,
                                 trace_tol=1e-4):
    """All elements m, n <= nmax; Hermitian-symmetrized with defect report.

    Returns (DensityMatrix, diagnostics); the pre-symmetrization defect is
    never silently discarded.
    """
    spec = spec or _DEFAULT_SPEC
    t = _as_tomogram(source, spec)
    x = t.qs / math.sqrt(t.hbar)
    wq = _trapezoid_weights(t.qs)
    wphi = _periodic_weights(t.phis, math.pi)
    raw = np.zeros((nmax + 1, nmax + 1), dtype=complex)
    for m in range(nmax + 1):
        for n in range(m, nmax + 1):
            f_row = np.asarray(pattern_eval(rep, m, n, x))
            row_ints = t.values @ (f_row * wq)
            val = np.sum(wphi * np.exp(1j * (m - n) * t.phis) * row_ints) / math.pi
            raw[m, n] = val
            if n != m:
                raw[n, m] = np.sum(
                    wphi * np.exp(1j * (n - m) * t.phis) * row_ints) / math.pi
    defect = float(np.max(np.abs(raw - raw.conj().T)))
    sym = (raw + raw.conj().T) / 2
    rho = DensityMatrix(sym, trace_tol=trace_tol)
    diagnostics = {
        "hermiticity_defect": defect,
        "trace": float(sym.trace().real),
        "representation": rep if isinstance(rep, str) else "custom",
    }
    return rho, diagnostics


def qfunction_from_tomogram(source, alpha, spec=None):
    """Coherent-state quasiprobability Q(alpha) from the tomogram.

    Kernel (2/pi) (1 - 2 s F_dawson(s)) with s = q/sqrt(hbar) -
    sqrt(2) Re(alpha e^{-i phi}); the Dawson derivative enters analytically.
    """
    alpha = complex(alpha)

    def compute(t):
        x = t.qs / math.sqrt(t.hbar)

        def kernel(i):
            shift = math.sqrt(2) * (alpha * np.exp(-1j * t.phis[i])).real
            s = x - shift
            return (2 / math.pi) * (1 - 2 * s * dawson(s))

        return _tomogram_integral(t, kernel, 0, spec or _DEFAULT_SPEC)

    val = _gated(source, spec, compute)
    return val.real


def _moment_prefactor(k, l):
    return (math.factorial(k) * math.factorial(l) / math.factorial(k + l)
            / 2 ** ((k + l) / 2))


def moment_angle_average(source, k, l, spec=None):
    """<a^dagger^k a^l rho> by angle averaging:

    k! l! / (k+l)! (1/pi) int dphi e^{-i(k-l) phi} 2^{-(k+l)/2}
    int dq W(phi; q) H_{k+l}(q / sqrt(hbar)).
    """
    if k < 0 or l < 0:
        raise DomainError("moment orders must be nonnegative")
    spec = (spec or _DEFAULT_SPEC).widened(math.sqrt(k + l))

    def compute(t):
        x = t.qs / math.sqrt(t.hbar)
        h_row = np.asarray(hermite_poly(k + l, x))
        _tail_guard(t, t.values * h_row[None, :], spec.tail_tol)
        val = _tomogram_integral(t, lambda i: h_row, -(k - l), spec)
        return val * _moment_prefactor(k, l)

    return _gated(source, spec, compute)


def _analytic_row_integral(source, phi, weight_fn, spec):
    """int dq W(cos phi, sin phi; q) weight(q) for an analytic source."""
    center, sigma = source.grid_hints()
    half = center + spec.window_factor * sigma

    def integrand(qs):
        return np.asarray(source.radon(math.cos(phi), math.sin(phi), qs)) * weight_fn(qs)

    panels = max(16, int(math.ceil(2 * half / spec.panel_width)))
    return gauss_panels(integrand, -half, half, panels, order=spec.panel_order)


def _row_integral(source, phi, weight_fn, spec):
    if isinstance(source, Tomogram):
        # reduce to [0, pi): the row at phi + pi is the row at phi in -q
        phi_mod = math.fmod(phi, 2 * math.pi)
        if phi_mod < 0:
            phi_mod += 2 * math.pi
        flip = phi_mod >= math.pi - 1e-12
        phi_red = phi_mod - math.pi if flip else phi_mod
        if abs(phi_red) < 1e-12:
            phi_red = 0.0
        diff = np.abs(source.phis - phi_red)
        idx = np.nonzero(diff < 1e-12)[0]
        wq = _trapezoid_weights(source.qs)
        if idx.size == 0:
            # off-grid angle: cubic interpolation across the angle axis
            warnings.warn(
                f"angle {phi:.6f} is not on the tomogram grid; "
                "interpolating (reduced accuracy)", AccuracyWarning, stacklevel=3)
            from .states import TomogramEvaluator
            ev = TomogramEvaluator(source, method="cubic")
            row = ev.radon(math.cos(phi_red), math.sin(phi_red), source.qs)
            qs = -source.qs if flip else source.qs
            return float(np.sum(row * weight_fn(qs) * wq))
        qs = -source.qs if flip else source.qs
        return float(np.sum(source.values[idx[0]] * weight_fn(qs) * wq))
    return _analytic_row_integral(source, phi, weight_fn, spec)


def moment_discrete_angles(source, k, l, division: AngleDivision = None, spec=None):
    """<a^dagger^k a^l rho> from the harmonic circle division of order k + l.

    Finite sum over angles phi0 + m pi / (k+l+1); equivalent to the angle
    average by the orthogonality of the circle-division phases.
    """
    if k < 0 or l < 0:
        raise DomainError("moment orders must be nonnegative")
    division = division or AngleDivision.harmonic(k + l)
    if division.kind != "harmonic" or division.order != k + l:
        raise DomainError(
            f"moment of order {k + l} needs a harmonic division of the same order")
    spec = (spec or _DEFAULT_SPEC).widened(math.sqrt(k + l))
    hbar = getattr(source, "hbar", 1.0)
    root_h = math.sqrt(hbar)

    def weight(qs):
        return np.asarray(hermite_poly(k + l, qs / root_h))

    total = 0j
    s = k + l
    for phi in division.angles():
        row = _row_integral(source, phi, weight, spec)
        total += np.exp(-1j * (k - l) * phi) * row
    pref = (math.factorial(k) * math.factorial(l) / math.factorial(s + 1)
            / 2 ** (s / 2))
    return complex(pref * total)


def moments_low_order_custom(source, angles, spec=None):
    """First- and second-order moments from 2 or 3 explicit angles.

    Two angles solve the first-order system; three angles additionally the
    second-order one (sine-weighted sums over the angle pairs).  Returns a
    dict {(k, l): moment} including the trace entry (0, 0).
    """
    division = AngleDivision.from_angles(angles)
    phis = division.angles()
    if phis.size not in (2, 3):
        raise DomainError("low-order solver needs 2 or 3 explicit angles")
    spec = (spec or _DEFAULT_SPEC).widened(2.0)
    hbar = getattr(source, "hbar", 1.0)
    root_h = math.sqrt(hbar)

    def h_weight(order):
        return lambda qs: np.asarray(hermite_poly(order, qs / root_h))

    out = {}
    out[(0, 0)] = complex(_row_integral(source, phis[0], h_weight(0), spec))
    p0, p1 = phis[0], phis[1]
    i0 = _row_integral(source, p0, h_weight(1), spec)
    i1 = _row_integral(source, p1, h_weight(1), spec)
    s01 = math.sin(p1 - p0)
    a_mom = (np.exp(1j * p1) * i0 / (1j * s01)
             + np.exp(1j * p0) * i1 / (1j * math.sin(p0 - p1))) / (2 * math.sqrt(2))
    out[(0, 1)] = complex(a_mom)
    out[(1, 0)] = complex(a_mom.conjugate())
    if phis.size == 3:
        p2 = phis[2]
        j0 = _row_integral(source, p0, h_weight(2), spec)
        j1 = _row_integral(source, p1, h_weight(2), spec)
        j2 = _row_integral(source, p2, h_weight(2), spec)
        s10, s02, s21 = math.sin(p1 - p0), math.sin(p0 - p2), math.sin(p2 - p1)
        a2 = (np.exp(1j * (p1 + p2)) * j0 / (s10 * s02)
              + np.exp(1j * (p2 + p0)) * j1 / (s10 * s21)
              + np.exp(1j * (p0 + p1)) * j2 / (s21 * s02)) / 8
        n1 = -(math.cos(p2 - p1) * j0 / (s10 * s02)
               + math.cos(p0 - p2) * j1 / (s10 * s21)
               + math.cos(p1 - p0) * j2 / (s21 * s02)) / 8
        out[(0, 2)] = complex(a2)
        out[(2, 0)] = complex(a2.conjugate())
        out[(1, 1)] = complex(n1)
    return out


def moment_set_from_tomogram(source, s_max, spec=None, method="average"):
    """All moments with k + l <= s_max packed into a MomentSet.

    For the angle-average method the source is materialized once on a
    window widened for the highest Hermite order.
    """
    if method not in ("average", "discrete"):
        raise DomainError(f"unknown moment method {method!r}")
    if method == "average" and not isinstance(source, Tomogram):
        source = _as_tomogram(source, (spec or _DEFAULT_SPEC).widened(math.sqrt(s_max)))
    values = {}
    for total in range(s_max + 1):
        for k in range(total + 1):
            l = total - k
            if (l, k) in values:
                values[(k, l)] = values[(l, k)].conjugate()
                continue
            if method == "average":
                values[(k, l)] = moment_angle_average(source, k, l, spec=spec)
            else:
                values[(k, l)] = moment_discrete_angles(source, k, l, spec=spec)
    return MomentSet(s_max, values, tol=1e-6)


def density_from_moments(moments: MomentSet, dim, j_max=24):
    """rho_mn = (m! n!)^{-1/2} sum_j (-1)^j / j! <a^dagger^{n+j} a^{m+j} rho>.

    The alternating series is summed forward with compensated accumulation;
    a non-decaying tail at the truncation raises a divergence warning.
    Returns (DensityMatrix, diagnostics with the last-term magnitude).
    """
    raw = np.zeros((dim, dim), dtype=complex)
    worst_last = 0.0
    diverging = False
    for m in range(dim):
        for n in range(dim):
            j_top = min(j_max, (moments.s_max - m - n) // 2)
            if j_top < 0:
                raise DomainError(
                    f"moment set of order {moments.s_max} cannot reach rho[{m},{n}]")
            terms = []
            for j in range(j_top + 1):
                coef = (-1) ** j / math.factorial(j)
                terms.append(coef * moments.get(n + j, m + j))
            raw[m, n] = (math.fsum(t.real for t in terms)
                         + 1j * math.fsum(t.imag for t in terms)) / math.sqrt(
                             math.factorial(m) * math.factorial(n))
            if len(terms) >= 2:
                last, prev = abs(terms[-1]), abs(terms[-2])
                worst_last = max(worst_last, last / math.sqrt(
                    math.factorial(m) * math.factorial(n)))
                if last > prev and last > 1e-12:
                    diverging = True
    if diverging:
        warnings.warn("moment series not decaying at the truncation; "
                      "the moment problem is ill-conditioned here", stacklevel=2)
    defect = float(np.max(np.abs(raw - raw.conj().T)))
    sym = (raw + raw.conj().T) / 2
    rho = DensityMatrix(sym, trace_tol=1e-3)
    return rho, {"hermiticity_defect": defect, "last_term": worst_last}


def projection_identity_check(source, n, phi, moments: MomentSet, spec=None):
    """Both sides of the Hermite-weighted projection identity.

    lhs = 2^{-n/2} int dq W(phi; q) H_n(q/sqrt(hbar));
    rhs = sum_k binom(n, k) e^{i(2k-n) phi} <a^dagger^k a^{n-k} rho>.
    """
    spec = (spec or _DEFAULT_SPEC).widened(math.sqrt(n))
    hbar = getattr(source, "hbar", 1.0)
    root_h = math.sqrt(hbar)
    lhs = _row_integral(
        source, phi, lambda qs: np.asarray(hermite_poly(n, qs / root_h)), spec)
    lhs = complex(lhs / 2 ** (n / 2))
    rhs = 0j
    for k in range(n + 1):
        rhs += math.comb(n, k) * np.exp(1j * (2 * k - n) * phi) * moments.get(k, n - k)
    return lhs, complex(rhs)
