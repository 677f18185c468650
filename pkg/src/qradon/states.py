"""Analytic forward models and the tomogram container.

A tomogram stores samples of the line-integral transform
W(u, v; c) = int dq dp delta(c - uq - vp) W(q, p) of a Wigner function on a
(phi, q) grid with (u, v) = (cos phi, sin phi).  Closed forms are provided
for squeezed coherent states and for arbitrary truncated Fock-basis density
matrices; `transform_tomogram` implements the squeeze/displacement
covariance law without resampling.

All containers are immutable after construction and safe to share between
threads; grid filling is embarrassingly parallel but runs vectorized here.
"""

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _xprec, specfun
from .errors import ConsistencyError, DomainError
from .symplectic import Displacement, SymplecticMap, transform_radon_args, unitary_squeeze_matrices

__all__ = [
    "GaussianState",
    "GaussianStatistics",
    "DensityMatrix",
    "Tomogram",
    "MomentSet",
    "wigner_gaussian",
    "radon_gaussian",
    "fourier_gaussian",
    "gaussian_statistics",
    "radon_from_density",
    "scalar_product_rotated",
    "transform_tomogram",
    "FockSource",
    "TransformedSource",
    "TomogramEvaluator",
    "sample_tomogram",
    "default_grid",
]


# ----------------------------------------------------------------------
# containers


@dataclass(frozen=True)
class GaussianState:
    """Squeezed coherent state: displacements (qbar, pbar), disc parameter zeta."""

    qbar: float = 0.0
    pbar: float = 0.0
    zeta: complex = 0j
    hbar: float = 1.0

    def __post_init__(self):
        if abs(complex(self.zeta)) >= 1:
            raise DomainError("GaussianState needs |zeta| < 1")
        if not self.hbar > 0:
            raise DomainError("GaussianState needs hbar > 0")

    # evaluator protocol used by sampling / reconstruction
    def wigner(self, q, p):
        return wigner_gaussian(self, q, p)

    def radon(self, u, v, c):
        return radon_gaussian(self, u, v, c)

    def fourier(self, u, v):
        return fourier_gaussian(self, u, v)

    def statistics(self):
        return gaussian_statistics(self)

    def grid_hints(self):
        st = self.statistics()
        return math.hypot(self.qbar, self.pbar), math.sqrt(st.var_max)


@dataclass(frozen=True)
class GaussianStatistics:
    """First and second canonical moments plus the uncertainty-ellipse axes."""

    mean_q: float
    mean_p: float
    var_q: float
    var_p: float
    sym_corr: float
    var_max: float
    var_min: float
    phi_max: float
    phi_min: float
    hbar: float

    def rotated(self, phi):
        """(var Q(phi), var P(phi), sym corr(phi)) in the frame rotated by phi."""
        c, s = math.cos(phi), math.sin(phi)
        vq = c * c * self.var_q + s * s * self.var_p + 2 * c * s * self.sym_corr
        vp = s * s * self.var_q + c * c * self.var_p - 2 * c * s * self.sym_corr
        sc = c * s * (self.var_p - self.var_q) + (c * c - s * s) * self.sym_corr
        return vq, vp, sc


class DensityMatrix:
    """Truncated Fock-basis density matrix.

    Hermiticity (1e-10), near-unit trace and nonnegative diagonal are
    enforced at construction; ``trace_tol`` loosens the trace check for
    intentionally truncated states.
    """

    def __init__(self, entries, trace_tol=1e-8):
        m = np.array(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DomainError("density matrix must be square and non-empty")
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m - m.conj().T)) > 1e-10 * scale:
            raise ConsistencyError("density matrix is not Hermitian within 1e-10")
        m = (m + m.conj().T) / 2
        if np.min(m.diagonal().real) < -1e-10:
            raise ConsistencyError("density matrix has a negative diagonal entry")
        tr = float(m.trace().real)
        if abs(tr - 1.0) > trace_tol:
            raise ConsistencyError(f"trace {tr!r} deviates from 1 beyond {trace_tol}")
        m.setflags(write=False)
        self.entries = m

    @property
    def dim(self):
        return self.entries.shape[0]

    @classmethod
    def fock(cls, n, dim=None):
        d = (n + 1) if dim is None else dim
        m = np.zeros((d, d), dtype=complex)
        m[n, n] = 1.0
        return cls(m)

    @classmethod
    def vacuum(cls, dim=1):
        return cls.fock(0, dim)

    @classmethod
    def coherent(cls, alpha, dim, trace_tol=1e-8):
        n = np.arange(dim)
        norms = np.array([math.factorial(int(k)) for k in n], dtype=float)
        amp = np.exp(-abs(alpha) ** 2 / 2) * alpha ** n / np.sqrt(norms)
        return cls(np.outer(amp, amp.conj()), trace_tol=trace_tol)

    def mean_annihilation(self):
        """Tr(rho a) = sum_n sqrt(n) rho_{n, n-1}."""
        n = np.arange(1, self.dim)
        return complex(np.sum(np.sqrt(n) * self.entries[n, n - 1]))

    def mean_number(self):
        return float(np.sum(np.arange(self.dim) * self.entries.diagonal().real))


@dataclass(frozen=True)
class Tomogram:
    """Sampled line-integral transform on a (phi, q) grid.

    ``values[i, j]`` = W(cos phis[i], sin phis[i]; qs[j]).  Rows are
    probability densities in q: nonnegative (to -1e-12) and normalized to
    one within ``norm_tol`` by the trapezoid rule.
    """

    phis: np.ndarray
    qs: np.ndarray
    values: np.ndarray
    hbar: float = 1.0
    norm_tol: float = 1e-6
    validate: bool = True
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        phis = np.asarray(self.phis, dtype=float)
        qs = np.asarray(self.qs, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        for name, arr in (("phis", phis), ("qs", qs), ("values", vals)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if vals.shape != (phis.size, qs.size):
            raise DomainError("values must have shape (len(phis), len(qs))")
        if not self.hbar > 0:
            raise DomainError("hbar must be positive")
        if np.any(phis < 0) or np.any(phis >= np.pi):
            raise DomainError("angles must lie in [0, pi)")
        if self.validate:
            if np.min(vals) < -1e-12:
                raise ConsistencyError(
                    f"tomogram has negative values down to {np.min(vals):.3e}")
            norms = np.trapezoid(vals, qs, axis=1)
            worst = float(np.max(np.abs(norms - 1.0)))
            if worst > self.norm_tol:
                raise ConsistencyError(
                    f"per-angle normalization off by {worst:.3e} (tol {self.norm_tol:.1e})")

    @property
    def n_angles(self):
        return self.phis.size

    def row_norms(self):
        return np.trapezoid(self.values, self.qs, axis=1)

    def half_grid(self):
        """Every-other-point subgrid (both axes) for Richardson-style gating."""
        return Tomogram(self.phis[::2], self.qs[::2], self.values[::2, ::2],
                        hbar=self.hbar, norm_tol=max(self.norm_tol, 1e-4),
                        validate=False, meta=dict(self.meta))

    # -- serialization ------------------------------------------------

    def to_csv(self, path):
        """Header comments (# hbar=, # phis=, # qs=), one line per angle."""
        def fmt(a):
            return ",".join(f"{v:.17g}" for v in np.atleast_1d(a))

        with open(path, "w", newline="\n") as fh:
            fh.write(f"# hbar={self.hbar:.17g}\n")
            fh.write(f"# phis={fmt(self.phis)}\n")
            fh.write(f"# qs={fmt(self.qs)}\n")
            for row in self.values:
                fh.write(fmt(row) + "\n")

    def to_json(self, path, extra_meta=None):
        meta = dict(self.meta)
        if extra_meta:
            meta.update(extra_meta)
        doc = {
            "hbar": self.hbar,
            "phis": self.phis.tolist(),
            "qs": self.qs.tolist(),
            "values": self.values.tolist(),
            "meta": meta,
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")

    @classmethod
    def from_csv(cls, path, validate=True):
        header = {}
        rows = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    key, _, rest = line[1:].strip().partition("=")
                    header[key.strip()] = rest
                else:
                    rows.append([float(v) for v in line.split(",")])
        try:
            hbar = float(header["hbar"])
            phis = [float(v) for v in header["phis"].split(",")]
            qs = [float(v) for v in header["qs"].split(",")]
        except KeyError as exc:
            raise DomainError(f"tomogram CSV is missing header {exc}") from exc
        return cls(np.array(phis), np.array(qs), np.array(rows), hbar=hbar,
                   validate=validate)

    @classmethod
    def from_json(cls, path, validate=True):
        with open(path) as fh:
            doc = json.load(fh)
        return cls(np.array(doc["phis"]), np.array(doc["qs"]),
                   np.array(doc["values"]), hbar=doc["hbar"],
                   validate=validate, meta=doc.get("meta", {}))


class MomentSet:
    """Normally ordered moments <a^dagger^k a^l rho> for k + l <= s_max."""

    def __init__(self, s_max, values, tol=1e-8):
        self.s_max = int(s_max)
        self.values = {(int(k), int(l)): complex(v) for (k, l), v in values.items()}
        for (k, l), v in self.values.items():
            if k < 0 or l < 0 or k + l > self.s_max:
                raise DomainError(f"moment ({k},{l}) outside order cap {self.s_max}")
            w = self.values.get((l, k))
            if w is not None and abs(v - w.conjugate()) > tol * max(1.0, abs(v)):
                raise ConsistencyError(f"moments ({k},{l}) and ({l},{k}) are not conjugate")
        tr = self.values.get((0, 0))
        if tr is not None and abs(tr - 1.0) > tol:
            raise ConsistencyError(f"trace moment (0,0) = {tr!r} deviates from 1")

    def get(self, k, l):
        try:
            return self.values[(k, l)]
        except KeyError:
            w = self.values.get((l, k))
            if w is not None:
                return w.conjugate()
            raise


# ----------------------------------------------------------------------
# closed-form Gaussian models


def _quad_form(zeta, u, v):
    """|1-zeta|^2 u^2 + |1+zeta|^2 v^2 - 4 Im(zeta) u v (real-positive on the disc)."""
    z = complex(zeta)
    d = (abs(1 - z) ** 2 * u * u + abs(1 + z) ** 2 * v * v
         - 4 * z.imag * u * v)
    return d


def wigner_gaussian(state: GaussianState, q, p):
    """Wigner function of a squeezed coherent state."""
    z = complex(state.zeta)
    hbar = state.hbar
    dq = np.asarray(q, dtype=float) - state.qbar
    dp = np.asarray(p, dtype=float) - state.pbar
    num = (abs(1 + z) ** 2 * dq * dq + abs(1 - z) ** 2 * dp * dp
           + 4 * z.imag * dq * dp)
    out = np.exp(-num / (hbar * (1 - abs(z) ** 2))) / (hbar * np.pi)
    return float(out) if out.ndim == 0 else out


def radon_gaussian(state: GaussianState, u, v, c):
    """Line-integral transform of a squeezed coherent state (closed form)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = np.asarray(c, dtype=float)
    if np.any((u == 0) & (v == 0)):
        raise DomainError("radon_gaussian needs (u, v) != (0, 0)")
    z = complex(state.zeta)
    hbar = state.hbar
    disc = 1 - abs(z) ** 2
    width = _quad_form(z, u, v)
    if np.any(width <= 0):
        raise ConsistencyError("degenerate marginal width; |zeta| < 1 violated?")
    shift = c - u * state.qbar - v * state.pbar
    out = np.sqrt(disc / (hbar * np.pi * width)) * np.exp(-disc * shift * shift / (hbar * width))
    return float(out) if out.ndim == 0 else out


def fourier_gaussian(state: GaussianState, u, v):
    """Two-dimensional Fourier transform of the squeezed coherent Wigner function."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    z = complex(state.zeta)
    hbar = state.hbar
    width = _quad_form(z, u, v)
    phase = np.exp(-1j * (u * state.qbar + v * state.pbar))
    out = phase * np.exp(-hbar * width / (4 * (1 - abs(z) ** 2)))
    return complex(out) if out.ndim == 0 else out


def gaussian_statistics(state: GaussianState) -> GaussianStatistics:
    """Canonical means, variances, symmetric correlation and ellipse axes."""
    z = complex(state.zeta)
    hbar = state.hbar
    disc = 1 - abs(z) ** 2
    var_q = hbar / 2 * abs(1 - z) ** 2 / disc
    var_p = hbar / 2 * abs(1 + z) ** 2 / disc
    sym_corr = -hbar * z.imag / disc
    var_max = hbar / 2 * (1 + abs(z)) / (1 - abs(z))
    var_min = hbar / 2 * (1 - abs(z)) / (1 + abs(z))
    if abs(z) == 0:
        phi_max = phi_min = 0.0
    else:
        phi_max = (math.pi + cmath_phase(z)) / 2 % math.pi
        phi_min = cmath_phase(z) / 2 % math.pi
    return GaussianStatistics(state.qbar, state.pbar, var_q, var_p, sym_corr,
                              var_max, var_min, phi_max, phi_min, hbar)


def cmath_phase(z):
    return math.atan2(z.imag, z.real)


# ----------------------------------------------------------------------
# Fock-basis forward model


def radon_from_density(rho: DensityMatrix, phi, q, hbar=1.0):
    """Rotated-quadrature marginal of a truncated density matrix.

    sum_{m,n} rho_mn e^{i(n-m)phi} h_m(x) h_n(x) / sqrt(hbar), x = q/sqrt(hbar).
    The quadratic form is real for Hermitian rho; a residual imaginary part
    above 1e-10 raises ConsistencyError.
    """
    qs = np.atleast_1d(np.asarray(q, dtype=float))
    scalar = np.ndim(q) == 0
    x = qs / math.sqrt(hbar)
    h = np.asarray(_xprec.hermite_h_all(rho.dim - 1, x), dtype=float)
    phased = np.exp(1j * np.arange(rho.dim) * phi)[:, None] * h
    vals = np.sum(phased.conj() * (rho.entries @ phased), axis=0) / math.sqrt(hbar)
    resid = float(np.max(np.abs(vals.imag))) if vals.size else 0.0
    if resid > 1e-10:
        raise ConsistencyError(f"non-Hermitian input: imaginary residue {resid:.3e}")
    out = vals.real
    return float(out[0]) if scalar else out


def scalar_product_rotated(q, phi, q2, phi2, hbar=1.0):
    """Overlap of rotated-quadrature eigenstates <q; phi | q2; phi2>.

    Closed form with a coincidence singularity at phi = phi2 (mod pi), where
    the overlap degenerates to a delta function and a DomainError is raised.
    """
    delta = phi - phi2
    if abs(math.sin(delta)) < 1e-12:
        raise DomainError("scalar_product_rotated is singular at coincident angles")
    pref = 1.0 / np.sqrt(hbar * np.pi * (1 - np.exp(-2j * delta)))
    expo = 1j * ((q * q + q2 * q2) * math.cos(delta) - 2 * q * q2) / (
        2 * hbar * math.sin(delta))
    return complex(pref * np.exp(expo))


# ----------------------------------------------------------------------
# covariance wrapper and sampling


class FockSource:
    """Analytic tomogram evaluator backed by a truncated density matrix."""

    def __init__(self, rho: DensityMatrix, hbar=1.0):
        self.rho = rho
        self.hbar = hbar

    def radon(self, u, v, c):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        c = np.asarray(c, dtype=float)
        rad = np.hypot(u, v)
        if np.any(rad == 0):
            raise DomainError("radon needs (u, v) != (0, 0)")
        phi = np.arctan2(v, u)
        if phi.ndim == 0:
            neg = phi < 0
            p = float(phi + np.pi) if neg else float(phi)
            cc = -c if neg else c
            return radon_from_density(self.rho, p, np.asarray(cc) / rad, self.hbar) / rad
        raise DomainError("FockSource.radon supports scalar (u, v) with array c")

    def grid_hints(self):
        nbar = self.rho.mean_number()
        amp = abs(self.rho.mean_annihilation())
        center = math.sqrt(2 * self.hbar) * amp
        sigma = math.sqrt(self.hbar * (2 * nbar + 1) / 2) + center
        return center, sigma


class TransformedSource:
    """Squeeze-then-displace image of a base evaluator.

    radon(u, v; c) = radon0(delta u - beta v, -gamma u + alpha v;
    c - u qbar - v pbar); the Fourier side picks up the plane-wave phase.
    """

    def __init__(self, base, displacement: Displacement, mapping: SymplecticMap, hbar=None):
        self.base = base
        self.displacement = displacement
        self.mapping = mapping
        self.hbar = hbar if hbar is not None else getattr(base, "hbar", 1.0)

    def radon(self, u, v, c):
        up, vp = transform_radon_args(u, v, self.mapping)
        shift = u * self.displacement.qbar + v * self.displacement.pbar
        return self.base.radon(up, vp, np.asarray(c, dtype=float) - shift)

    def fourier(self, u, v):
        up, vp = transform_radon_args(u, v, self.mapping)
        phase = np.exp(-1j * (u * self.displacement.qbar + v * self.displacement.pbar))
        return phase * self.base.fourier(up, vp)

    def wigner(self, q, p):
        dq = q - self.displacement.qbar
        dp = p - self.displacement.pbar
        qp, pp = self.mapping.transform_point(dq, dp)
        return self.base.wigner(qp, pp)

    def grid_hints(self):
        center0, sigma0 = self.base.grid_hints()
        m = self.mapping.matrix
        stretch = float(np.linalg.norm(np.linalg.inv(m), 2))
        extra = math.hypot(self.displacement.qbar, self.displacement.pbar)
        return center0 + extra, sigma0 * stretch

    def statistics(self):
        base_stats = getattr(self.base, "statistics", None)
        return base_stats() if base_stats else None


def transform_tomogram(source, displacement: Displacement, mapping: SymplecticMap):
    """Wrap an analytic source (or sampled tomogram) with the covariance law."""
    if isinstance(source, Tomogram):
        source = TomogramEvaluator(source)
    return TransformedSource(source, displacement, mapping)


class TomogramEvaluator:
    """Bilinear (phi, q) interpolation of a sampled tomogram.

    Off-circle arguments reduce to the unit circle by homogeneity
    W(mu u, mu v; mu c) = W(u, v; c) / |mu|.
    """

    def __init__(self, tomogram: Tomogram, method="linear"):
        from scipy.interpolate import RegularGridInterpolator

        self.tomogram = tomogram
        self.hbar = tomogram.hbar
        phis = tomogram.phis
        vals = tomogram.values
        # wrap a few angles on both sides (phi + pi pairs with q -> -q) so
        # cubic stencils stay interior near 0 and pi; assumes a symmetric q grid
        pad = min(3, len(phis) - 1)
        phis_ext = np.concatenate([phis[-pad:] - np.pi, phis, np.pi + phis[:pad + 1]])
        vals_ext = np.concatenate(
            [vals[-pad:, ::-1], vals, vals[:pad + 1, ::-1]], axis=0)
        self._interp = RegularGridInterpolator(
            (phis_ext, tomogram.qs), vals_ext, bounds_error=False, fill_value=0.0,
            method=method)

    def radon(self, u, v, c):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        c = np.asarray(c, dtype=float)
        rad = np.hypot(u, v)
        if np.any(rad == 0):
            raise DomainError("radon needs (u, v) != (0, 0)")
        phi = np.mod(np.arctan2(v, u), 2 * np.pi)
        flip = phi >= np.pi
        phi = np.where(flip, phi - np.pi, phi)
        cc = np.where(flip, -c, c) / rad
        phi, cc = np.broadcast_arrays(phi, cc)
        pts = np.stack([phi.ravel(), cc.ravel()], axis=-1)
        out = self._interp(pts).reshape(phi.shape) / rad
        return float(out) if out.ndim == 0 else out

    def grid_hints(self):
        qmax = float(np.max(np.abs(self.tomogram.qs)))
        return 0.0, qmax / 8.0


def default_grid(source, n_phi=181, n_q=1025):
    """Angle/position grid per the library defaults; window from grid hints."""
    center, sigma = source.grid_hints()
    half = center + 8.0 * sigma
    phis = np.arange(n_phi) * np.pi / n_phi
    qs = np.linspace(-half, half, n_q)
    return phis, qs


def sample_tomogram(source, phis=None, qs=None, norm_tol=1e-6, validate=True, meta=None):
    """Evaluate an analytic source on a (phi, q) grid and pack a Tomogram."""
    if phis is None or qs is None:
        dphis, dqs = default_grid(source)
        phis = dphis if phis is None else np.asarray(phis, dtype=float)
        qs = dqs if qs is None else np.asarray(qs, dtype=float)
    phis = np.asarray(phis, dtype=float)
    qs = np.asarray(qs, dtype=float)
    values = np.empty((phis.size, qs.size))
    for i, phi in enumerate(phis):
        values[i] = np.asarray(source.radon(math.cos(phi), math.sin(phi), qs))
    hbar = getattr(source, "hbar", 1.0)
    return Tomogram(phis, qs, values, hbar=hbar, norm_tol=norm_tol,
                    validate=validate, meta=meta or {})
