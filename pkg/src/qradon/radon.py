"""State-agnostic two-dimensional Radon/Fourier numerics.

Forward line integrals by composite Gauss-Legendre quadrature, the
one-dimensional Fourier bridge between the two transforms, filtered
back-projection for the inverse problem (two-step route through the Fourier
domain, which keeps the singular |r| kernel out of position space), and the
canonical-regularization functionals R(1/x) and R(1/x^2).
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.special import roots_legendre

from .errors import AccuracyWarning, ConsistencyError, DomainError
from .states import Tomogram

__all__ = [
    "PlaneField",
    "gauss_panels",
    "radon_numeric",
    "fourier_from_radon",
    "radon_from_fourier",
    "FilteredBackprojection",
    "wigner_from_tomogram",
    "pv_functional",
    "reg_inv_square_functional",
]

_GL_CACHE = {}


def _gl_rule(order):
    if order not in _GL_CACHE:
        _GL_CACHE[order] = roots_legendre(order)
    return _GL_CACHE[order]


def gauss_panels(f, a, b, panels, order=16):
    """Composite Gauss-Legendre quadrature of a vectorized callable."""
    nodes, weights = _gl_rule(order)
    edges = np.linspace(a, b, panels + 1)
    mid = (edges[1:] + edges[:-1]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    pts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    wts = (half[:, None] * weights[None, :]).ravel()
    vals = np.asarray(f(pts))
    if np.iscomplexobj(vals):
        return complex(np.sum(vals * wts))
    return float(np.sum(vals * wts))


class PlaneField:
    """Real function over the (q, p) plane with a declared decay radius.

    Wraps either a vectorized callable or a sampled grid (bilinear
    interpolation, zero outside).  |W| must be below ``tail_eps`` on the
    declared radius; this is verified by sampling at construction.
    """

    def __init__(self, evaluator, radius, tail_eps=1e-10, check=True):
        self._f = evaluator
        self.radius = float(radius)
        self.tail_eps = float(tail_eps)
        if self.tail_eps > 1e-10:
            raise DomainError("tail_eps must be <= 1e-10 at the declared radius")
        if check:
            ang = np.linspace(0, 2 * np.pi, 64, endpoint=False)
            worst = float(np.max(np.abs(self(self.radius * np.cos(ang),
                                             self.radius * np.sin(ang)))))
            if worst > self.tail_eps:
                raise ConsistencyError(
                    f"field is {worst:.3e} at the declared decay radius "
                    f"(tail_eps {self.tail_eps:.1e})")

    def __call__(self, q, p):
        return np.asarray(self._f(np.asarray(q, dtype=float),
                                  np.asarray(p, dtype=float)), dtype=float)

    @classmethod
    def from_grid(cls, qs, ps, values, radius=None, tail_eps=1e-10, check=True):
        interp = RegularGridInterpolator((np.asarray(qs), np.asarray(ps)),
                                         np.asarray(values, dtype=float),
                                         bounds_error=False, fill_value=0.0)

        def evaluator(q, p):
            q, p = np.broadcast_arrays(q, p)
            pts = np.stack([q.ravel(), p.ravel()], axis=-1)
            return interp(pts).reshape(q.shape)

        r = radius if radius is not None else min(np.max(np.abs(qs)), np.max(np.abs(ps)))
        return cls(evaluator, r, tail_eps=tail_eps, check=check)


def radon_numeric(field: PlaneField, u, v, c, order=16, panel_width=0.5):
    """Line integral of a plane field over uq + vp = c.

    Parametrizes the line by arc length through its closest point to the
    origin and integrates with composite Gauss-Legendre panels out to the
    decay radius; the 1/sqrt(u^2+v^2) Jacobian reproduces the homogeneity
    law W(mu u, mu v; mu c) = W(u, v; c)/|mu|.
    """
    rho = math.hypot(u, v)
    if rho == 0:
        raise DomainError("radon_numeric needs (u, v) != (0, 0)")
    d = c / rho  # signed distance of the line from the origin
    if abs(d) >= field.radius:
        return 0.0
    half = math.sqrt(field.radius ** 2 - d * d) + 2 * panel_width
    q0, p0 = u * c / rho ** 2, v * c / rho ** 2
    tq, tp = -v / rho, u / rho

    def along(t):
        return field(q0 + t * tq, p0 + t * tp)

    panels = max(8, int(math.ceil(2 * half / panel_width)))
    return gauss_panels(along, -half, half, panels, order=order) / rho


def fourier_from_radon(row, b, window, panels=None, order=16):
    """int dc e^{-i b c} row(c) for a decaying row of the Radon transform.

    ``row`` must be vectorized over c; ``window`` = (lo, hi) covers the row's
    support.  With homogeneous data row(c) = W(u/b, v/b; c) this equals the
    two-dimensional Fourier transform at (u, v), independent of b.
    """
    if b == 0:
        raise DomainError("fourier_from_radon needs b != 0")
    lo, hi = window
    if panels is None:
        # resolve both the row scale and the e^{-ibc} oscillation
        panels = max(16, int(math.ceil((hi - lo) * (1 + abs(b)) / 2)))

    def integrand(cs):
        return np.asarray(row(cs)) * np.exp(-1j * b * cs)

    return gauss_panels(integrand, lo, hi, panels, order=order)


def radon_from_fourier(fourier, u, v, c, b_max=40.0, panels=None, order=16):
    """Inverse bridge: (1/2pi) int db e^{i b c} fourier(b u, b v).

    ``fourier`` must be vectorized over its two arguments' common scale.
    """
    if panels is None:
        panels = max(32, int(math.ceil(b_max * (1 + abs(c)) / 2)))

    def integrand(bs):
        return np.asarray(fourier(bs * u, bs * v)) * np.exp(1j * bs * c)

    val = gauss_panels(integrand, -b_max, b_max, panels, order=order)
    return val / (2 * np.pi)


class FilteredBackprojection:
    """Two-step inversion of a sampled tomogram.

    Per angle: taper the row edges (raised cosine on the last 5% of the
    c-window), zero-pad 4x, FFT, multiply by the |r| ramp, inverse FFT.
    The Wigner value is then the angle average of the filtered rows at
    t = q cos phi + p sin phi with the 1/(2 pi) normalization.
    """

    def __init__(self, tomogram: Tomogram, pad_factor=4, taper_fraction=0.05):
        if tomogram.n_angles < 64:
            warnings.warn("fewer than 64 angles: inversion accuracy degraded",
                          AccuracyWarning, stacklevel=2)
        qs = tomogram.qs
        dq = np.diff(qs)
        if np.max(np.abs(dq - dq[0])) > 1e-9 * abs(dq[0]):
            raise DomainError("filtered back-projection needs a uniform q grid")
        self.tomogram = tomogram
        n = qs.size
        npad = pad_factor * n
        step = float(dq[0])
        taper = np.ones(n)
        edge = max(2, int(round(taper_fraction * n)))
        ramp = 0.5 * (1 - np.cos(np.pi * np.arange(edge) / edge))
        taper[:edge] = ramp
        taper[-edge:] = ramp[::-1]
        rows = np.zeros((tomogram.n_angles, npad))
        rows[:, :n] = tomogram.values * taper
        freqs = 2 * np.pi * np.fft.fftfreq(npad, d=step)
        filtered = np.fft.ifft(np.abs(freqs)[None, :] * np.fft.fft(rows, axis=1),
                               axis=1).real
        self._c_grid = qs[0] + step * np.arange(npad)
        self._filtered = filtered
        # angle weights for a (possibly nonuniform) grid on the half circle
        self._phi_w = _periodic_weights(tomogram.phis, np.pi)

    def wigner(self, q, p):
        """Wigner value(s) at phase-space point(s); q, p broadcast together."""
        q, p = np.broadcast_arrays(np.asarray(q, dtype=float),
                                   np.asarray(p, dtype=float))
        out = np.zeros(q.shape)
        for i, phi in enumerate(self.tomogram.phis):
            t = q * math.cos(phi) + p * math.sin(phi)
            out += self._phi_w[i] * np.interp(t, self._c_grid, self._filtered[i],
                                              left=0.0, right=0.0)
        out /= 2 * np.pi
        return float(out) if out.ndim == 0 else out


def _periodic_weights(phis, period):
    """Trapezoid weights for samples of a periodic function."""
    ext = np.concatenate([[phis[-1] - period], phis, [phis[0] + period]])
    return (ext[2:] - ext[:-2]) / 2


def wigner_from_tomogram(tomogram: Tomogram, q, p, **kwargs):
    """One-shot filtered back-projection at the given point(s)."""
    return FilteredBackprojection(tomogram, **kwargs).wigner(q, p)


# ----------------------------------------------------------------------
# canonical regularization functionals


def _fd_derivatives(phi, h=1e-3):
    """First four derivatives of phi at 0 by central differences.

    Only used to patch the |x| < 1e-3 region of the regularized
    functionals, so modest accuracy suffices.
    """
    f = [phi(k * h) for k in range(-3, 4)]
    d1 = (-f[1] + 8 * f[2] - 8 * f[4] + f[5]) / (12 * h) * -1.0
    d2 = (-f[1] + 16 * f[2] - 30 * f[3] + 16 * f[4] - f[5]) / (12 * h * h)
    d3 = (f[0] - 8 * f[1] + 13 * f[2] - 13 * f[4] + 8 * f[5] - f[6]) / (8 * h ** 3)
    d4 = (-f[0] + 12 * f[1] - 39 * f[2] + 56 * f[3] - 39 * f[4] + 12 * f[5] - f[6]) / (6 * h ** 4)
    return d1, d2, d3, d4


def _geometric_edges(a, b, n):
    return np.geomspace(a, b, n + 1)


def _tail_transformed(func, order=24, panels=8):
    """int_1^inf f(x) dx with x = 1/t mapped onto (0, 1)."""
    nodes, weights = _gl_rule(order)
    edges = np.linspace(0.0, 1.0, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        t = mid + half * nodes
        with np.errstate(under="ignore", over="ignore"):
            total += np.sum(weights * func(t)) * half
    return total


def pv_functional(phi, patch=1e-3):
    """Principal-value functional (R(1/x), phi) = int_0^inf (phi(x) - phi(-x))/x dx.

    The |x| < patch region uses the series of the regularized integrand
    (limit 2 phi'(0)); the [patch, 1] segment uses geometric Gauss-Legendre
    panels and the tail maps through x -> 1/x onto (0, 1].
    """
    d1, _, d3, _ = _fd_derivatives(phi)
    head = 2 * d1 * patch + d3 * patch ** 3 / 9

    def mid_integrand(x):
        return (phi(x) - phi(-x)) / x

    nodes, weights = _gl_rule(24)
    mid = 0.0
    for lo, hi in zip(*(lambda e: (e[:-1], e[1:]))(_geometric_edges(patch, 1.0, 10))):
        m, half = (lo + hi) / 2, (hi - lo) / 2
        x = m + half * nodes
        mid += np.sum(weights * mid_integrand(x)) * half

    def tail(t):
        x = 1.0 / t
        return (phi(x) - phi(-x)) * x  # ((phi(x)-phi(-x))/x) * x^2 Jacobian

    return float(head + mid + _tail_transformed(tail))


def reg_inv_square_functional(phi, patch=1e-3):
    """(R(1/x^2), phi) = int_0^inf (phi(x) + phi(-x) - 2 phi(0)) / x^2 dx.

    Same segmentation as `pv_functional`; the small-x limit of the
    regularized integrand is phi''(0).  Not positive on positive test
    functions: for phi = e^{-x^2} the value is -2 sqrt(pi).
    """
    _, d2, _, d4 = _fd_derivatives(phi)
    head = d2 * patch + d4 * patch ** 3 / 36
    phi0 = phi(0.0)

    def mid_integrand(x):
        return (phi(x) + phi(-x) - 2 * phi0) / (x * x)

    nodes, weights = _gl_rule(24)
    mid = 0.0
    for lo, hi in zip(*(lambda e: (e[:-1], e[1:]))(_geometric_edges(patch, 1.0, 10))):
        m, half = (lo + hi) / 2, (hi - lo) / 2
        x = m + half * nodes
        mid += np.sum(weights * mid_integrand(x)) * half

    def tail(t):
        # int_1^inf (phi(x) + phi(-x))/x^2 dx with x = 1/t
        return phi(1.0 / t) + phi(-1.0 / t)

    return float(head + mid + _tail_transformed(tail) - 2 * phi0)
