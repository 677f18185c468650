"""Special functions for the tomography stack.

Hermite polynomials, the orthonormal oscillator eigenfunctions h_n, their
nonnormalizable odd-Wronskian partners g_n, the Dawson integral, the Mehler
kernel and associated Laguerre polynomials.  All operations are pure and
accept scalars or arrays; thread-safe by construction.

Conventions (dimensionless x = q / sqrt(hbar)):

* ``h_n(x) = pi^{-1/4} e^{-x^2/2} H_n(x) / sqrt(2^n n!)``, orthonormal on R.
* ``g_n`` solves the same oscillator equation with parity (-1)^{n+1} and
  constant Wronskian W(h_n, g_n) = 2; ``g_{-1}(x) = sqrt(2) pi^{1/4}
  e^{x^2/2}`` is annihilated by the raising operator.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _xprec
from ._xprec import LD
from .errors import DomainError, RangeError

__all__ = [
    "EvalGrid",
    "hermite_poly",
    "hermite_function",
    "dawson",
    "g_function",
    "g_derivative",
    "hermite_function_derivative",
    "wronskian",
    "mehler_kernel",
    "laguerre_assoc",
]

_FLOAT_MAX = np.finfo(float).max


@dataclass(frozen=True)
class EvalGrid:
    """Ordered dimensionless abscissas with optional quadrature weights."""

    points: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size == 0:
            raise DomainError("grid needs a non-empty 1-D point set")
        if not np.all(np.isfinite(pts)) or np.any(np.diff(pts) <= 0):
            raise DomainError("grid points must be finite and strictly increasing")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            object.__setattr__(self, "weights", w)
            if w.shape != pts.shape or not np.all(np.isfinite(w)):
                raise DomainError("weights must be finite and match the points")

    @classmethod
    def uniform(cls, lo, hi, num):
        return cls(np.linspace(lo, hi, num))


def _finish(values, scalar):
    out = np.asarray(values, dtype=float)
    return float(out[0]) if scalar else out


def hermite_poly(n, x):
    """Hermite polynomial H_n(x) via H_{k+1} = 2x H_k - 2k H_{k-1}."""
    if n < 0:
        raise DomainError("hermite_poly needs n >= 0")
    xs, scalar = _xprec.as_ld(x)
    vals = _xprec.hermite_raw_ld(n, xs)
    with np.errstate(over="ignore"):
        out = np.asarray(vals, dtype=float)
    if not np.all(np.isfinite(out)):
        raise RangeError(f"H_{n} overflows the floating range at |x| ~ {np.max(np.abs(xs)):.3g}")
    return _finish(out, scalar)


def hermite_function(n, x):
    """Orthonormal oscillator eigenfunction h_n(x).

    Uses the normalized recurrence h_{k+1} = x sqrt(2/(k+1)) h_k -
    sqrt(k/(k+1)) h_{k-1}, stable to n of several hundred; underflows to 0
    for huge |x|.
    """
    if n < 0:
        raise DomainError("hermite_function needs n >= 0")
    xs, scalar = _xprec.as_ld(x)
    rows = _xprec.hermite_h_all(n, xs)
    return _finish(rows[n], scalar)


def hermite_function_derivative(n, x):
    """d/dx h_n(x) from the exact ladder h_n' = sqrt(2n) h_{n-1} - x h_n."""
    if n < 0:
        raise DomainError("hermite_function_derivative needs n >= 0")
    xs, scalar = _xprec.as_ld(x)
    rows = _xprec.hermite_h_all(max(n, 1), xs)
    if n == 0:
        d = -xs * rows[0]
    else:
        d = np.sqrt(LD(2 * n)) * rows[n - 1] - xs * rows[n]
    return _finish(d, scalar)


def dawson(x):
    """Dawson integral F(x) = e^{-x^2} int_0^x e^{t^2} dt.

    Power series below |x| = 7, asymptotic series beyond; relative accuracy
    well under 1e-12 across the real line (see tests against quadrature).
    """
    xs, scalar = _xprec.as_ld(x)
    return _finish(_xprec.dawson_ld(xs), scalar)


def _g_prefactor(n, x_ld):
    """exp(x^2/2)-carrying prefactor of g_n with overflow detection."""
    expo = np.exp(x_ld * x_ld / 2)
    return 2 * _xprec._PI_QUARTER * expo


def g_function(n, x):
    """Nonnormalizable oscillator eigenfunction g_n(x), n >= -1.

    g_{-1} = sqrt(2) pi^{1/4} e^{x^2/2}; for n >= 0 the value is assembled
    from the growth-free core B_n (g_n = 2 pi^{1/4} e^{x^2/2} B_n /
    sqrt(2^n n!)), which keeps the Dawson-vs-polynomial cancellation out of
    double arithmetic.  Raises RangeError once e^{x^2/2} leaves the float64
    range.
    """
    if n < -1:
        raise DomainError("g_function needs n >= -1")
    xs, scalar = _xprec.as_ld(x)
    # float64 overflow of exp(x^2/2) at |x| ~ 37.66
    safe = math.sqrt(2 * math.log(_FLOAT_MAX))
    if np.any(np.abs(np.asarray(xs, dtype=float)) > safe):
        raise RangeError("g_function overflows float64", safe_limit=safe)
    if n == -1:
        vals = _xprec._SQRT2 * _xprec._PI_QUARTER * np.exp(xs * xs / 2)
        return _finish(vals, scalar)
    core = _xprec.irregular_all(n, xs)[n]
    vals = _g_prefactor(n, xs) * core / (np.sqrt(LD(2)) ** n * _xprec.sqrt_factorial(n))
    out = np.asarray(vals, dtype=float)
    if not np.all(np.isfinite(out)):
        raise RangeError("g_function overflows float64", safe_limit=safe)
    return _finish(out, scalar)


def g_derivative(n, x):
    """d/dx g_n(x) from the ladder:

    g_n' = sqrt(2n) g_{n-1} - x g_n for n >= 1, g_0' = sqrt(2) g_{-1} - x g_0,
    g_{-1}' = x g_{-1}.
    """
    if n < -1:
        raise DomainError("g_derivative needs n >= -1")
    xs, scalar = _xprec.as_ld(x)
    if n == -1:
        return _finish(xs * np.asarray(g_function(-1, xs), dtype=LD), scalar)
    gn = np.asarray(g_function(n, xs), dtype=LD)
    if n == 0:
        gm = np.asarray(g_function(-1, xs), dtype=LD)
        d = _xprec._SQRT2 * gm - xs * gn
    else:
        gm = np.asarray(g_function(n - 1, xs), dtype=LD)
        d = np.sqrt(LD(2 * n)) * gm - xs * gn
    return _finish(d, scalar)


def wronskian(f, g, x, df=None, dg=None, step=None):
    """W(f, g)(x) = f(x) g'(x) - f'(x) g(x).

    Derivatives come from ``df``/``dg`` when supplied, otherwise from the
    second-order central difference with step 1e-5 * max(1, |x|).
    """
    x = float(x)
    h = step if step is not None else 1e-5 * max(1.0, abs(x))
    fp = df(x) if df is not None else (f(x + h) - f(x - h)) / (2 * h)
    gp = dg(x) if dg is not None else (g(x + h) - g(x - h)) / (2 * h)
    return f(x) * gp - fp * g(x)


def mehler_kernel(x, y, z, series_terms=None):
    """Bilinear Hermite generating kernel.

    Closed form (default): (1-z^2)^{-1/2} exp{(2xyz - (x^2+y^2) z^2) /
    (1-z^2)}.  With ``series_terms=N`` the truncated expansion
    sum_{n<=N} z^n H_n(x) H_n(y) / (2^n n!) is returned instead.
    Requires |z| < 1.
    """
    if abs(z) >= 1:
        raise DomainError("mehler_kernel needs |z| < 1")
    if series_terms is None:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        denom = 1.0 - z * z
        val = (2 * x * y * z - (x * x + y * y) * z * z) / denom
        out = np.exp(val) / np.sqrt(denom)
        return float(out) if out.ndim == 0 else out
    n_terms = int(series_terms)
    if n_terms < 0:
        raise DomainError("series_terms must be >= 0")
    xs, sx = _xprec.as_ld(x)
    ys, _ = _xprec.as_ld(y)
    xs, ys = np.broadcast_arrays(xs, ys)
    hx = _xprec.hermite_norm_all(max(n_terms, 1), xs.ravel())
    hy = _xprec.hermite_norm_all(max(n_terms, 1), ys.ravel())
    zp = LD(z) ** np.arange(n_terms + 1, dtype=LD)
    total = (zp[:, None] * hx[: n_terms + 1] * hy[: n_terms + 1]).sum(axis=0)
    total = total.reshape(xs.shape)
    return _finish(total, sx and np.ndim(y) == 0)


def laguerre_assoc(n, k, x):
    """Associated Laguerre polynomial L_n^k(x) by the stable recurrence."""
    if n < 0:
        raise DomainError("laguerre_assoc needs n >= 0")
    if n + k < 0:
        raise DomainError("laguerre_assoc needs n + k >= 0")
    xs, scalar = _xprec.as_ld(x)
    prev = np.ones_like(xs)
    if n == 0:
        return _finish(prev, scalar)
    cur = 1 + LD(k) - xs
    for m in range(1, n):
        cur, prev = ((2 * m + k + 1 - xs) * cur - (m + k) * prev) / LD(m + 1), cur
    return _finish(cur, scalar)
