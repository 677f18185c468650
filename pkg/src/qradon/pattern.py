"""Pattern-function engine.

Four interchangeable representations of the weight functions whose
(phi, q)-integral against a tomogram yields Fock matrix elements:

* ``hermite-series``  -- convergent series over Hermite polynomials of even
  or odd order (steps of two above m+n),
* ``canonical``       -- the series plus its finite Hermite correction, the
  unique representation that vanishes at infinity,
* ``deriv-product``   -- d/dx [h_m(x) g_n(x)] assembled from exact ladder
  derivatives (two special-function evaluations per point),
* ``deriv-product-swapped`` -- the same with (m, n) exchanged.

Any two representations may differ only inside span{H_{|m-n|-2k}, k >= 1};
`pattern_nonuniqueness_residual` fits and checks exactly that.

Series accumulation and the product cores run in extended precision: the
series cancels through partial sums ~1e7 near |x| = 6 and the product core
inherits the Dawson-vs-polynomial cancellation, both of which would cost
~7 digits in plain doubles.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _xprec
from ._xprec import LD
from .errors import (ConvergenceError, DomainError, RangeError,
                     RepresentationError, UnreliableRegionWarning, WindowWarning)
from .specfun import EvalGrid
from .radon import gauss_panels

__all__ = [
    "REPRESENTATIONS",
    "PatternTable",
    "pattern_hermite_series",
    "pattern_deriv_product",
    "pattern_canonical",
    "pattern_f00_closed",
    "pattern_asymptotic",
    "pattern_eval",
    "build_table",
    "pattern_nonuniqueness_residual",
    "ode_residual",
    "orthogonality_check",
]

REPRESENTATIONS = ("canonical", "hermite-series", "deriv-product",
                   "deriv-product-swapped")

#: |x| beyond which the series representation is flagged and `pattern_canonical`
#: switches to the product closed form (exact in x).
SERIES_GUARD = 5.0

_PI_QUARTER = _xprec._PI_QUARTER


@dataclass(frozen=True)
class PatternTable:
    """Evaluated pattern function F^(rep)_{m,n} over an x-grid."""

    m: int
    n: int
    rep: str
    grid: EvalGrid
    values: np.ndarray


def _series_core(m, n, x_ld, fixed=None, rel_tol=1e-14, quiet_needed=20):
    """Hermite series for F'_{m,n} on a longdouble array.

    Terms are accumulated as (-1)^j d_j Hhat_{m+n+2j}(x) with
    d_j = (m+j)! (n+j)! / (j! sqrt((m+n+2j)! m! n!)), updated by ratios so
    no factorial is ever evaluated.  Returns (sum, converged_mask).
    """
    x = x_ld
    N = m + n
    rows = _xprec.hermite_norm_all(max(N, 1), x)
    h_prev = rows[N - 1].copy() if N >= 1 else np.zeros_like(x)
    h_cur = rows[N].copy()
    d = np.sqrt(LD(math.factorial(m)) * LD(math.factorial(n)) / LD(math.factorial(N)))
    total = np.zeros_like(x)
    peak = np.zeros_like(x)
    quiet = np.zeros(x.shape, dtype=int)
    sign = LD(1.0)
    j = 0
    jmax = fixed if fixed is not None else 6000
    converged = np.zeros(x.shape, dtype=bool)
    while j <= jmax:
        term = sign * d * h_cur
        total = total + term
        peak = np.maximum(peak, np.abs(total))
        small = np.abs(term) <= rel_tol * np.maximum(np.abs(total), LD(1e-280))
        quiet = np.where(small, quiet + 1, 0)
        converged |= quiet >= quiet_needed
        if fixed is None and np.all(converged):
            break
        # advance the normalized Hermite recurrence two orders
        for _ in range(2):
            N += 1
            h_new = x * np.sqrt(LD(2) / LD(N)) * h_cur - np.sqrt(LD(N - 1) / LD(N)) * h_prev
            h_prev, h_cur = h_cur, h_new
        d = d * LD((m + j + 1)) * LD((n + j + 1)) / LD(j + 1) \
            / np.sqrt(LD(m + n + 2 * j + 1)) / np.sqrt(LD(m + n + 2 * j + 2))
        sign = -sign
        j += 1
    if fixed is not None:
        # convergence audit for the fixed truncation
        tail = np.abs(d * h_cur)
        converged = tail <= LD(1e-10) * np.maximum(np.abs(total), LD(1e-280))
    return total, converged


def pattern_hermite_series(m, n, x, trunc=None):
    """Series representation F'_{m,n}(x).

    ``trunc=None`` sums adaptively (stops after 20 consecutive terms below
    1e-14 relative); an integer sums exactly that many terms beyond j = 0
    and raises ConvergenceError when the truncation is insufficient at some
    requested point.
    """
    if m < 0 or n < 0:
        raise DomainError("pattern indices must be nonnegative")
    xs, scalar = _xprec.as_ld(x)
    total, ok = _series_core(m, n, xs, fixed=trunc)
    if trunc is not None and not np.all(ok):
        bad = np.asarray(xs, dtype=float)[~ok]
        raise ConvergenceError(
            f"series({trunc}) has not converged at |x| up to {np.max(np.abs(bad)):.3g}")
    out = np.asarray(total, dtype=float)
    return float(out[0]) if scalar else out


def _product_core(m, n, x_ld):
    """F''_{m,n} = d/dx [h_m g_n] in the growth-free factorization.

    With hhat_k = pi^{-1/4} Hhat_k and ghat_k = 2 pi^{1/4} B_k / sqrt(2^k k!),
    the Gaussians cancel exactly: h_m g_n = hhat_m ghat_n, and the ladder
    derivatives give hhat' = sqrt(2m) hhat_{m-1},
    ghat_n' = sqrt(2n) ghat_{n-1} - 2x ghat_n (the n = 0 step lowers onto the
    raising-operator kernel and contributes the constant 2 pi^{1/4}).
    """
    x = x_ld
    hh = _xprec.hermite_norm_all(max(m, 1), x) / _PI_QUARTER
    bb = _xprec.irregular_all(max(n, 1), x)
    inv_norm = [LD(1.0)]
    for k in range(1, max(n, 1) + 1):
        inv_norm.append(inv_norm[-1] / np.sqrt(LD(2 * k)))
    ghat_n = 2 * _PI_QUARTER * bb[n] * inv_norm[n]
    if n == 0:
        ghat_deriv = 2 * _PI_QUARTER - 2 * x * ghat_n
    else:
        ghat_nm1 = 2 * _PI_QUARTER * bb[n - 1] * inv_norm[n - 1]
        ghat_deriv = np.sqrt(LD(2 * n)) * ghat_nm1 - 2 * x * ghat_n
    total = hh[m] * ghat_deriv
    if m >= 1:
        total = total + np.sqrt(LD(2 * m)) * hh[m - 1] * ghat_n
    return total


def pattern_deriv_product(m, n, x, swapped=False):
    """Derivative-of-product representation F''_{m,n} (F''' when swapped)."""
    if m < 0 or n < 0:
        raise DomainError("pattern indices must be nonnegative")
    if swapped:
        m, n = n, m
    xs, scalar = _xprec.as_ld(x)
    vals = _product_core(m, n, xs)
    out = np.asarray(vals, dtype=float)
    if not np.all(np.isfinite(out)):
        big = np.max(np.abs(np.asarray(xs, dtype=float)))
        safe = (np.finfo(float).max ** (1.0 / max(m + n, 1))) / 4
        raise RangeError(
            f"deriv-product overflows float64 at |x| ~ {big:.3g}", safe_limit=safe)
    return float(out[0]) if scalar else out


def _correction(m, n, x_ld):
    """Finite Hermite sum turning F' into the canonical F (empty for |m-n| <= 1).

    F = F' + (2^{|m-n|} m! n!)^{-1/2} sum_{k=1}^{[|m-n|/2]}
        (k-1+min)! (|m-n|-k)! / ((k-1)! (|m-n|-2k)!) (-2)^k H_{|m-n|-2k}(x).
    """
    diff = abs(m - n)
    if diff <= 1:
        return np.zeros_like(x_ld)
    low = min(m, n)
    pref = 1 / np.sqrt(LD(2) ** diff * LD(math.factorial(m)) * LD(math.factorial(n)))
    total = np.zeros_like(x_ld)
    for k in range(1, diff // 2 + 1):
        coeff = (LD(math.factorial(k - 1 + low)) * LD(math.factorial(diff - k))
                 / LD(math.factorial(k - 1)) / LD(math.factorial(diff - 2 * k)))
        total = total + coeff * LD(-2.0) ** k * _xprec.hermite_raw_ld(diff - 2 * k, x_ld)
    return pref * total


def pattern_canonical(m, n, x):
    """The symmetric representation that vanishes at infinity.

    Series-plus-correction inside |x| < 5 (the series' reliable envelope),
    product closed form beyond; both branches agree to ~1e-11 at the seam.
    """
    if m < 0 or n < 0:
        raise DomainError("pattern indices must be nonnegative")
    xs, scalar = _xprec.as_ld(x)
    out = np.empty(xs.shape, dtype=LD)
    inner = np.abs(np.asarray(xs, dtype=float)) < SERIES_GUARD
    if np.any(inner):
        xi = xs[inner]
        series, _ = _series_core(m, n, xi)
        out[inner] = series + _correction(m, n, xi)
    if np.any(~inner):
        xo = xs[~inner]
        out[~inner] = _product_core(min(m, n), max(m, n), xo)
    res = np.asarray(out, dtype=float)
    return float(res[0]) if scalar else res


def pattern_f00_closed(x):
    """Closed form of the diagonal seed: F_{0,0}(x) = 2 (1 - 2 x F_dawson(x))."""
    xs, scalar = _xprec.as_ld(x)
    vals = 2 * (1 - 2 * xs * _xprec.dawson_ld(xs))
    out = np.asarray(vals, dtype=float)
    return float(out[0]) if scalar else out


def pattern_asymptotic(m, n, x):
    """Large-argument representation (smoothing convolution omitted).

    (sqrt(2) x)^{m+n} / sqrt(m! n!) * sum_j (m+j)!(n+j)!/(j!(m+n+2j)!)
    (-2 x^2)^j, summed to convergence; emits UnreliableRegionWarning for
    |x| < 4 where the omitted convolution matters.
    """
    if m < 0 or n < 0:
        raise DomainError("pattern indices must be nonnegative")
    xs, scalar = _xprec.as_ld(x)
    if np.any(np.abs(np.asarray(xs, dtype=float)) < 4.0):
        warnings.warn("asymptotic pattern form is unreliable for |x| < 4",
                      UnreliableRegionWarning, stacklevel=2)
    pref = (np.sqrt(LD(2)) * xs) ** (m + n) / np.sqrt(
        LD(math.factorial(m)) * LD(math.factorial(n)))
    term = np.ones_like(xs) * LD(math.factorial(m)) * LD(math.factorial(n)) / LD(
        math.factorial(m + n))
    total = term.copy()
    j = 0
    while j < 2000:
        ratio = (LD(-2) * xs * xs * LD(m + j + 1) * LD(n + j + 1)
                 / LD(j + 1) / LD(m + n + 2 * j + 1) / LD(m + n + 2 * j + 2))
        term = term * ratio
        total = total + term
        if np.all(np.abs(term) <= np.abs(total) * LD(1e-17) + LD(1e-300)):
            break
        j += 1
    out = np.asarray(pref * total, dtype=float)
    return float(out[0]) if scalar else out


def pattern_eval(rep, m, n, x, trunc=None):
    """Dispatch a representation tag (or callable) to its evaluator."""
    if callable(rep):
        return rep(m, n, x)
    if rep == "canonical":
        return pattern_canonical(m, n, x)
    if rep == "hermite-series":
        return pattern_hermite_series(m, n, x, trunc=trunc)
    if rep == "deriv-product":
        return pattern_deriv_product(m, n, x)
    if rep == "deriv-product-swapped":
        return pattern_deriv_product(m, n, x, swapped=True)
    raise DomainError(f"unknown pattern representation {rep!r}")


def build_table(m, n, rep, grid: EvalGrid, trunc=None) -> PatternTable:
    values = np.asarray(pattern_eval(rep, m, n, grid.points, trunc=trunc))
    return PatternTable(m, n, rep, grid, values)


def pattern_nonuniqueness_residual(rep_a, rep_b, m, n, grid: EvalGrid,
                                   residual_tol=1e-8):
    """Least-squares fit of rep_a - rep_b onto span{H_{|m-n|-2k}(x), k >= 1}.

    Returns (coefficients, sup_residual).  The difference of any two valid
    representations lives exactly in that span; a残 residual above
    ``residual_tol`` raises RepresentationError.
    """
    x = grid.points
    diff = np.asarray(pattern_eval(rep_a, m, n, x)) - np.asarray(
        pattern_eval(rep_b, m, n, x))
    orders = list(range(abs(m - n) - 2, -1, -2))
    if not orders:
        coeffs = np.zeros(0)
        resid = float(np.max(np.abs(diff))) if diff.size else 0.0
    else:
        basis = np.stack([np.asarray(_xprec.hermite_raw_ld(k, np.asarray(x, dtype=LD)),
                                     dtype=float) for k in orders], axis=1)
        coeffs, *_ = np.linalg.lstsq(basis, diff, rcond=None)
        resid = float(np.max(np.abs(diff - basis @ coeffs)))
    if resid > residual_tol:
        raise RepresentationError(
            f"representations differ outside the Hermite span (residual {resid:.3e})")
    return coeffs, resid


# ----------------------------------------------------------------------
# differential-equation and orthogonality checks


def _product_value(kind, m, n, x_ld):
    """Products of oscillator solutions in the growth-free factorization.

    h_m h_n carries e^{-x^2}; h g is growth-free; g g carries e^{+x^2}.
    """
    need_h = max([m if kind[0] == "h" else 0, n if kind[1] == "h" else 0, 1])
    need_b = max([m if kind[0] == "g" else 0, n if kind[1] == "g" else 0, 1])
    hh = _xprec.hermite_h_all(need_h, x_ld) if "h" in kind else None
    bb = _xprec.irregular_all(need_b, x_ld) if "g" in kind else None

    def g_of(k):
        norm = np.sqrt(LD(2)) ** k * _xprec.sqrt_factorial(k)
        return 2 * _PI_QUARTER * np.exp(x_ld * x_ld / 2) * bb[k] / norm

    first = hh[m] if kind[0] == "h" else g_of(m)
    second = hh[n] if kind[1] == "h" else g_of(n)
    return first * second


def ode_residual(m, n, product, x_grid, order=4, step=5e-3):
    """Residual of the product ODE on a grid, relative to the local scale.

    ``product`` picks f_m g_n from {"hh", "hg", "gh", "gg"}.  order=4 checks
    the fourth-order equation every such product satisfies; order=3 checks
    the third-order equation whose right side vanishes for m = n.
    Derivatives are seven-point central differences on the analytic product.
    """
    if product not in ("hh", "hg", "gh", "gg"):
        raise DomainError("product must be one of hh, hg, gh, gg")
    if order not in (3, 4):
        raise DomainError("order must be 3 or 4")
    xs = np.asarray(x_grid, dtype=LD).ravel()
    h = LD(step)
    stencil = np.array([-3, -2, -1, 0, 1, 2, 3], dtype=LD)
    ym3, ym2, ym1, y0, yp1, yp2, yp3 = (
        _product_value(product, m, n, xs + s * h) for s in stencil)
    d1 = (-yp3 + 9 * yp2 - 45 * yp1 + 45 * ym1 - 9 * ym2 + ym3) / (-60 * h)
    d2 = (2 * yp3 - 27 * yp2 + 270 * yp1 - 490 * y0
          + 270 * ym1 - 27 * ym2 + 2 * ym3) / (180 * h * h)
    d3 = (ym3 - 8 * ym2 + 13 * ym1 - 13 * yp1 + 8 * yp2 - yp3) / (8 * h ** 3)
    d4 = (-yp3 + 12 * yp2 - 39 * yp1 + 56 * y0
          - 39 * ym1 + 12 * ym2 - ym3) / (6 * h ** 4)
    f0 = y0
    s_const = LD(m + n + 1)
    w = xs * xs - s_const
    if order == 4:
        lhs = d4 - 4 * w * d2 - 12 * xs * d1 - 4 * f0 + 4 * LD((m - n) ** 2) * f0
        scale = (np.abs(d4) + np.abs(4 * w * d2) + np.abs(12 * xs * d1)
                 + np.abs(4 * f0) + np.abs(4 * LD((m - n) ** 2) * f0))
    else:
        lhs = d3 - 4 * w * d1 - 4 * xs * f0
        scale = np.abs(d3) + np.abs(4 * w * d1) + np.abs(4 * xs * f0)
    scale = np.maximum(scale, np.max(scale) * LD(1e-8) + LD(1e-280))
    return float(np.max(np.abs(lhs) / scale))


def orthogonality_check(k, m, j, window=None, panel_width=0.5, order=16):
    """int dx (d/dx [h_k g_{k+j}]) h_m(x) h_{m+j}(x); equals delta_{k,m}.

    The Gaussian pair h_m h_{m+j} confines the integrand; a window leaving
    more than ~1e-12 of it outside triggers WindowWarning.
    """
    if k < 0 or m < 0 or j < 0:
        raise DomainError("orthogonality_check needs k, m, j >= 0")
    top = max(k, m) + j
    half = window if window is not None else math.sqrt(2 * top + 1) + 8.0

    def integrand(x):
        xl = np.asarray(x, dtype=LD)
        fpp = _product_core(k, k + j, xl)
        hh = _xprec.hermite_h_all(max(m + j, 1), xl)
        return np.asarray(fpp * hh[m] * hh[m + j], dtype=float)

    edge = np.asarray(_xprec.hermite_h_all(max(m + j, 1), np.asarray([half], dtype=LD)))
    tail_scale = abs(float(edge[m][0] * edge[m + j][0])) * (2 * top + 1)
    if tail_scale > 1e-12:
        warnings.warn(f"window {half:.2f} leaves ~{tail_scale:.1e} Gaussian tail outside",
                      WindowWarning, stacklevel=2)
    panels = max(8, int(math.ceil(2 * half / panel_width)))
    return gauss_panels(integrand, -half, half, panels, order=order)
