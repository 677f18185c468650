"""Extended-precision kernels shared by the special-function layer.

Everything here works internally in ``numpy.longdouble`` (80-bit extended on
x86-64 Linux, eps ~ 1.1e-19).  The extra digits matter: the Hermite series for
the pattern functions cancels through partial sums ~1e7 at |x| ~ 6, and the
upward recurrence for the nonnormalizable oscillator solutions amplifies seed
rounding by the polynomially growing companion solution.  Plain doubles lose
~7 digits in both places; extended precision keeps the public float64 results
at the tolerances the test suite pins.

All kernels are vectorized over the evaluation points and return longdouble
arrays; the public modules cast to float64 at their boundary.
"""

import numpy as np

LD = np.longdouble

#: eps of the internal accumulator type; ~1.1e-19 on x86-64, 2.2e-16 where
#: longdouble aliases double (results then degrade gracefully).
LD_EPS = float(np.finfo(LD).eps)

_SQRT2 = np.sqrt(LD(2))
_PI_QUARTER = LD(np.pi) ** LD(0.25)


def as_ld(x):
    """Return ``x`` as a 1-D longdouble array plus a scalar flag."""
    arr = np.asarray(x)
    scalar = arr.ndim == 0
    return np.atleast_1d(arr).astype(LD), scalar


# ----------------------------------------------------------------------
# Dawson integral


def dawson_ld(x):
    """Dawson integral F(x) = e^{-x^2} int_0^x e^{t^2} dt, longdouble.

    Positive-term Maclaurin series of the inner integral for |x| < 7 (no
    cancellation), asymptotic series in 1/x beyond; both branches agree at
    the switchover to ~1e-19 relative.
    """
    x = np.asarray(x, dtype=LD)
    out = np.empty_like(x)
    small = np.abs(x) < 7.0
    if np.any(small):
        xs = x[small]
        # int_0^x e^{t^2} dt = sum_k x^{2k+1} / (k! (2k+1)), all terms >= 0
        term = xs.copy()
        total = xs.copy()
        xsq = xs * xs
        for k in range(1, 240):
            term = term * xsq / LD(k) * LD(2 * k - 1) / LD(2 * k + 1)
            total += term
            if np.all(np.abs(term) <= np.abs(total) * LD(1e-22)):
                break
        out[small] = np.exp(-xsq) * total
    big = ~small
    if np.any(big):
        xb = x[big]
        inv2 = LD(1) / (2 * xb * xb)
        term = LD(1) / (2 * xb)
        total = term.copy()
        for k in range(45):
            term = term * LD(2 * k + 1) * inv2
            total += term
        out[big] = total
    return out


# ----------------------------------------------------------------------
# Hermite families


def hermite_raw_ld(n, x):
    """Hermite polynomial H_n(x) by the raw recurrence, longdouble."""
    x = np.asarray(x, dtype=LD)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev
    h = 2 * x
    for k in range(1, n):
        h, h_prev = 2 * x * h - 2 * LD(k) * h_prev, h
    return h


def hermite_norm_all(nmax, x):
    """All scaled Hermite polynomials Hhat_k = H_k / sqrt(2^k k!), k <= nmax.

    Returns an array of shape (nmax+1, len(x)).  Hhat stays in floating
    range for any k, x of practical size (it equals pi^{1/4} e^{x^2/2} h_k).
    """
    x = np.asarray(x, dtype=LD)
    rows = np.empty((nmax + 1, x.size), dtype=LD)
    rows[0] = 1.0
    if nmax >= 1:
        rows[1] = _SQRT2 * x
    for k in range(1, nmax):
        rows[k + 1] = (x * np.sqrt(LD(2) / LD(k + 1)) * rows[k]
                       - np.sqrt(LD(k) / LD(k + 1)) * rows[k - 1])
    return rows


def hermite_h_all(nmax, x):
    """Orthonormal oscillator eigenfunctions h_k(x), k <= nmax, longdouble.

    Same recurrence as `hermite_norm_all` but seeded with the Gaussian, so
    huge |x| underflows to zero gracefully.
    """
    x = np.asarray(x, dtype=LD)
    rows = np.empty((nmax + 1, x.size), dtype=LD)
    rows[0] = np.exp(-x * x / 2) / _PI_QUARTER
    if nmax >= 1:
        rows[1] = _SQRT2 * x * rows[0]
    for k in range(1, nmax):
        rows[k + 1] = (x * np.sqrt(LD(2) / LD(k + 1)) * rows[k]
                       - np.sqrt(LD(k) / LD(k + 1)) * rows[k - 1])
    return rows


# ----------------------------------------------------------------------
# Nonnormalizable-solution core
#
# B_n(x) is the growth-free factor of the odd-Wronskian eigenfunctions:
#     g_n(x) = 2 pi^{1/4} e^{x^2/2} B_n(x) / sqrt(2^n n!)
# with B_0 = F (Dawson), B_1 = 2xF - 1 and B_{n+1} = 2x B_n - 2n B_{n-1}.
# B_n decays like (n!/2) x^{-(n+1)} for x^2 >> 2n, so the upward recurrence
# (whose companion solution grows like H_n) loses accuracy in the far
# region; there the asymptotic series takes over, and a narrow transition
# band falls back to high-precision arithmetic.


def _irregular_asymptotic(n, x):
    """Asymptotic series for B_n at large |x|.

    Returns (values, ok) where ok marks points whose smallest term reached
    1e-16 of the accumulated sum before the series turned divergent.
    """
    x = np.asarray(x, dtype=LD)
    ax = np.abs(x)
    sign = np.where(x < 0, LD(-1.0) ** (n + 1), LD(1.0))
    a = LD(1.0)
    for i in range(1, n + 1):
        a *= LD(i)
    a /= 2
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        term = a * ax ** LD(-(n + 1))
        total = term.copy()
        active = np.isfinite(term)
        ok = np.zeros(x.shape, dtype=bool)
        inv_x2 = LD(1) / (ax * ax)
        for k in range(300):
            nxt = term * LD(n + 1 + 2 * k) * LD(n + 2 + 2 * k) / LD(4 * (k + 1)) * inv_x2
            grown = np.abs(nxt) >= np.abs(term)
            done = active & (np.abs(nxt) <= np.abs(total) * LD(1e-16))
            ok |= done
            active &= ~(grown | done)
            if not np.any(active):
                break
            total = np.where(active, total + nxt, total)
            term = nxt
    return sign * total, ok


def _irregular_mp(ns, xs):
    """Transition-band fallback: upward recurrence at 40 significant digits."""
    import mpmath as mp

    out = np.empty(len(xs), dtype=LD)
    with mp.workdps(40):
        for i, (n, xv) in enumerate(zip(ns, xs)):
            t = mp.mpf(float(xv))
            f = mp.exp(-t * t) * mp.sqrt(mp.pi) / 2 * mp.erfi(t)
            b_prev, b = f, 2 * t * f - 1
            for k in range(1, n):
                b_prev, b = b, 2 * t * b - 2 * k * b_prev
            out[i] = LD(mp.nstr(b if n >= 1 else b_prev, 25))
    return out


def irregular_all(nmax, x):
    """B_k(x) for k = 0..nmax at the given points, shape (nmax+1, len(x)).

    Regime selection per (k, point): upward recurrence where the point is
    at or inside the oscillatory region (x^2 < 2k + 14), asymptotic series
    where it converges, 40-digit fallback on the remaining narrow band.
    """
    x = np.asarray(x, dtype=LD)
    f = dawson_ld(x)
    rows = np.empty((max(nmax, 1) + 1, x.size), dtype=LD)
    rows[0] = f
    rows[1] = 2 * x * f - 1
    for n in range(1, nmax):
        rows[n + 1] = 2 * x * rows[n] - 2 * LD(n) * rows[n - 1]
    x2 = np.asarray(x * x, dtype=float)
    for k in range(nmax + 1):
        far = x2 > 2 * k + 14
        if not np.any(far):
            continue
        vals, ok = _irregular_asymptotic(k, x[far])
        take = np.zeros(x.shape, dtype=bool)
        take[far] = ok
        rows[k][take] = vals[ok]
        gap = far.copy()
        gap[far] = ~ok
        if np.any(gap):
            idx = np.nonzero(gap)[0]
            rows[k][idx] = _irregular_mp([k] * len(idx), x[idx])
    return rows[: nmax + 1]


def sqrt_factorial(n):
    """sqrt(n!) as longdouble, exact integer factorial underneath."""
    import math

    return np.sqrt(LD(math.factorial(n)))
