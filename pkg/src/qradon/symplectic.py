"""Squeeze / rotation / displacement algebra on one mode.

Real 2x2 unimodular maps act on the canonical pair (Q, P) as row vectors,
(q', p') = (q, p) . M; the Radon-transform arguments (u, v) then transform
with the contragredient (inverse transposed) matrix so that uq + vp stays
invariant.  The complex twin acts on (a, a^dagger).

A general squeeze is parametrized by (xi, eta, zeta); the unitary subfamily
has xi = conj(zeta) and real eta.  The unit-disc parameter zeta of the
normally ordered decomposition relates to the exponent parameter zeta' by
zeta = zeta' th|zeta'| / |zeta'|.
"""

import cmath
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError

__all__ = [
    "SymplecticMap",
    "ComplexSqueezeMap",
    "SqueezeParams",
    "Displacement",
    "matrix_from_squeeze",
    "squeeze_from_matrix",
    "complex_from_real",
    "real_from_complex",
    "zeta_reparam",
    "zeta_reparam_inverse",
    "unitary_squeeze_matrices",
    "rotation_map",
    "transform_radon_args",
]

_UNIMODULAR_TOL = 1e-9


@dataclass(frozen=True)
class SymplecticMap:
    """Real unimodular (Q, P) transformation matrix [[alpha, beta], [gamma, delta]]."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        if abs(self.det - 1.0) > _UNIMODULAR_TOL:
            raise ConsistencyError(f"map is not unimodular: det = {self.det!r}")

    @property
    def det(self):
        return self.alpha * self.delta - self.beta * self.gamma

    @property
    def matrix(self):
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]])

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    def compose(self, other):
        """Map equivalent to applying ``self`` first, then ``other``.

        With the row-vector convention the arguments chain as
        (q, p) . M_other . M_self, so the composite matrix is
        other.matrix @ self.matrix.
        """
        m = other.matrix @ self.matrix
        return SymplecticMap(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def inverse(self):
        return SymplecticMap(self.delta, -self.beta, -self.gamma, self.alpha)

    def transform_point(self, q, p):
        """(q', p') = (q, p) . M (row-vector convention)."""
        return (self.alpha * q + self.gamma * p, self.beta * q + self.delta * p)


@dataclass(frozen=True)
class ComplexSqueezeMap:
    """Complex unimodular (a, a^dagger) transformation [[kappa, lam], [mu, nu]]."""

    kappa: complex
    lam: complex
    mu: complex
    nu: complex

    def __post_init__(self):
        if abs(self.det - 1.0) > _UNIMODULAR_TOL:
            raise ConsistencyError(f"complex map is not unimodular: det = {self.det!r}")

    @property
    def det(self):
        return self.kappa * self.nu - self.lam * self.mu

    @property
    def matrix(self):
        return np.array([[self.kappa, self.lam], [self.mu, self.nu]])


@dataclass(frozen=True)
class SqueezeParams:
    """Exponent parameters of the squeeze operator; see module docstring."""

    xi: complex
    eta: complex
    zeta: complex
    unitary: bool = False

    def __post_init__(self):
        if self.unitary:
            if abs(self.xi - self.zeta.conjugate()) > 1e-12 or abs(self.eta.imag) > 1e-12:
                raise ConsistencyError(
                    "unitary squeeze needs xi = conj(zeta) and real eta")

    @classmethod
    def unitary_family(cls, zeta_prime, eta=0.0):
        return cls(complex(zeta_prime).conjugate(), float(eta), complex(zeta_prime), unitary=True)


@dataclass(frozen=True)
class Displacement:
    """Phase-space displacement of the state by (qbar, pbar)."""

    qbar: float = 0.0
    pbar: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.qbar) and np.isfinite(self.pbar)):
            raise DomainError("displacement must be finite")


def _sh_over_eps(eps):
    """sinh(eps)/eps and cosh(eps); even in eps, series below |eps| = 1e-4."""
    if abs(eps) < 1e-4:
        e2 = eps * eps
        shc = 1 + e2 / 6 * (1 + e2 / 20 * (1 + e2 / 42))
        ch = 1 + e2 / 2 * (1 + e2 / 12 * (1 + e2 / 30))
    else:
        shc = cmath.sinh(eps) / eps
        ch = cmath.cosh(eps)
    return shc, ch


def squeeze_matrix_complex(params: SqueezeParams):
    """The possibly complex 2x2 (Q, P) matrix of a general squeeze."""
    xi, eta, zeta = complex(params.xi), complex(params.eta), complex(params.zeta)
    eps = cmath.sqrt(xi * zeta - eta * eta)
    shc, ch = _sh_over_eps(eps)
    alpha = ch + (xi + zeta) / 2 * shc
    beta = (1j * (xi - zeta) - 2 * eta) / 2 * shc
    gamma = (1j * (xi - zeta) + 2 * eta) / 2 * shc
    delta = ch - (xi + zeta) / 2 * shc
    return np.array([[alpha, beta], [gamma, delta]])


def matrix_from_squeeze(params: SqueezeParams) -> SymplecticMap:
    """Real symplectic matrix of a (unitary-subfamily) squeeze.

    Raises ConsistencyError when the entries come out non-real beyond 1e-9,
    which flags inputs wrongly claimed to lie in the unitary subfamily.
    """
    m = squeeze_matrix_complex(params)
    if np.max(np.abs(m.imag)) > 1e-9:
        raise ConsistencyError(
            "squeeze parameters do not define a real canonical transformation "
            f"(max imaginary part {np.max(np.abs(m.imag)):.3e})")
    r = m.real
    return SymplecticMap(r[0, 0], r[0, 1], r[1, 0], r[1, 1])


def squeeze_from_matrix(m: SymplecticMap) -> SqueezeParams:
    """Invert `matrix_from_squeeze`.

    The exponent is recovered as eps = arccosh((alpha+delta)/2) on the
    principal branch, which fixes the sign freedom in theta = +-sinh(eps);
    for (alpha+delta)/2 <= -1 the branch is ambiguous and the principal
    choice is reported via a warning.
    """
    half_trace = (m.alpha + m.delta) / 2
    if half_trace <= -1:
        warnings.warn(
            "trace/2 <= -1: squeeze parameters are branch-ambiguous; "
            "principal branch chosen", stacklevel=2)
    eps = cmath.acosh(complex(half_trace))
    shc, _ = _sh_over_eps(eps)
    xi = ((m.alpha - m.delta) - 1j * (m.beta + m.gamma)) / (2 * shc)
    eta = (m.gamma - m.beta) / (2 * shc)
    zeta = ((m.alpha - m.delta) + 1j * (m.beta + m.gamma)) / (2 * shc)
    unitary = abs(xi - zeta.conjugate()) < 1e-10 and abs(eta.imag) < 1e-10
    if unitary:
        eta = eta.real
    return SqueezeParams(xi, eta, zeta, unitary=unitary)


def complex_from_real(m: SymplecticMap) -> ComplexSqueezeMap:
    """(a, a^dagger) representation of a real canonical transformation."""
    a, b, c, d = m.alpha, m.beta, m.gamma, m.delta
    return ComplexSqueezeMap(
        kappa=(a + 1j * b - 1j * c + d) / 2,
        lam=(a - 1j * b - 1j * c - d) / 2,
        mu=(a + 1j * b + 1j * c - d) / 2,
        nu=(a - 1j * b + 1j * c + d) / 2,
    )


def real_from_complex(cm: ComplexSqueezeMap) -> SymplecticMap:
    """Inverse of `complex_from_real`; entries must come out real."""
    k, l, u, n = cm.kappa, cm.lam, cm.mu, cm.nu
    alpha = (k + l + u + n) / 2
    beta = -1j * (k - l + u - n) / 2
    gamma = 1j * (k + l - u - n) / 2
    delta = (k - l - u + n) / 2
    entries = np.array([alpha, beta, gamma, delta])
    if np.max(np.abs(entries.imag)) > 1e-9:
        raise ConsistencyError("complex map has no real (Q, P) counterpart")
    return SymplecticMap(*entries.real)


def zeta_reparam(zeta_prime):
    """Unit-disc squeeze parameter zeta = zeta' th|zeta'| / |zeta'|."""
    zp = complex(zeta_prime)
    r = abs(zp)
    if r == 0:
        return 0j
    return zp * np.tanh(r) / r


def zeta_reparam_inverse(zeta):
    """Exponent parameter zeta' = zeta Arth|zeta| / |zeta|; needs |zeta| < 1."""
    z = complex(zeta)
    r = abs(z)
    if r >= 1:
        raise DomainError("zeta_reparam_inverse needs |zeta| < 1")
    if r == 0:
        return 0j
    return z * np.arctanh(r) / r


def unitary_squeeze_matrices(zeta):
    """Real and complex matrices of the pure squeeze with disc parameter zeta.

    Real: [[1 + Re zeta, Im zeta], [Im zeta, 1 - Re zeta]] / sqrt(1-|zeta|^2);
    complex: [[1, conj(zeta)], [zeta, 1]] / sqrt(1-|zeta|^2).
    """
    z = complex(zeta)
    if abs(z) >= 1:
        raise DomainError("unitary_squeeze_matrices needs |zeta| < 1")
    norm = 1.0 / np.sqrt(1.0 - abs(z) ** 2)
    real = SymplecticMap(
        (1 + z.real) * norm, z.imag * norm, z.imag * norm, (1 - z.real) * norm)
    cplx = ComplexSqueezeMap(
        kappa=norm, lam=z.conjugate() * norm, mu=z * norm, nu=norm)
    return real, cplx


def rotation_map(phi):
    """Canonical rotation: (Q, P) -> (Q cos phi + P sin phi, -Q sin phi + P cos phi)."""
    c, s = np.cos(phi), np.sin(phi)
    return SymplecticMap(c, -s, s, c)


def transform_radon_args(u, v, m: SymplecticMap):
    """Contragredient action on the Radon/Fourier arguments:

    (u', v') = (delta u - beta v, -gamma u + alpha v), which keeps uq + vp
    invariant when (q, p) transforms with the map itself.
    """
    return (m.delta * u - m.beta * v, -m.gamma * u + m.alpha * v)
