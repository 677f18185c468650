"""Independent oracles for the test suite.

Everything here avoids the package's own analytic formulas: states are
built by exponentiating truncated creation/annihilation matrices, moments
by tracing against operator powers, and integrals by scipy's adaptive
quadrature.  Agreement between these routes and the library's closed forms
is the whole point of the tests.
"""

import math

import numpy as np
from scipy.linalg import expm


def fock_ops(dim):
    """Truncated annihilation / creation matrices."""
    a = np.zeros((dim, dim), dtype=complex)
    n = np.arange(1, dim)
    a[n - 1, n] = np.sqrt(n)
    return a, a.conj().T


def squeezed_coherent_dm(qbar, pbar, zeta, dim=60, hbar=1.0):
    """rho = D S |0><0| S^dag D^dag by matrix exponentials.

    S = exp{(conj(zeta')/2) a^2 - (zeta'/2) a^dag^2} with the exponent
    parameter zeta' = zeta * artanh|zeta| / |zeta|, and
    D = exp{alpha a^dag - conj(alpha) a}, alpha = (qbar + i pbar)/sqrt(2 hbar).
    """
    a, adag = fock_ops(dim)
    z = complex(zeta)
    if abs(z) > 0:
        zp = z * np.arctanh(abs(z)) / abs(z)
    else:
        zp = 0j
    s_op = expm(zp.conjugate() / 2 * (a @ a) - zp / 2 * (adag @ adag))
    alpha = (qbar + 1j * pbar) / math.sqrt(2 * hbar)
    d_op = expm(alpha * adag - alpha.conjugate() * a)
    vec = np.zeros(dim, dtype=complex)
    vec[0] = 1.0
    psi = d_op @ (s_op @ vec)
    return np.outer(psi, psi.conj())


def normally_ordered_moment(rho, k, l):
    """Tr(a^dag^k a^l rho) on the truncated space."""
    dim = rho.shape[0]
    a, adag = fock_ops(dim)
    op = np.linalg.matrix_power(adag, k) @ np.linalg.matrix_power(a, l)
    return complex(np.trace(op @ rho))


def coherent_dm_exact(alpha, dim):
    n = np.arange(dim)
    amp = np.exp(-abs(alpha) ** 2 / 2) * np.asarray(
        [alpha ** int(k) / math.sqrt(math.factorial(int(k))) for k in n])
    return np.outer(amp, amp.conj())


def marginal_from_dm(rho, phi, qs, hbar=1.0):
    """Rotated marginal by direct wavefunction summation (plain doubles).

    Independent implementation: Hermite functions from numpy's hermval on
    physicists' polynomials with explicit normalization.
    """
    from numpy.polynomial.hermite import hermval

    dim = rho.shape[0]
    xs = np.asarray(qs, dtype=float) / math.sqrt(hbar)
    psi = np.empty((dim, xs.size))
    gauss = np.exp(-xs ** 2 / 2) * np.pi ** -0.25
    for n in range(dim):
        coef = np.zeros(n + 1)
        coef[n] = 1.0
        norm = math.sqrt(2.0 ** n * math.factorial(n))
        psi[n] = hermval(xs, coef) * gauss / norm
    phases = np.exp(1j * np.arange(dim) * phi)
    v = phases[:, None] * psi
    out = np.einsum("in,ij,jn->n", v.conj(), rho, v) / math.sqrt(hbar)
    assert np.max(np.abs(out.imag)) < 1e-9
    return out.real
