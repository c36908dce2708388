"""Clock/shift matrices, the discrete momentum basis, and exact phase arithmetic.

All phases are unit-modulus numbers omega^x with omega = exp(2*pi*i/N).
Exponents are kept as exact integers or half-integers and reduced mod N
(mod 2N in doubled units) before a single complex exponential is taken;
phases are never accumulated by repeated floating multiplication.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .lattice import check_dim

DEFAULT_TOL = 1e-10


@lru_cache(maxsize=None)
def _omega_table(n):
    """omega^k for k = 0..N-1, read-only."""
    table = np.exp(2j * np.pi * np.arange(n) / n)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _half_omega_table(n):
    """omega^(k/2) for k = 0..2N-1 (doubled-exponent units), read-only."""
    table = np.exp(1j * np.pi * np.arange(2 * n) / n)
    table.setflags(write=False)
    return table


def omega(n):
    """Primitive N-th root of unity exp(2*pi*i/N)."""
    check_dim(n)
    return complex(_omega_table(n)[1 % n])


def omega_int(k, n):
    """omega^k for an exact integer exponent k."""
    return complex(_omega_table(n)[k % n])


def omega_half(two_k, n):
    """omega^(two_k/2) for an exact integer doubled exponent two_k."""
    return complex(_half_omega_table(n)[two_k % (2 * n)])


def omega_pow(x, n):
    """omega^x for an exact integer or half-integer exponent x.

    Accepts int or Fraction with denominator 1 or 2. The doubled exponent
    is reduced mod 2N before exponentiation, so the result is identical
    for all exponents in the same class.
    """
    check_dim(n)
    frac = Fraction(x)
    if frac.denominator not in (1, 2):
        raise ValueError(f"exponent must be integer or half-integer, got {x!r}")
    return omega_half(int(2 * frac), n)


def clock_matrix(n):
    """Diagonal matrix diag(1, omega, ..., omega^(N-1)); P|q> = omega^q |q>."""
    check_dim(n)
    return np.diag(_omega_table(n)).astype(complex)


def shift_matrix(n):
    """Cyclic shift with ones on the superdiagonal and lower-left corner."""
    check_dim(n)
    s = np.zeros((n, n), dtype=complex)
    for i in range(n):
        s[i, (i + 1) % n] = 1.0
    return s


def momentum_vector(p, n):
    """Momentum eigenstate with components omega^(-q*p)/sqrt(N)."""
    check_dim(n)
    if not 0 <= p < n:
        raise ValueError(f"momentum index {p} not in [0, {n})")
    table = _omega_table(n)
    return np.array([table[(-q * p) % n] for q in range(n)]) / np.sqrt(n)


def monomial(n_exp, m_exp, n):
    """The operator-basis element S^n_exp * P^m_exp.

    Built entrywise from exact phase classes: row i has its single nonzero
    at column j = i + n_exp mod N with value omega^(m_exp * j).
    """
    check_dim(n)
    table = _omega_table(n)
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        j = (i + n_exp) % n
        out[i, j] = table[(m_exp * j) % n]
    return out


@lru_cache(maxsize=None)
def monomial_table(n):
    """Stack of all N^2 monomials, indexed [n_exp, m_exp, i, j]; read-only."""
    check_dim(n)
    stack = np.empty((n, n, n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            stack[a, b] = monomial(a, b, n)
    stack.setflags(write=False)
    return stack


def validate_density_matrix(rho, tol=DEFAULT_TOL):
    """Raise unless rho is hermitian, unit-trace and PSD to tolerance."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > tol:
        raise ValueError(f"density matrix not hermitian: max deviation {herm:.3e}")
    tr = rho.trace()
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace {tr} != 1")
    lo = np.linalg.eigvalsh((rho + rho.conj().T) / 2).min()
    if lo < -tol:
        raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")
    return rho


def basis_state_density(q, n):
    """|q><q| in the position basis."""
    check_dim(n)
    if not 0 <= q < n:
        raise ValueError(f"basis index {q} not in [0, {n})")
    rho = np.zeros((n, n), dtype=complex)
    rho[q, q] = 1.0
    return rho


def momentum_state_density(p, n):
    """|p><p| built from the momentum eigenvector."""
    v = momentum_vector(p, n)
    return np.outer(v, v.conj())


def maximally_mixed(n):
    """I/N."""
    check_dim(n)
    return np.eye(n, dtype=complex) / n


def random_density_matrix(n, rng):
    """Hilbert-Schmidt-random density matrix rho = X X^dag / Tr."""
    check_dim(n)
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = x @ x.conj().T
    return rho / rho.trace()


def random_pure_density(n, rng):
    """Projector onto a Haar-ish random pure state."""
    check_dim(n)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())
