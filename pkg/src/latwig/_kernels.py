"""Hot audit kernels: numba-jitted loops with a pure-numpy fallback.

The covariance and hermiticity audits scan all N^4 coefficient indices per
group element (times the group order, times two lifts), which is the only
loop-dominated part of the package. Set the environment variable
``LATWIG_NO_NUMBA=1`` to force the numpy path; both paths produce the same
residual arrays. ``benchmarks/bench_kernels.py`` compares their timing.
"""

import os

import numpy as np

ENV_FLAG = "LATWIG_NO_NUMBA"


def _numba_requested():
    return os.environ.get(ENV_FLAG, "").strip().lower() not in {"1", "true", "yes", "on"}


HAVE_NUMBA = False
if _numba_requested():
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False


def backend():
    """Name of the kernel backend in use: 'numba' or 'numpy'."""
    return "numba" if HAVE_NUMBA else "numpy"


def covariance_residuals_numpy(table, kappa, lam, mu, nu, phases):
    """Residuals |a~(nu*s+lam*t, mu*s+kappa*t; n, m) - phase(n,m)*a~(s, t; nu*n-mu*m, -lam*n+kappa*m)|.

    ``phases[n, m]`` must hold the exact covariance phase for the element;
    index arithmetic is mod N throughout. Returns an (N,N,N,N) float array
    indexed [s, t, n, m].
    """
    n = table.shape[0]
    s = np.arange(n).reshape(n, 1, 1, 1)
    t = np.arange(n).reshape(1, n, 1, 1)
    a = np.arange(n).reshape(1, 1, n, 1)
    b = np.arange(n).reshape(1, 1, 1, n)
    lhs = table[(nu * s + lam * t) % n, (mu * s + kappa * t) % n, a, b]
    rhs = phases[np.newaxis, np.newaxis, :, :] * table[s, t, (nu * a - mu * b) % n, (-lam * a + kappa * b) % n]
    return np.abs(lhs - rhs)


def _covariance_residuals_loop(table, kappa, lam, mu, nu, phases, out):
    n = table.shape[0]
    for s in range(n):
        for t in range(n):
            s2 = (nu * s + lam * t) % n
            t2 = (mu * s + kappa * t) % n
            for a in range(n):
                for b in range(n):
                    a2 = (nu * a - mu * b) % n
                    b2 = (-lam * a + kappa * b) % n
                    out[s, t, a, b] = abs(table[s2, t2, a, b] - phases[a, b] * table[s, t, a2, b2])


def hermiticity_residuals_numpy(table, phases):
    """Residuals |a~(s,t;n,m) - phase(n,m) * conj(a~(-s,-t;-n,-m))|, indices mod N.

    ``phases[n, m]`` must hold omega^(-n*m).
    """
    n = table.shape[0]
    idx = (-np.arange(n)) % n
    flipped = table[np.ix_(idx, idx, idx, idx)].conj()
    return np.abs(table - phases[np.newaxis, np.newaxis, :, :] * flipped)


def _hermiticity_residuals_loop(table, phases, out):
    n = table.shape[0]
    for s in range(n):
        for t in range(n):
            for a in range(n):
                for b in range(n):
                    out[s, t, a, b] = abs(
                        table[s, t, a, b]
                        - phases[a, b] * np.conj(table[(-s) % n, (-t) % n, (-a) % n, (-b) % n])
                    )


if HAVE_NUMBA:
    _covariance_jit = njit(cache=True)(_covariance_residuals_loop)
    _hermiticity_jit = njit(cache=True)(_hermiticity_residuals_loop)

    def covariance_residuals_numba(table, kappa, lam, mu, nu, phases):
        out = np.empty(table.shape, dtype=np.float64)
        _covariance_jit(table, kappa, lam, mu, nu, phases, out)
        return out

    def hermiticity_residuals_numba(table, phases):
        out = np.empty(table.shape, dtype=np.float64)
        _hermiticity_jit(table, phases, out)
        return out

else:
    covariance_residuals_numba = None
    hermiticity_residuals_numba = None


def covariance_residuals(table, kappa, lam, mu, nu, phases):
    if HAVE_NUMBA:
        return covariance_residuals_numba(table, kappa, lam, mu, nu, phases)
    return covariance_residuals_numpy(table, kappa, lam, mu, nu, phases)


def hermiticity_residuals(table, phases):
    if HAVE_NUMBA:
        return hermiticity_residuals_numba(table, phases)
    return hermiticity_residuals_numpy(table, phases)
