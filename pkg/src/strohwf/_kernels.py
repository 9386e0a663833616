"""Hot numerical kernels with a numba path and a pure-numpy fallback.

Three kernels carry the inner loops of the library:

* ``quartic_roots`` -- batched closed-form Stroh eigenvalues ``(mu1, mu2)``.
* ``wf_matrices`` -- singular-traction transform and the symmetric / skew
  weight-function matrices evaluated on an array of (possibly complex)
  frequencies.
* ``betti_envelope`` -- the Betti integrand for a set of point forces.

The numba versions are used when numba imports and the environment variable
``STROHWF_DISABLE_NUMBA`` is unset or ``0``. Both versions are always importable
as ``numpy_<name>`` and ``numba_<name>`` so they can be benchmarked against each
other.

Parameter packing
-----------------
Bimaterial constants are passed as a float64 array ``p`` and a complex128
array ``c`` to keep the jitted signatures simple::

    p = [H11, H22, beta, eps, e0, delta1, delta2, gamma]
    c = [cplus, cminus]

Frequencies ``eta`` live on one side of the origin, selected by ``side``
(+1 or -1). On that side ``|eta|`` continues analytically to ``side * eta``
and ``sign(eta)`` to ``side``; powers of ``eta_-`` take the branch with
``arg in (-pi, 0]``, i.e. the principal branch except that the negative real
axis is reached from below.
"""

from __future__ import annotations

import cmath
import math
import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


_DEGENERATE_TOL = 1e-9


def _numba_disabled() -> bool:
    return os.environ.get("STROHWF_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")


USE_NUMBA = NUMBA_AVAILABLE and not _numba_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# Stroh eigenvalues
# ---------------------------------------------------------------------------

def numpy_quartic_roots(lam, rho):
    """Closed-form roots of ``lam mu^4 + 2 rho sqrt(lam) mu^2 + 1 = 0``.

    Parameters
    ----------
    lam, rho : ndarray of float
        Anisotropy parameters, ``lam > 0`` and ``rho > -1``.

    Returns
    -------
    mu1, mu2 : ndarray of complex
        Roots in the upper half-plane, ``mu1`` with the larger imaginary part
        (ties broken by positive real part first).
    """
    lam = np.asarray(lam, dtype=np.float64)
    rho = np.asarray(rho, dtype=np.float64)
    n = np.sqrt((1.0 + rho) / 2.0)
    m = np.sqrt(np.abs(1.0 - rho) / 2.0)
    q = lam ** -0.25
    over = rho > 1.0 + _DEGENERATE_TOL
    under = rho < 1.0 - _DEGENERATE_TOL
    mu1 = np.where(over, 1j * q * (n + m), np.where(under, q * (m + 1j * n), 1j * q))
    mu2 = np.where(over, 1j * q * (n - m), np.where(under, q * (-m + 1j * n), 1j * q))
    return mu1.astype(np.complex128), mu2.astype(np.complex128)


@njit(cache=True)
def numba_quartic_roots(lam, rho):
    size = lam.shape[0]
    mu1 = np.empty(size, dtype=np.complex128)
    mu2 = np.empty(size, dtype=np.complex128)
    for k in range(size):
        n = math.sqrt((1.0 + rho[k]) / 2.0)
        m = math.sqrt(abs(1.0 - rho[k]) / 2.0)
        q = lam[k] ** -0.25
        if rho[k] > 1.0 + _DEGENERATE_TOL:
            mu1[k] = complex(0.0, q * (n + m))
            mu2[k] = complex(0.0, q * (n - m))
        elif rho[k] < 1.0 - _DEGENERATE_TOL:
            mu1[k] = complex(q * m, q * n)
            mu2[k] = complex(-q * m, q * n)
        else:
            mu1[k] = complex(0.0, q)
            mu2[k] = complex(0.0, q)
    return mu1, mu2


# ---------------------------------------------------------------------------
# Weight-function matrices
# ---------------------------------------------------------------------------

def _numpy_log_minus(eta, side):
    log = np.log(eta)
    if side < 0:
        on_axis = (eta.imag == 0.0) & (eta.real < 0.0)
        log = np.where(on_axis, np.log(np.abs(eta)) - 1j * np.pi, log)
    return log


def numpy_wf_matrices(eta, side, p, c):
    """Evaluate ``Sigma_hat``, ``[U_hat]`` and ``<U_hat>`` on a frequency array.

    Parameters
    ----------
    eta : ndarray of complex, shape (N,)
        Frequencies on the ``side`` half of the plane, nonzero.
    side : int
        +1 for the continuation of ``eta > 0``, -1 for ``eta < 0``.
    p, c : ndarray
        Packed bimaterial constants (see module docstring).

    Returns
    -------
    sig, usym, uskew : ndarray of complex, shape (N, 2, 2)
        Columns are the two singular-traction modes.
    """
    eta = np.asarray(eta, dtype=np.complex128)
    h11, h22, beta, eps, e0, d1, d2, gam = p
    cplus, cminus = c
    h = math.sqrt(h11 * h22)
    r = math.sqrt(h11 / h22)
    log = _numpy_log_minus(eta, side)
    tp = e0 * np.exp(-1j * eps * log) / cplus * (-0.5 - 1j * eps)
    tm = np.exp(1j * eps * log) / (e0 * cminus) * (-0.5 + 1j * eps)
    f = np.exp(0.5 * log) / (1.0 + 4.0 * eps * eps)
    sig = np.empty(eta.shape + (2, 2), dtype=np.complex128)
    sig[:, 0, 0] = f * (tm - tp)
    sig[:, 1, 0] = f * 1j * r * (tp + tm)
    sig[:, 0, 1] = f * -1j * (tp + tm)
    sig[:, 1, 1] = f * r * (tm - tp)

    s = float(side)
    absx = s * eta
    msym = np.array([[r, 1j * beta * s], [-1j * beta * s, 1.0 / r]])
    mskew = np.array([[d1 * r, -1j * gam * s], [1j * gam * s, d2 / r]])
    usym = -(h / absx)[:, None, None] * np.einsum("ik,nkj->nij", msym, sig)
    uskew = -(h / (2.0 * absx))[:, None, None] * np.einsum("ik,nkj->nij", mskew, sig)
    return sig, usym, uskew


@njit(cache=True)
def _log_minus(z, side):
    if side < 0 and z.imag == 0.0 and z.real < 0.0:
        return complex(math.log(-z.real), -math.pi)
    return cmath.log(z)


@njit(cache=True)
def _wf_point(z, side, p, c, out_sig, out_sym, out_skew):
    h11 = p[0]
    h22 = p[1]
    beta = p[2]
    eps = p[3]
    e0 = p[4]
    d1 = p[5]
    d2 = p[6]
    gam = p[7]
    h = math.sqrt(h11 * h22)
    r = math.sqrt(h11 / h22)
    log = _log_minus(z, side)
    tp = e0 * cmath.exp(-1j * eps * log) / c[0] * complex(-0.5, -eps)
    tm = cmath.exp(1j * eps * log) / (e0 * c[1]) * complex(-0.5, eps)
    f = cmath.exp(0.5 * log) / (1.0 + 4.0 * eps * eps)
    s00 = f * (tm - tp)
    s10 = f * 1j * r * (tp + tm)
    s01 = f * -1j * (tp + tm)
    s11 = f * r * (tm - tp)
    out_sig[0, 0] = s00
    out_sig[1, 0] = s10
    out_sig[0, 1] = s01
    out_sig[1, 1] = s11
    sd = float(side)
    ka = -h / (sd * z)
    kb = 0.5 * ka
    ib = 1j * beta * sd
    ig = 1j * gam * sd
    out_sym[0, 0] = ka * (r * s00 + ib * s10)
    out_sym[0, 1] = ka * (r * s01 + ib * s11)
    out_sym[1, 0] = ka * (-ib * s00 + s10 / r)
    out_sym[1, 1] = ka * (-ib * s01 + s11 / r)
    out_skew[0, 0] = kb * (d1 * r * s00 - ig * s10)
    out_skew[0, 1] = kb * (d1 * r * s01 - ig * s11)
    out_skew[1, 0] = kb * (ig * s00 + d2 / r * s10)
    out_skew[1, 1] = kb * (ig * s01 + d2 / r * s11)


@njit(cache=True)
def numba_wf_matrices(eta, side, p, c):
    size = eta.shape[0]
    sig = np.empty((size, 2, 2), dtype=np.complex128)
    usym = np.empty((size, 2, 2), dtype=np.complex128)
    uskew = np.empty((size, 2, 2), dtype=np.complex128)
    for k in range(size):
        _wf_point(eta[k], side, p, c, sig[k], usym[k], uskew[k])
    return sig, usym, uskew


# ---------------------------------------------------------------------------
# Betti integrand
# ---------------------------------------------------------------------------

def numpy_betti_envelope(eta, side, p, c, xs, fmean, fjump):
    """Betti integrand for point forces, split into its two parts.

    Parameters
    ----------
    eta : ndarray of complex, shape (N,)
    side : int
    p, c : ndarray
        Packed bimaterial constants.
    xs : ndarray of float, shape (K,)
        Force positions (negative).
    fmean, fjump : ndarray of complex, shape (K, 2)
        Symmetric and skew-symmetric force amplitudes at each position.

    Returns
    -------
    ndarray of complex, shape (N, 4)
        Columns 0-1: ``[U_hat]^T R <p_hat>``; columns 2-3:
        ``<U_hat>^T R [p_hat]``, with ``R = diag(-1, 1)``.
    """
    eta = np.asarray(eta, dtype=np.complex128)
    _, usym, uskew = numpy_wf_matrices(eta, side, p, c)
    phase = np.exp(1j * np.outer(eta, xs))
    pm = phase @ fmean
    pj = phase @ fjump
    pm[:, 0] = -pm[:, 0]
    pj[:, 0] = -pj[:, 0]
    out = np.empty((eta.shape[0], 4), dtype=np.complex128)
    out[:, 0:2] = np.einsum("nij,ni->nj", usym, pm)
    out[:, 2:4] = np.einsum("nij,ni->nj", uskew, pj)
    return out


@njit(cache=True)
def numba_betti_envelope(eta, side, p, c, xs, fmean, fjump):
    size = eta.shape[0]
    out = np.zeros((size, 4), dtype=np.complex128)
    sig = np.empty((2, 2), dtype=np.complex128)
    usym = np.empty((2, 2), dtype=np.complex128)
    uskew = np.empty((2, 2), dtype=np.complex128)
    for k in range(size):
        z = eta[k]
        _wf_point(z, side, p, c, sig, usym, uskew)
        pm0 = 0j
        pm1 = 0j
        pj0 = 0j
        pj1 = 0j
        for q in range(xs.shape[0]):
            e = cmath.exp(1j * z * xs[q])
            pm0 += fmean[q, 0] * e
            pm1 += fmean[q, 1] * e
            pj0 += fjump[q, 0] * e
            pj1 += fjump[q, 1] * e
        out[k, 0] = -usym[0, 0] * pm0 + usym[1, 0] * pm1
        out[k, 1] = -usym[0, 1] * pm0 + usym[1, 1] * pm1
        out[k, 2] = -uskew[0, 0] * pj0 + uskew[1, 0] * pj1
        out[k, 3] = -uskew[0, 1] * pj0 + uskew[1, 1] * pj1
    return out


def _dispatch(name):
    impl = globals()[("numba_" if USE_NUMBA else "numpy_") + name]
    return impl


def quartic_roots(lam, rho):
    """Batched Stroh eigenvalues on the active backend."""
    lam = np.ascontiguousarray(np.atleast_1d(lam), dtype=np.float64)
    rho = np.ascontiguousarray(np.atleast_1d(rho), dtype=np.float64)
    return _dispatch("quartic_roots")(lam, rho)


def wf_matrices(eta, side, p, c):
    """Weight-function matrices on the active backend."""
    eta = np.ascontiguousarray(np.atleast_1d(eta), dtype=np.complex128)
    return _dispatch("wf_matrices")(eta, int(side), np.asarray(p, np.float64), np.asarray(c, np.complex128))


def betti_envelope(eta, side, p, c, xs, fmean, fjump):
    """Betti integrand on the active backend."""
    eta = np.ascontiguousarray(np.atleast_1d(eta), dtype=np.complex128)
    return _dispatch("betti_envelope")(
        eta,
        int(side),
        np.asarray(p, np.float64),
        np.asarray(c, np.complex128),
        np.ascontiguousarray(xs, dtype=np.float64),
        np.ascontiguousarray(fmean, dtype=np.complex128),
        np.ascontiguousarray(fjump, dtype=np.complex128),
    )
