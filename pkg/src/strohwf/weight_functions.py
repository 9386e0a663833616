"""Singular tractions and symmetric / skew-symmetric weight functions.

Conventions
-----------
* Mode ``j = 1`` and ``j = 2`` correspond to the two independent singular
  solutions (complex amplitude ``C = 1`` and ``C = i``).
* Transforms use ``f_hat(xi) = int f(x) exp(i xi x) dx``.
* Powers of ``xi_-`` take ``arg in (-pi, 0]``; real powers ``x^(i eps)`` use
  the principal real logarithm.
* Space-domain kinds return zero at exactly ``x1 = 0``.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from . import _kernels
from .errors import DomainError, HermiticityViolation
from .stroh import BimaterialSystem


class WFKind(str, Enum):
    SYMMETRIC = "symmetric"
    SKEW = "skew"


def _kind(kind) -> WFKind:
    try:
        return WFKind(kind)
    except ValueError:
        raise DomainError(f"unknown weight-function kind {kind!r}") from None


def _mode(j: int) -> int:
    if j not in (1, 2):
        raise DomainError(f"traction mode must be 1 or 2, got {j}")
    return j - 1


def _nonzero(xi: float) -> float:
    xi = float(xi)
    if xi == 0.0 or not math.isfinite(xi):
        raise DomainError(f"frequency must be finite and nonzero, got {xi}")
    return xi


# ---------------------------------------------------------------------------
# Singular tractions
# ---------------------------------------------------------------------------

def singular_traction_space(system: BimaterialSystem, j: int, x1: float) -> np.ndarray:
    """Real traction vector of the singular solution of mode ``j``.

    For ``x1 < 0`` with ``t = -x1``, mode 1 is
    ``t^(-3/2) / (2 sqrt(2 pi)) (i(t^(ie) - t^(-ie)), r (t^(ie) + t^(-ie)))``
    and mode 2 is ``t^(-3/2) / (2 sqrt(2 pi)) (-(t^(ie) + t^(-ie)), i r (t^(ie) - t^(-ie)))``,
    where ``r = sqrt(H11/H22)``. Zero for ``x1 >= 0``.
    """
    k = _mode(j)
    if x1 >= 0.0:
        return np.zeros(2)
    t = -x1
    phase = system.epsilon * math.log(t)
    cs, sn = math.cos(phase), math.sin(phase)
    pre = t**-1.5 / (2.0 * math.sqrt(2.0 * math.pi))
    r = system.r
    if k == 0:
        return pre * np.array([-2.0 * sn, 2.0 * r * cs])
    return pre * np.array([-2.0 * cs, -2.0 * r * sn])


def sigma_hat_matrix(system: BimaterialSystem, xi) -> np.ndarray:
    """Transforms of both singular tractions, shape ``(N, 2, 2)`` (columns = modes)."""
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    out = np.empty((xi.size, 2, 2), dtype=np.complex128)
    p, c = system.packed
    for side in (1, -1):
        sel = np.nonzero(np.sign(xi) == side)[0]
        if sel.size:
            out[sel] = _kernels.wf_matrices(xi[sel], side, p, c)[0]
    return out


def singular_traction_transform(system: BimaterialSystem, j: int, xi: float) -> np.ndarray:
    """Transform ``Sigma_hat^j(xi)``, analytic in the lower half-plane.

    Raises
    ------
    DomainError
        At ``xi = 0``.
    """
    k = _mode(j)
    xi = _nonzero(xi)
    return sigma_hat_matrix(system, xi)[0, :, k]


# ---------------------------------------------------------------------------
# Fourier-space weight functions
# ---------------------------------------------------------------------------

def _check_hermitian(y: np.ndarray, label: str, tol: float = 1e-10) -> None:
    y = np.asarray(y, dtype=np.complex128)
    if y.shape != (2, 2):
        raise HermiticityViolation(f"{label} must be 2x2, got shape {y.shape}")
    scale = max(1.0, float(np.max(np.abs(y))))
    gap = float(np.max(np.abs(y - y.conj().T)))
    if gap > tol * scale:
        raise HermiticityViolation(f"{label} is not Hermitian (deviation {gap:.3e})")


def general_wf_transforms(Y1, Y2, sigma_hat, xi: float) -> tuple[np.ndarray, np.ndarray]:
    """Weight-function transforms for an arbitrary anisotropic pair.

    Parameters
    ----------
    Y1, Y2 : array_like, shape (2, 2)
        Hermitian admittance matrices of the upper and lower material.
    sigma_hat : array_like, shape (2,) or (2, k)
        Singular-traction transform(s).
    xi : float
        Nonzero frequency.

    Returns
    -------
    sym, skew : ndarray
        ``[U_hat] = (1/|xi|){i sgn(xi) Im(Y1 - Y2) - Re(Y1 + Y2)} Sigma_hat`` and
        ``<U_hat> = (1/2|xi|){i sgn(xi) Im(Y1 + Y2) - Re(Y1 - Y2)} Sigma_hat``.
    """
    xi = _nonzero(xi)
    _check_hermitian(Y1, "Y1")
    _check_hermitian(Y2, "Y2")
    y1 = np.asarray(Y1, dtype=np.complex128)
    y2 = np.asarray(Y2, dtype=np.complex128)
    sig = np.asarray(sigma_hat, dtype=np.complex128)
    s = math.copysign(1.0, xi)
    ax = abs(xi)
    msym = (1j * s * (y1 - y2).imag - (y1 + y2).real) / ax
    mskew = (1j * s * (y1 + y2).imag - (y1 - y2).real) / (2.0 * ax)
    return msym @ sig, mskew @ sig


def wf_transform_matrix(system: BimaterialSystem, kind, xi, method: str = "direct") -> np.ndarray:
    """Closed-form weight-function transforms, shape ``(N, 2, 2)``.

    Parameters
    ----------
    kind : {"symmetric", "skew"}
    xi : float or array_like
        Nonzero real frequencies.
    method : {"direct", "decomposition"}
        For the skew kind, ``"decomposition"`` evaluates
        ``A [U_hat] + (i/xi) B Sigma_hat`` instead of the direct product; it is
        an independent route used for cross-checking.
    """
    kind = _kind(kind)
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    if np.any(xi == 0.0) or not np.all(np.isfinite(xi)):
        raise DomainError("frequencies must be finite and nonzero")
    out = np.empty((xi.size, 2, 2), dtype=np.complex128)
    p, c = system.packed
    for side in (1, -1):
        sel = np.nonzero(np.sign(xi) == side)[0]
        if not sel.size:
            continue
        sig, usym, uskew = _kernels.wf_matrices(xi[sel], side, p, c)
        if kind is WFKind.SYMMETRIC:
            out[sel] = usym
        elif method == "direct":
            out[sel] = uskew
        elif method == "decomposition":
            a, b = system.calA, system.calB
            out[sel] = a @ usym + (1j / xi[sel])[:, None, None] * (b @ sig)
        else:
            raise DomainError(f"unknown method {method!r}")
    return out


def wf_transform(system: BimaterialSystem, kind, j: int, xi: float, method: str = "direct") -> np.ndarray:
    """Column ``j`` of :func:`wf_transform_matrix` at a single frequency."""
    k = _mode(j)
    xi = _nonzero(xi)
    return wf_transform_matrix(system, kind, xi, method)[0, :, k]


# ---------------------------------------------------------------------------
# Physical-space weight functions
# ---------------------------------------------------------------------------

def _wf_space_complex(system: BimaterialSystem, kind, j: int, x1: float) -> np.ndarray:
    """Complex-valued space-domain weight function before taking the real part.

    The two oscillating terms are complex conjugates of each other, so the
    imaginary part of the result is round-off only.
    """
    kind = _kind(kind)
    k = _mode(j)
    if x1 == 0.0:
        return np.zeros(2, dtype=np.complex128)
    eps, beta = system.epsilon, system.beta
    h11, h = system.H11, system.h
    cc = system.cplus * system.cminus
    norm = math.sqrt(2.0 * math.pi) * (1.0 + 4.0 * eps * eps)

    if x1 > 0.0:
        if kind is WFKind.SKEW:
            sym = _wf_space_complex(system, WFKind.SYMMETRIC, j, x1)
            return system.calA @ sym
        pw = complex(math.cos(eps * math.log(x1)), math.sin(eps * math.log(x1)))
        lo = -2.0 * (-0.5 + 1j * eps) * pw.conjugate()
        hi = 2.0 * (-0.5 - 1j * eps) * pw
        pre = x1**-0.5 / (2.0 * cc * norm)
        if k == 0:
            return pre * np.array([h11 * (lo + hi), 1j * h * (lo - hi)])
        return pre * np.array([-1j * h11 * (lo - hi), h * (lo + hi)])

    if kind is WFKind.SYMMETRIC:
        return np.zeros(2, dtype=np.complex128)
    t = -x1
    pw = complex(math.cos(eps * math.log(t)), math.sin(eps * math.log(t)))
    e0sq = system.e0**2
    lo = 2.0 / (1.0 + beta) * (-0.5 + 1j * eps) * pw.conjugate() / e0sq
    hi = 2.0 / (1.0 - beta) * (-0.5 - 1j * eps) * e0sq * pw
    pre = t**-0.5 / (4.0 * cc * norm)
    g1 = system.gamma + beta * system.delta1
    g2 = system.gamma + beta * system.delta2
    if k == 0:
        return pre * np.array([-1j * h11 * g1 * (lo + hi), h * g2 * (lo - hi)])
    return pre * np.array([-h11 * g1 * (lo - hi), -1j * h * g2 * (lo + hi)])


def wf_space(system: BimaterialSystem, kind, j: int, x1: float) -> np.ndarray:
    """Physical-space weight function, column ``j``.

    The symmetric kind ``[U]`` vanishes for ``x1 < 0``; for ``x1 > 0`` it is
    ``x^(-1/2) / (2 c+ c- sqrt(2 pi)(1 + 4 eps^2))`` times a combination of
    ``(-1/2 -+ i eps) x^(+-i eps)``. The skew kind equals ``A [U]`` for
    ``x1 > 0`` and for ``x1 < 0`` is built from ``B`` with the two oscillating
    terms weighted by ``2/(1 + beta)`` and ``2/(1 - beta)``. These weights make
    the expressions the exact inverse transforms of :func:`wf_transform`.
    """
    return _wf_space_complex(system, kind, j, float(x1)).real
