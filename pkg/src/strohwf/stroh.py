"""Stroh matrices of one material and the bimaterial interface objects."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DomainError,
    NormalizerBranchFailure,
    OscillationOutOfRange,
    SingularM1,
    StrohInconsistency,
)
from .materials import OrthotropicMaterial, stroh_eigenvalues
from .special import cplus_cminus

Y_AGREEMENT_TOL = 1e-8


@dataclass(frozen=True)
class StrohData:
    """Stroh eigenvalues, matrices and surface admittance of one material.

    Attributes
    ----------
    mu1, mu2 : complex
        Roots with positive imaginary part.
    A, B : ndarray or None
        Normalized Stroh matrices (columns per root). ``None`` for the
        repeated-root material, where the two columns coincide.
    Y : ndarray
        Hermitian admittance ``i A B^-1`` from its closed form.
    """

    material: OrthotropicMaterial
    mu1: complex
    mu2: complex
    A: np.ndarray | None
    B: np.ndarray | None
    Y: np.ndarray

    def y_from_ab(self) -> np.ndarray:
        """Admittance computed as ``i A B^-1``."""
        if self.A is None or self.B is None:
            raise NormalizerBranchFailure("A and B are unavailable for a repeated root")
        return 1j * self.A @ np.linalg.inv(self.B)


def y_closed_form(material: OrthotropicMaterial) -> np.ndarray:
    """Closed-form admittance of an orthotropic material.

    ``Y = [[2 n lam^(1/4) S, i G], [-i G, 2 n lam^(-1/4) S]]`` with
    ``S = sqrt(s11 s22)`` and ``G = S + s12``.
    """
    ap = material.anisotropy
    s = material.scale
    g = s + material.s12
    q = ap.lam**0.25
    return np.array(
        [[2.0 * ap.n * q * s, 1j * g], [-1j * g, 2.0 * ap.n * s / q]],
        dtype=np.complex128,
    )


def stroh_ab(material: OrthotropicMaterial, mu1: complex, mu2: complex) -> tuple[np.ndarray, np.ndarray]:
    """Normalized Stroh matrices A and B.

    Column ``j`` is ``a_j = (s11 mu^2 + s12, s12 mu + s22/mu) / N_j`` and
    ``b_j = (-mu, 1) / N_j`` with ``N_j = sqrt((2/mu_j)(s22 - s11 mu_j^4))``.
    """
    s11, s12, s22 = material.s11, material.s12, material.s22
    a_cols = []
    b_cols = []
    for mu in (mu1, mu2):
        norm = cmath.sqrt((2.0 / mu) * (s22 - s11 * mu**4))
        if norm == 0.0 or not cmath.isfinite(norm):
            raise NormalizerBranchFailure(f"normalizer vanishes at mu = {mu}")
        a_cols.append(np.array([s11 * mu**2 + s12, s12 * mu + s22 / mu]) / norm)
        b_cols.append(np.array([-mu, 1.0]) / norm)
    return np.column_stack(a_cols), np.column_stack(b_cols)


def stroh_data(material: OrthotropicMaterial) -> StrohData:
    """Build :class:`StrohData` and cross-check the two admittance routes.

    Raises
    ------
    NormalizerBranchFailure
        If a column normalizer vanishes for a non-degenerate material.
    StrohInconsistency
        If ``i A B^-1`` and the closed form differ by more than ``1e-8``
        relative to ``max|Y|``.
    """
    eig = stroh_eigenvalues(material)
    y = y_closed_form(material)
    if eig.degenerate:
        return StrohData(material, eig.mu1, eig.mu2, None, None, y)
    a, b = stroh_ab(material, eig.mu1, eig.mu2)
    data = StrohData(material, eig.mu1, eig.mu2, a, b, y)
    gap = np.max(np.abs(data.y_from_ab() - y)) / np.max(np.abs(y))
    if not gap < Y_AGREEMENT_TOL:
        raise StrohInconsistency(f"i A B^-1 deviates from the closed form by {gap:.3e}")
    return data


@dataclass(frozen=True)
class ComplexSIF:
    """Complex stress intensity factor split into symmetric and skew parts."""

    KS: complex
    KA: complex

    @property
    def K(self) -> complex:
        return self.KS + self.KA

    def scaled(self, factor: float) -> "ComplexSIF":
        return ComplexSIF(self.KS * factor, self.KA * factor)


@dataclass(frozen=True)
class BimaterialSystem:
    """Interface constants for an upper material 1 bonded to a lower material 2.

    Use :func:`bimaterial_system` to construct. ``beta`` may be overridden
    (see :meth:`with_beta`) while ``H11``, ``H22``, ``delta1``, ``delta2`` and
    ``gamma`` keep their material values; ``beta_material`` always records the
    value implied by the two materials.
    """

    mat1: OrthotropicMaterial
    mat2: OrthotropicMaterial
    Y1: np.ndarray
    Y2: np.ndarray
    H11: float
    H22: float
    beta: float
    beta_material: float
    epsilon: float
    delta1: float
    delta2: float
    gamma: float
    Phi: float
    Theta1: float
    Theta2: float
    e0: float
    cplus: complex
    cminus: complex

    @property
    def h(self) -> float:
        """``sqrt(H11 H22)``."""
        return math.sqrt(self.H11 * self.H22)

    @property
    def r(self) -> float:
        """``sqrt(H11 / H22)``."""
        return math.sqrt(self.H11 / self.H22)

    @property
    def H(self) -> np.ndarray:
        off = -1j * self.beta * self.h
        return np.array([[self.H11, off], [np.conj(off), self.H22]], dtype=np.complex128)

    @property
    def w(self) -> np.ndarray:
        return np.array([-0.5j, 0.5 * self.r], dtype=np.complex128)

    @property
    def calA(self) -> np.ndarray:
        return 0.5 * np.diag([self.delta1, self.delta2])

    @property
    def calB(self) -> np.ndarray:
        b, g = self.beta, self.gamma
        return 0.5 * self.h * np.array(
            [[0.0, g + b * self.delta1], [-(g + b * self.delta2), 0.0]]
        )

    @property
    def M1(self) -> np.ndarray:
        return m1_matrix(self)

    @property
    def packed(self) -> tuple[np.ndarray, np.ndarray]:
        """Constants packed for the numerical kernels."""
        p = np.array(
            [self.H11, self.H22, self.beta, self.epsilon, self.e0,
             self.delta1, self.delta2, self.gamma],
            dtype=np.float64,
        )
        c = np.array([self.cplus, self.cminus], dtype=np.complex128)
        return p, c

    def with_beta(self, beta: float) -> "BimaterialSystem":
        """Copy with ``beta`` (and the quantities derived from it) replaced."""
        eps, e0, cp, cm = _oscillation_constants(beta)
        return replace(self, beta=float(beta), epsilon=eps, e0=e0, cplus=cp, cminus=cm)

    def swapped(self) -> "BimaterialSystem":
        """System with the two materials exchanged."""
        return bimaterial_system(self.mat2, self.mat1)


def oscillation_index(beta: float) -> float:
    """``eps = ln((1 - beta)/(1 + beta)) / (2 pi)``."""
    if not abs(beta) < 1.0:
        raise OscillationOutOfRange(f"|beta| = {abs(beta)} must be below 1")
    return math.log((1.0 - beta) / (1.0 + beta)) / (2.0 * math.pi)


def _oscillation_constants(beta: float) -> tuple[float, float, complex, complex]:
    eps = oscillation_index(beta)
    cp, cm = cplus_cminus(eps)
    return eps, math.exp(eps * math.pi / 2.0), cp, cm


def bimaterial_system(
    mat1: OrthotropicMaterial,
    mat2: OrthotropicMaterial,
    beta: float | None = None,
) -> BimaterialSystem:
    """Assemble the interface constants of a bimaterial.

    Parameters
    ----------
    mat1, mat2 : OrthotropicMaterial
        Upper and lower material.
    beta : float, optional
        Override for the mismatch parameter ``beta``. Parametric studies
        sweep ``beta`` at fixed ``H11``, ``H22``, ``delta`` and ``gamma``.

    Raises
    ------
    OscillationOutOfRange
        If the resulting ``|beta| >= 1``.
    """
    y1 = stroh_data(mat1).Y
    y2 = stroh_data(mat2).Y
    hmat = y1 + np.conj(y2)
    h11 = float(hmat[0, 0].real)
    h22 = float(hmat[1, 1].real)
    h = math.sqrt(h11 * h22)
    g1 = mat1.scale + mat1.s12
    g2 = mat2.scale + mat2.s12
    beta_mat = (g2 - g1) / h
    if beta is None:
        beta = beta_mat
    eps, e0, cp, cm = _oscillation_constants(beta)
    return BimaterialSystem(
        mat1=mat1,
        mat2=mat2,
        Y1=y1,
        Y2=y2,
        H11=h11,
        H22=h22,
        beta=float(beta),
        beta_material=beta_mat,
        epsilon=eps,
        delta1=float((y1[0, 0].real - y2[0, 0].real) / h11),
        delta2=float((y1[1, 1].real - y2[1, 1].real) / h22),
        gamma=(g1 + g2) / h,
        Phi=mat2.scale / mat1.scale,
        Theta1=mat1.theta,
        Theta2=mat2.theta,
        e0=e0,
        cplus=cp,
        cminus=cm,
    )


def m1_matrix(system: BimaterialSystem) -> np.ndarray:
    """Matrix linking ``(K, conj K)`` to the leading weight-function asymptotics.

    Uses the factor ``1 / (1 + 4 eps^2)``, which the asymptotic extraction
    confirms numerically.

    Raises
    ------
    SingularM1
        If ``|det| < 1e-14 * max|M1|^2``.
    """
    b, eps, e0 = system.beta, system.epsilon, system.e0
    pre = -system.H11 / (4.0 * system.cplus * system.cminus * (1.0 + 4.0 * eps * eps))
    lo = (b - 1.0) * (1.0 - 2j * eps) / e0**2
    hi = e0**2 * (b + 1.0) * (1.0 + 2j * eps)
    m1 = pre * np.array([[-lo, hi], [1j * lo, 1j * hi]], dtype=np.complex128)
    det = np.linalg.det(m1)
    if not abs(det) >= 1e-14 * np.max(np.abs(m1)) ** 2:
        raise SingularM1(f"det M1 = {det}")
    return m1


def _real_power(x: float, eps: float) -> complex:
    t = eps * math.log(x)
    return complex(math.cos(t), math.sin(t))


def traction_ahead(system: BimaterialSystem, K: complex, x1: float) -> np.ndarray:
    """Interface traction ``(sigma_21, sigma_22)`` ahead of the tip.

    ``tau = Re(K x1^(i eps) w) / sqrt(2 pi x1)``. The weight-function and
    Betti machinery normalize ``K`` through the expansion
    ``tau = x^(-1/2) T K / (2 sqrt(2 pi))`` with ``T = 2 (w x^(i eps), conj(...))``,
    which gives the same traction as ``2 Re(K x^(i eps) w) / sqrt(2 pi x)``;
    this function keeps the single-``Re`` form, so a ``K`` from
    :mod:`strohwf.sif` produces half of the physical traction here.

    Raises
    ------
    DomainError
        If ``x1 <= 0``.
    """
    if not x1 > 0.0:
        raise DomainError(f"traction ahead of the tip needs x1 > 0, got {x1}")
    z = K * _real_power(x1, system.epsilon) * system.w
    return z.real / math.sqrt(2.0 * math.pi * x1)


def displacement_jump_ahead(system: BimaterialSystem, K: complex, x1: float) -> np.ndarray:
    """Crack-opening displacement ``[u]`` behind the tip (``x1 < 0``).

    ``[u] = sqrt(2 (-x1) / pi) (H + conj H) / cosh(pi eps)
    Re(K (-x1)^(i eps) w / (1 + 2 i eps))``. The same factor-of-two remark as
    in :func:`traction_ahead` applies.

    Raises
    ------
    DomainError
        If ``x1 >= 0``.
    """
    if not x1 < 0.0:
        raise DomainError(f"crack-face jump needs x1 < 0, got {x1}")
    t = -x1
    hsum = (system.H + np.conj(system.H)).real
    inner = (K * _real_power(t, system.epsilon) * system.w / (1.0 + 2j * system.epsilon)).real
    return math.sqrt(2.0 * t / math.pi) * hsum @ inner / math.cosh(math.pi * system.epsilon)
