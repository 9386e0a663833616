"""Orthotropic plane-elasticity materials and their Stroh eigenvalues."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import _kernels
from .errors import DefinitenessViolation, DegenerateEigenproblem

DEGENERATE_TOL = _kernels._DEGENERATE_TOL


@dataclass(frozen=True)
class AnisotropyParams:
    """Dimensionless anisotropy measures of an orthotropic material.

    Attributes
    ----------
    lam : float
        ``s11 / s22``.
    rho : float
        ``(2 s12 + s66) / (2 sqrt(s11 s22))``.
    n, m : float
        ``sqrt((1 + rho) / 2)`` and ``sqrt(|1 - rho| / 2)``.
    """

    lam: float
    rho: float
    n: float
    m: float


@dataclass(frozen=True)
class StrohEigenvalues:
    """The two quartic roots in the upper half-plane."""

    mu1: complex
    mu2: complex
    degenerate: bool


@dataclass(frozen=True)
class OrthotropicMaterial:
    """Plane compliance constants of an orthotropic material.

    Instances should be built through :func:`validate_material` or
    :meth:`from_anisotropy`, which enforce positive definiteness.

    Attributes
    ----------
    s11, s12, s22, s66 : float
        Compliance constants in consistent (nondimensional) units.
    name : str
        Free-form identifier.
    strict : bool
        False when the material was accepted under relaxed validation
        (only ``lam > 0``, ``rho > -1``, ``s11, s22 > 0`` enforced).
    """

    s11: float
    s12: float
    s22: float
    s66: float
    name: str = ""
    strict: bool = field(default=True, compare=False)

    @property
    def lam(self) -> float:
        return self.s11 / self.s22

    @property
    def rho(self) -> float:
        return (2.0 * self.s12 + self.s66) / (2.0 * math.sqrt(self.s11 * self.s22))

    @property
    def scale(self) -> float:
        """Geometric mean compliance ``sqrt(s11 s22)``."""
        return math.sqrt(self.s11 * self.s22)

    @property
    def theta(self) -> float:
        """``s12 / sqrt(s11 s22)``."""
        return self.s12 / self.scale

    @property
    def anisotropy(self) -> AnisotropyParams:
        rho = self.rho
        return AnisotropyParams(
            lam=self.lam,
            rho=rho,
            n=math.sqrt((1.0 + rho) / 2.0),
            m=math.sqrt(abs(1.0 - rho) / 2.0),
        )

    @property
    def degenerate(self) -> bool:
        return abs(self.rho - 1.0) < DEGENERATE_TOL

    def stiffness(self) -> tuple[float, float, float, float]:
        """Plane stiffness constants ``(c11, c12, c22, c66)``."""
        det = self.s12**2 - self.s11 * self.s22
        return -self.s22 / det, self.s12 / det, -self.s11 / det, 1.0 / self.s66

    @classmethod
    def from_anisotropy(
        cls,
        lam: float,
        rho: float,
        theta: float,
        scale: float = 1.0,
        name: str = "",
        strict: bool = True,
    ) -> "OrthotropicMaterial":
        """Build a material from ``(lam, rho, theta, sqrt(s11 s22))``.

        ``theta`` is ``s12 / sqrt(s11 s22)``; ``s66`` follows from ``rho``.
        """
        s11 = scale * math.sqrt(lam)
        s22 = scale / math.sqrt(lam)
        s12 = theta * scale
        s66 = 2.0 * rho * scale - 2.0 * s12
        return validate_material(s11, s12, s22, s66, name=name, strict=strict)


def validate_material(
    s11: float,
    s12: float,
    s22: float,
    s66: float,
    name: str = "",
    strict: bool = True,
) -> OrthotropicMaterial:
    """Validate compliance constants and return an :class:`OrthotropicMaterial`.

    Parameters
    ----------
    s11, s12, s22, s66 : float
        Compliance constants; must be finite.
    name : str, optional
        Identifier stored on the material.
    strict : bool, default True
        Enforce full positive definiteness (``s11, s22, s66 > 0`` and
        ``s11 s22 > s12**2``). With ``strict=False`` only the conditions that
        the closed-form pipeline needs are checked: ``s11, s22 > 0`` and
        ``rho > -1``. Some published parameter sets only satisfy the latter.

    Raises
    ------
    DefinitenessViolation
        If a constraint fails.
    """
    values = (s11, s12, s22, s66)
    if not all(math.isfinite(v) for v in values):
        raise DefinitenessViolation(f"compliances must be finite, got {values}")
    if s11 <= 0.0 or s22 <= 0.0:
        raise DefinitenessViolation(f"s11 and s22 must be positive (s11={s11}, s22={s22})")
    rho = (2.0 * s12 + s66) / (2.0 * math.sqrt(s11 * s22))
    if not rho > -1.0:
        raise DefinitenessViolation(f"rho = {rho} must exceed -1")
    if strict:
        if s66 <= 0.0:
            raise DefinitenessViolation(f"s66 must be positive (s66={s66})")
        if s11 * s22 - s12 * s12 <= 0.0:
            raise DefinitenessViolation(
                f"s11*s22 - s12**2 = {s11 * s22 - s12 * s12} must be positive"
            )
    return OrthotropicMaterial(float(s11), float(s12), float(s22), float(s66), name, strict)


def stroh_eigenvalues(material: OrthotropicMaterial) -> StrohEigenvalues:
    """Closed-form roots of ``lam mu^4 + 2 rho sqrt(lam) mu^2 + 1 = 0`` with ``Im mu > 0``.

    Within ``1e-9`` of ``rho = 1`` the repeated-root branch
    ``mu1 = mu2 = i lam**(-1/4)`` is taken.
    """
    mu1, mu2 = _kernels.quartic_roots(material.lam, material.rho)
    return StrohEigenvalues(complex(mu1[0]), complex(mu2[0]), material.degenerate)


def quartic_residual(material: OrthotropicMaterial, mu: complex) -> float:
    """Relative residual of the characteristic quartic at ``mu``."""
    lam, rho = material.lam, material.rho
    terms = (lam * mu**4, 2.0 * rho * math.sqrt(lam) * mu**2, 1.0)
    return abs(sum(terms)) / max(abs(t) for t in terms)


def stroh_matrices_qrt(material: OrthotropicMaterial) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stroh matrices ``Q, R, T`` built from the stiffness constants."""
    c11, c12, c22, c66 = material.stiffness()
    q = np.array([[c11, 0.0], [0.0, c66]])
    r = np.array([[0.0, c12], [c66, 0.0]])
    t = np.array([[c66, 0.0], [0.0, c22]])
    return q, r, t


def _order_pair(a: complex, b: complex) -> tuple[complex, complex]:
    """Larger imaginary part first; near ties go to the positive real part."""
    if abs(a.imag - b.imag) <= 1e-9 * max(abs(a), abs(b)):
        return (a, b) if a.real >= b.real else (b, a)
    return (a, b) if a.imag > b.imag else (b, a)


def qrt_eigensystem(material: OrthotropicMaterial) -> list[tuple[complex, np.ndarray]]:
    """Solve ``(Q + (R + R^T) mu + T mu^2) a = 0`` numerically.

    The quadratic eigenproblem is linearized to a 4x4 generalized problem and
    handed to LAPACK. This is independent of the closed-form root formulas and
    serves as their oracle.

    Returns
    -------
    list of (complex, ndarray)
        The two eigenpairs with ``Im mu > 0``, ordered as in
        :func:`stroh_eigenvalues`. Eigenvectors have unit 2-norm.

    Raises
    ------
    DegenerateEigenproblem
        If ``|rho - 1| < 1e-9``; the exception carries the double root.
    """
    q, r, t = stroh_matrices_qrt(material)
    eye = np.eye(2)
    zero = np.zeros((2, 2))
    lhs = np.block([[zero, eye], [-q, -(r + r.T)]])
    rhs = np.block([[eye, zero], [zero, t]])
    vals, vecs = scipy.linalg.eig(lhs, rhs)
    upper = sorted(range(4), key=lambda k: -vals[k].imag)[:2]
    if material.degenerate:
        mu = complex(np.mean(vals[upper]))
        raise DegenerateEigenproblem(
            f"rho = {material.rho} gives a double root mu = {mu}", (mu, mu)
        )
    first, second = _order_pair(complex(vals[upper[0]]), complex(vals[upper[1]]))
    index = {complex(vals[k]): k for k in upper}
    pairs = []
    for mu in (first, second):
        a = vecs[:2, index[mu]]
        pairs.append((mu, a / np.linalg.norm(a)))
    return pairs
