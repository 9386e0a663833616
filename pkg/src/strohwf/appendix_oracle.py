"""Independent check of the weight-function transforms via half-plane ODEs.

Each half-plane is solved directly: after Fourier transforming in ``x1`` the
Airy stress function obeys ``s11 F'''' - (2 s12 + s66) xi^2 F'' + s22 xi^4 F = 0``.
Its decaying modes ``exp(kappa x2)`` have ``kappa = +-|xi| nu`` with ``nu`` the
roots of ``s11 nu^4 - (2 s12 + s66) nu^2 + s22 = 0`` with positive real part.
The boundary tractions fix the two mode amplitudes and the strain-displacement
relations give the displacement traces.

Nothing here uses Stroh matrices or admittance matrices, so agreement with
:mod:`strohwf.weight_functions` is a genuine cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMaterial, DomainError, SingularCoefficientSystem
from .materials import DEGENERATE_TOL, OrthotropicMaterial

UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True)
class HalfPlaneSolution:
    """Mode amplitudes of one half-plane for given boundary tractions."""

    material: OrthotropicMaterial
    side: str
    nu1: complex
    nu2: complex
    A1: complex | np.ndarray
    A2: complex | np.ndarray
    xi: float | np.ndarray


def ode_eigenvalues(material: OrthotropicMaterial) -> tuple[complex, complex]:
    """Roots of ``lam nu^4 - 2 rho sqrt(lam) nu^2 + 1 = 0`` with ``Re nu > 0``.

    For ``rho > 1`` both roots are real, ``lam^(-1/4)(n +- m)``; for
    ``-1 < rho < 1`` they are ``lam^(-1/4)(n +- i m)``.

    Raises
    ------
    DegenerateMaterial
        If ``|rho - 1| < 1e-9`` (repeated root).
    """
    lam, rho = material.lam, material.rho
    if abs(rho - 1.0) < DEGENERATE_TOL:
        raise DegenerateMaterial(f"rho = {rho} gives a repeated root; the ODE oracle needs distinct roots")
    n = math.sqrt((1.0 + rho) / 2.0)
    m = math.sqrt(abs(1.0 - rho) / 2.0)
    q = lam**-0.25
    if rho > 1.0:
        return complex(q * (n + m)), complex(q * (n - m))
    return complex(q * n, q * m), complex(q * n, -q * m)


def _check_xi(xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=np.float64)
    if np.any(xi == 0.0) or not np.all(np.isfinite(xi)):
        raise DomainError("frequency must be finite and nonzero")
    return xi


def solve_halfplane(material: OrthotropicMaterial, side: str, sigma_hat, xi) -> HalfPlaneSolution:
    """Amplitudes ``A1, A2`` matching the boundary tractions ``sigma_hat``.

    ``sigma_hat = (sigma_21, sigma_22)`` at the interface (last axis of length
    2; leading axes broadcast against ``xi``). The conditions are
    ``A1 + A2 = sigma_22`` and ``-i s (nu1 A1 + nu2 A2) = sigma_21`` with
    ``s = sign(xi)`` below the interface and ``-sign(xi)`` above it.
    """
    if side not in (UPPER, LOWER):
        raise DomainError(f"side must be {UPPER!r} or {LOWER!r}, got {side!r}")
    xi = _check_xi(xi)
    nu1, nu2 = ode_eigenvalues(material)
    if abs(nu1 - nu2) <= 1e-12 * abs(nu1):
        raise SingularCoefficientSystem(f"nu1 = nu2 = {nu1}")
    sig = np.asarray(sigma_hat, dtype=np.complex128)
    s = np.sign(xi) * (1.0 if side == LOWER else -1.0)
    # From the two conditions: nu1 A1 + nu2 A2 = i s sigma_21.
    rhs = 1j * s * sig[..., 0]
    a1 = (rhs - nu2 * sig[..., 1]) / (nu1 - nu2)
    a2 = (nu1 * sig[..., 1] - rhs) / (nu1 - nu2)
    return HalfPlaneSolution(material, side, nu1, nu2, a1, a2, xi)


def halfplane_displacement_transform(
    material: OrthotropicMaterial,
    side: str,
    sigma_hat,
    xi,
    x2: float = 0.0,
) -> np.ndarray:
    """Transformed displacement ``(u1_hat, u2_hat)`` at depth ``x2``.

    Mode ``j`` varies as ``exp(kappa_j x2)`` with ``kappa_j = |xi| nu_j`` in the
    lower half-plane and ``-|xi| nu_j`` in the upper one. The displacements
    follow from the compliance relations:
    ``u1_hat = sum (i/xi)(s12 - s11 nu^2) A exp(kappa x2)`` and
    ``u2_hat = sum (s22 - s12 nu^2) A exp(kappa x2) / kappa``.

    ``xi`` may be an array; ``sigma_hat`` then has shape ``xi.shape + (2,)``.

    Raises
    ------
    DomainError
        If ``x2`` lies outside the requested half-plane or ``xi = 0``.
    """
    x2 = float(x2)
    if (side == LOWER and x2 > 0.0) or (side == UPPER and x2 < 0.0):
        raise DomainError(f"x2 = {x2} is outside the {side} half-plane")
    sol = solve_halfplane(material, side, sigma_hat, xi)
    xi = sol.xi
    s11, s12, s22 = material.s11, material.s12, material.s22
    sgn = 1.0 if side == LOWER else -1.0
    u1 = 0.0j
    u2 = 0.0j
    for nu, amp in ((sol.nu1, sol.A1), (sol.nu2, sol.A2)):
        kappa = sgn * np.abs(xi) * nu
        decay = np.exp(kappa * x2)
        u1 = u1 + (1j / xi) * (s12 - s11 * nu * nu) * amp * decay
        u2 = u2 + (s22 - s12 * nu * nu) * amp * decay / kappa
    return np.stack([u1, u2], axis=-1).astype(np.complex128)


def default_xi_samples(count: int = 25) -> np.ndarray:
    """Logarithmic grid over ``|xi| in [1e-2, 1e2]``, both signs."""
    mags = np.logspace(-2.0, 2.0, count)
    return np.concatenate([-mags[::-1], mags])


def ode_weight_functions(mat1: OrthotropicMaterial, mat2: OrthotropicMaterial, sigma_hat, xi):
    """Jump and average of the ODE displacement traces for given tractions.

    Returns ``(Uplus - Uminus, (Uplus + Uminus)/2)``.
    """
    up = halfplane_displacement_transform(mat1, UPPER, sigma_hat, xi, 0.0)
    dn = halfplane_displacement_transform(mat2, LOWER, sigma_hat, xi, 0.0)
    return up - dn, 0.5 * (up + dn)


def equivalence_report(
    mat1: OrthotropicMaterial,
    mat2: OrthotropicMaterial,
    xi_samples=None,
) -> float:
    """Largest relative gap between closed-form and ODE weight-function transforms.

    For every frequency and both traction modes the singular traction transform
    from :mod:`strohwf.weight_functions` is fed to both routes. The gap for a
    vector is ``max|closed - ode| / max|closed|``.

    Raises
    ------
    DegenerateMaterial
        If either material has a repeated root.
    """
    # Imported here: only this comparison touches the Stroh-based path.
    from .stroh import bimaterial_system
    from .weight_functions import sigma_hat_matrix, wf_transform_matrix

    ode_eigenvalues(mat1)
    ode_eigenvalues(mat2)
    system = bimaterial_system(mat1, mat2)
    xi = default_xi_samples() if xi_samples is None else np.asarray(xi_samples, dtype=np.float64)
    sig = sigma_hat_matrix(system, xi)
    closed = {
        "symmetric": wf_transform_matrix(system, "symmetric", xi),
        "skew": wf_transform_matrix(system, "skew", xi),
    }
    worst = 0.0
    for j in range(2):
        jump, avg = ode_weight_functions(mat1, mat2, sig[:, :, j], xi)
        for ref, ode in ((closed["symmetric"][:, :, j], jump), (closed["skew"][:, :, j], avg)):
            scale = np.max(np.abs(ref), axis=1)
            gap = np.max(np.abs(ref - ode), axis=1)
            rel = np.where(scale > 0.0, gap / np.where(scale > 0.0, scale, 1.0), gap)
            worst = max(worst, float(rel.max()))
    return worst
