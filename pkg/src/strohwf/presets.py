"""Reference aluminium/boron pair used for the three-point sweeps.

The pair is specified through anisotropy parameters: aluminium with
``lam = 1``, ``rho = 0.74``, ``theta = 1/2``; boron with ``lam = 1/14.3``,
``rho = 4.91``, ``theta = 2`` and ``sqrt(s11 s22)`` 6.4 times larger. The boron
entry has ``s12**2 > s11 s22`` and is therefore only accepted by the relaxed
validation path.
"""

from __future__ import annotations

from .materials import OrthotropicMaterial

SWEEP_BETAS = (-0.5, -0.25, 0.0, 0.25, 0.5)
SWEEP_GRID = (0.0, 0.95, 20)


def reference_aluminium() -> OrthotropicMaterial:
    return OrthotropicMaterial.from_anisotropy(1.0, 0.74, 0.5, 1.0, name="aluminium-ref")


def reference_boron() -> OrthotropicMaterial:
    return OrthotropicMaterial.from_anisotropy(
        1.0 / 14.3, 4.91, 2.0, 6.4, name="boron-ref", strict=False
    )


def reference_pair() -> tuple[OrthotropicMaterial, OrthotropicMaterial]:
    """Upper (aluminium) and lower (boron) reference materials."""
    return reference_aluminium(), reference_boron()


PRESETS = {
    "aluminium-ref": reference_aluminium,
    "boron-ref": reference_boron,
}
