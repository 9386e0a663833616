"""Complex Gamma function.

Only Gamma(1/2 +- i eps) with small real ``eps`` is required by the library,
so a Lanczos approximation (g = 7, nine coefficients) with the reflection
formula for ``Re z < 1/2`` is sufficient and keeps the dependency surface small.
"""

from __future__ import annotations

import cmath
import math

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def cgamma(z: complex) -> complex:
    """Gamma function of a complex argument.

    Parameters
    ----------
    z : complex
        Argument. Must not be a non-positive integer.

    Returns
    -------
    complex
        Gamma(z), relative accuracy about 1e-15 near the imaginary line
        ``Re z = 1/2``.
    """
    z = complex(z)
    if z.real < 0.5:
        if z.imag == 0.0 and z.real == math.floor(z.real):
            raise ValueError(f"Gamma has a pole at {z.real:g}")
        return cmath.pi / (cmath.sin(cmath.pi * z) * cgamma(1.0 - z))
    z -= 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc


def cplus_cminus(eps: float) -> tuple[complex, complex]:
    """Return the pair ``c+- = (1+i) sqrt(pi) / (2 Gamma(1/2 +- i eps))``."""
    pref = (1.0 + 1.0j) * math.sqrt(math.pi) / 2.0
    return pref / cgamma(0.5 + 1j * eps), pref / cgamma(0.5 - 1j * eps)
