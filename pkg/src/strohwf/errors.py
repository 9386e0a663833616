"""Exception hierarchy for strohwf.

Every error raised by the library derives from :class:`StrohWFError`, so the
CLI can map validation failures to a single exit code.
"""

from __future__ import annotations


class StrohWFError(Exception):
    """Base class for all library errors."""


class ValidationError(StrohWFError, ValueError):
    """Input data violates a documented precondition."""


class DefinitenessViolation(ValidationError):
    """Compliance constants do not give a positive-definite strain energy."""


class DomainError(ValidationError):
    """A coordinate or frequency lies outside the domain of a formula."""


class HermiticityViolation(ValidationError):
    """A surface admittance matrix is not Hermitian within tolerance."""


class OscillationOutOfRange(ValidationError):
    """The bimaterial parameter beta satisfies ``|beta| >= 1``."""


class DegenerateMaterial(ValidationError):
    """The ODE oracle refuses materials with a repeated characteristic root."""


class DegenerateEigenproblem(StrohWFError):
    """The quadratic eigenproblem has a double root (rho = 1).

    Attributes
    ----------
    eigenvalues : tuple of complex
        The numerically computed root, repeated twice.
    """

    def __init__(self, message: str, eigenvalues: tuple[complex, complex]):
        super().__init__(message)
        self.eigenvalues = eigenvalues


class NormalizerBranchFailure(StrohWFError):
    """A column normalizer of the Stroh matrices A, B vanished."""


class StrohInconsistency(StrohWFError):
    """The two routes to the admittance matrix Y disagree."""


class SingularM1(StrohWFError):
    """The matrix linking K to the weight-function asymptotics is singular."""


class SingularCoefficientSystem(StrohWFError):
    """The half-plane boundary system for the ODE amplitudes is singular."""


class QuadratureNonConvergence(StrohWFError):
    """The Betti integral did not reach its tolerance within the budget."""
