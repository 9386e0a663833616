"""Weight functions and complex stress intensity factors for interfacial
cracks between dissimilar orthotropic materials."""

from ._kernels import BACKEND
from .appendix_oracle import (
    HalfPlaneSolution,
    equivalence_report,
    halfplane_displacement_transform,
    ode_eigenvalues,
)
from .errors import (
    DefinitenessViolation,
    DegenerateEigenproblem,
    DegenerateMaterial,
    DomainError,
    HermiticityViolation,
    NormalizerBranchFailure,
    OscillationOutOfRange,
    QuadratureNonConvergence,
    SingularCoefficientSystem,
    SingularM1,
    StrohInconsistency,
    StrohWFError,
    ValidationError,
)
from .materials import (
    AnisotropyParams,
    OrthotropicMaterial,
    StrohEigenvalues,
    qrt_eigensystem,
    stroh_eigenvalues,
    validate_material,
)
from .presets import reference_pair
from .sif import (
    PointForceLoading,
    SifResult,
    SweepRow,
    load_transforms,
    ratio_sweep,
    sif_betti,
    sif_three_point_closed,
)
from .special import cgamma
from .stroh import (
    BimaterialSystem,
    ComplexSIF,
    StrohData,
    bimaterial_system,
    displacement_jump_ahead,
    m1_matrix,
    stroh_data,
    traction_ahead,
)
from .weight_functions import (
    WFKind,
    general_wf_transforms,
    singular_traction_space,
    singular_traction_transform,
    wf_space,
    wf_transform,
    wf_transform_matrix,
)

__version__ = "0.1.0"
