"""
torus_bundles package

Tools for classifying symplectic torus bundles over surfaces by their
characteristic class in H²(B; Z²_ρ), deciding whether the total space
carries a closed 2-form restricting to the fibre forms, and checking the
Huebschmann-construction identity ψ(f) = −F on sampled cocycle values.
"""

from .exact_algebra import (
    IntMatrix,
    FgAbelianGroup,
    smith_normal_form,
    cokernel,
    solve_linear_rational,
    is_torsion,
)
from .surfaces import (
    SurfaceSpec,
    Representation,
    presentation_of,
    validate_representation,
    fox_derivatives,
)
from .cohomology import (
    CohClass,
    CohContext,
    coinvariants,
    cohomology_context,
    class_of_cocycle,
    rational_image,
    cyclic_cohomology_z2,
)
from .classification import (
    Branch,
    Verdict,
    classify,
    decide_symplectic,
    enumerate_admissible,
    principal_bundle_verdict,
)
from .catalog import REPRESENTATIONS
from .huebschmann import (
    ExtensionModel,
    synthesize_extension,
    lift_representation,
    huebschmann_F,
    verify_huebschmann_identity,
)

__all__ = [
    "IntMatrix",
    "FgAbelianGroup",
    "smith_normal_form",
    "cokernel",
    "solve_linear_rational",
    "is_torsion",
    "SurfaceSpec",
    "Representation",
    "presentation_of",
    "validate_representation",
    "fox_derivatives",
    "CohClass",
    "CohContext",
    "coinvariants",
    "cohomology_context",
    "class_of_cocycle",
    "rational_image",
    "cyclic_cohomology_z2",
    "Branch",
    "Verdict",
    "classify",
    "decide_symplectic",
    "enumerate_admissible",
    "principal_bundle_verdict",
    "REPRESENTATIONS",
    "ExtensionModel",
    "synthesize_extension",
    "lift_representation",
    "huebschmann_F",
    "verify_huebschmann_identity",
]
