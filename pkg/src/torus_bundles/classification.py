# classification.py
#
# Decision layer. Each branch mirrors one existence criterion for a closed
# 2-form on the total space restricting to the fibre forms:
#
#   OpenSurface                   always (the bundle has a section)
#   Sphere-TrivialityTest         iff the class is zero
#   RP2-TrivialRho                always
#   RP2-NontrivialRho             iff the class is zero
#   ClosedAspherical-TorsionTest  iff the class has finite order

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

from .cohomology import (
    CohClass,
    check_class_context,
    cohomology_context,
)
from .errors import InfiniteEnumeration, NontrivialRho
from .exact_algebra import FgAbelianGroup, is_torsion
from .surfaces import Representation, SurfaceKind, SurfaceSpec

logger = logging.getLogger(__name__)


class Branch(str, Enum):
    OPEN_SURFACE = "OpenSurface"
    CLOSED_ASPHERICAL = "ClosedAspherical-TorsionTest"
    SPHERE = "Sphere-TrivialityTest"
    RP2_TRIVIAL = "RP2-TrivialRho"
    RP2_NONTRIVIAL = "RP2-NontrivialRho"


@dataclass(frozen=True)
class Verdict:
    admits: bool
    branch: Branch
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"admits": self.admits, "branch": self.branch.value, "detail": self.detail}


def branch_for(surface: SurfaceSpec, rho: Representation) -> Branch:
    if surface.kind is SurfaceKind.OPEN:
        return Branch.OPEN_SURFACE
    if surface.is_sphere:
        return Branch.SPHERE
    if surface.is_projective_plane:
        return Branch.RP2_TRIVIAL if rho.is_trivial else Branch.RP2_NONTRIVIAL
    return Branch.CLOSED_ASPHERICAL


def classify(surface: SurfaceSpec, rho: Representation) -> FgAbelianGroup:
    """H²(B; Z²_ρ); its elements index the bundles inducing ρ."""
    return cohomology_context(surface, rho).h2


def _torsion_detail(c: CohClass) -> dict:
    h2 = c.context.h2
    if is_torsion(h2, c.coords):
        return {"torsion": True, "order": h2.element_order(c.coords)}
    for position, (v, d) in enumerate(zip(c.coords, h2.invariant_factors)):
        if d == 0 and v != 0:
            return {"torsion": False, "witness": {"position": position, "value": v}}
    raise AssertionError("non-torsion class without a free coordinate")


def decide_symplectic(surface: SurfaceSpec, rho: Representation, c: CohClass) -> Verdict:
    check_class_context(surface, rho, c)
    branch = branch_for(surface, rho)
    detail = _torsion_detail(c)

    if branch in (Branch.OPEN_SURFACE, Branch.RP2_TRIVIAL):
        admits = True
    elif branch in (Branch.SPHERE, Branch.RP2_NONTRIVIAL):
        admits = c.is_zero
    else:
        admits = detail["torsion"]
        if surface.kind is SurfaceKind.NONORIENTABLE_CLOSED:
            detail["least_exercised_branch"] = True

    logger.debug("decided %s on %s: admits=%s", c.coords, surface.label(), admits)
    return Verdict(admits, branch, detail)


def enumerate_admissible(surface: SurfaceSpec, rho: Representation) -> list[CohClass]:
    """
    Every class whose total space admits the form: {0} for the triviality
    branches and open surfaces, all of H² for RP² with trivial ρ, and the
    torsion subgroup otherwise.
    """
    context = cohomology_context(surface, rho)
    branch = branch_for(surface, rho)
    h2 = context.h2

    if branch in (Branch.OPEN_SURFACE, Branch.SPHERE, Branch.RP2_NONTRIVIAL):
        return [context.zero_class()]
    if branch is Branch.RP2_TRIVIAL and not h2.is_finite():
        raise InfiniteEnumeration(f"every class of the infinite group {h2.describe()} admits")

    classes = [context.class_from_coords(coords) for coords in h2.torsion_elements()]
    logger.debug("%d admissible classes on %s", len(classes), surface.label())
    return classes


def principal_bundle_verdict(surface: SurfaceSpec, c: CohClass) -> Verdict:
    """
    Principal T²-bundles induce the trivial ρ. Such a bundle fails to admit
    the form iff the base is closed and orientable and the bundle is
    nontrivial.

    Specialized to a closed symplectic 4-manifold E with a free T²-action
    whose orbits are symplectic: E/T² is closed and orientable, so the
    orbit bundle must be the trivial one and E ≅ T² × E/T² equivariantly.
    """
    rho = c.context.rho
    if not rho.is_trivial:
        raise NontrivialRho("principal bundles induce the trivial representation")
    check_class_context(surface, rho, c)

    fails = surface.kind is SurfaceKind.ORIENTABLE_CLOSED and not c.is_zero
    return Verdict(
        admits=not fails,
        branch=branch_for(surface, rho),
        detail={"principal": True, "class_is_zero": c.is_zero},
    )
