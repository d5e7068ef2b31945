import pytest

from torus_bundles.catalog import RP2, SPHERE, TORUS, antipodal, kodaira_thurston, mn_family
from torus_bundles.classification import (
    Branch,
    classify,
    decide_symplectic,
    enumerate_admissible,
    principal_bundle_verdict,
)
from torus_bundles.cohomology import cohomology_context
from torus_bundles.errors import ClassContextMismatch, NontrivialRho
from torus_bundles.surfaces import SurfaceSpec, trivial_representation

KLEIN = SurfaceSpec.nonorientable(2)
GENUS_TWO = SurfaceSpec.orientable(2)


def _class(surface, rho, vector):
    return cohomology_context(surface, rho).class_of(vector)


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------

def test_classify_examples():
    assert classify(TORUS, kodaira_thurston()).invariant_factors == (0,)
    assert classify(SurfaceSpec.open(2), trivial_representation(SurfaceSpec.open(2))).is_trivial()
    assert classify(RP2, antipodal()).invariant_factors == (0, 0)


# ----------------------------------------------------------------------
# decide_symplectic
# ----------------------------------------------------------------------

def test_kodaira_thurston_zero_class_admits():
    rho = kodaira_thurston()
    verdict = decide_symplectic(TORUS, rho, _class(TORUS, rho, (0, 0)))
    assert verdict.admits
    assert verdict.branch is Branch.CLOSED_ASPHERICAL


def test_kodaira_thurston_generator_does_not_admit():
    rho = kodaira_thurston()
    verdict = decide_symplectic(TORUS, rho, _class(TORUS, rho, (0, 1)))
    assert not verdict.admits
    assert verdict.detail["torsion"] is False
    assert verdict.detail["witness"]["position"] == 0


def test_sphere_nonzero_class_does_not_admit():
    rho = trivial_representation(SPHERE)
    verdict = decide_symplectic(SPHERE, rho, _class(SPHERE, rho, (1, 0)))
    assert not verdict.admits
    assert verdict.branch is Branch.SPHERE
    assert verdict.to_dict()["branch"] == "Sphere-TrivialityTest"


@pytest.mark.parametrize("vector", [(0, 0), (1, 0), (0, 1), (5, 7), (-3, 11)])
def test_mn_family_every_class_admits(vector):
    rho = mn_family(2, 3)
    assert decide_symplectic(TORUS, rho, _class(TORUS, rho, vector)).admits


def test_rp2_branches():
    flat = trivial_representation(RP2)
    for vector in [(0, 0), (1, 0), (1, 1)]:
        verdict = decide_symplectic(RP2, flat, _class(RP2, flat, vector))
        assert verdict.admits
        assert verdict.branch is Branch.RP2_TRIVIAL

    twisted = antipodal()
    assert decide_symplectic(RP2, twisted, _class(RP2, twisted, (0, 0))).admits
    verdict = decide_symplectic(RP2, twisted, _class(RP2, twisted, (0, 1)))
    assert not verdict.admits
    assert verdict.branch is Branch.RP2_NONTRIVIAL


def test_open_surface_always_admits():
    surface = SurfaceSpec.open(2)
    rho = trivial_representation(surface)
    verdict = decide_symplectic(surface, rho, _class(surface, rho, (4, -1)))
    assert verdict.admits
    assert verdict.branch is Branch.OPEN_SURFACE


def test_klein_bottle_is_flagged():
    rho = trivial_representation(KLEIN)
    verdict = decide_symplectic(KLEIN, rho, _class(KLEIN, rho, (1, 0)))
    assert verdict.admits
    assert verdict.branch is Branch.CLOSED_ASPHERICAL
    assert verdict.detail["least_exercised_branch"] is True


def test_class_from_another_representation_rejected():
    c = _class(TORUS, mn_family(2, 3), (1, 0))
    with pytest.raises(ClassContextMismatch):
        decide_symplectic(TORUS, kodaira_thurston(), c)


# ----------------------------------------------------------------------
# enumerate_admissible
# ----------------------------------------------------------------------

def test_enumerate_mn_family():
    classes = enumerate_admissible(TORUS, mn_family(2, 3))
    assert len(classes) == 6
    assert len({c.coords for c in classes}) == 6


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumerate_counts_mn(m, n):
    assert len(enumerate_admissible(TORUS, mn_family(m, n))) == m * n


def test_enumerate_degenerate_family_member_is_infinite():
    rho = mn_family(3, 0)
    h2 = classify(TORUS, rho)
    assert not h2.is_finite()
    assert len(enumerate_admissible(TORUS, rho)) == 3


def test_enumerate_kodaira_thurston_is_zero_only():
    classes = enumerate_admissible(TORUS, kodaira_thurston())
    assert len(classes) == 1
    assert classes[0].is_zero


def test_enumerate_open_and_sphere():
    surface = SurfaceSpec.open(1)
    assert [c.is_zero for c in enumerate_admissible(surface, trivial_representation(surface))] == [True]
    assert [c.is_zero for c in enumerate_admissible(SPHERE, trivial_representation(SPHERE))] == [True]


def test_enumerate_rp2_trivial_is_everything():
    assert len(enumerate_admissible(RP2, trivial_representation(RP2))) == 4


# ----------------------------------------------------------------------
# principal bundles
# ----------------------------------------------------------------------

def test_principal_genus_two():
    rho = trivial_representation(GENUS_TWO)
    assert not principal_bundle_verdict(GENUS_TWO, _class(GENUS_TWO, rho, (1, 0))).admits
    assert principal_bundle_verdict(GENUS_TWO, _class(GENUS_TWO, rho, (0, 0))).admits


def test_principal_klein_bottle_always_admits():
    rho = trivial_representation(KLEIN)
    ctx = cohomology_context(KLEIN, rho)
    for coords in ctx.h2.torsion_elements():
        assert principal_bundle_verdict(KLEIN, ctx.class_from_coords(coords)).admits


def test_principal_needs_trivial_rho():
    rho = kodaira_thurston()
    with pytest.raises(NontrivialRho):
        principal_bundle_verdict(TORUS, _class(TORUS, rho, (0, 1)))
