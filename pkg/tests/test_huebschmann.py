import random
from fractions import Fraction

import pytest

from torus_bundles.catalog import RP2, SHEAR, TORUS, kodaira_thurston, mn_family
from torus_bundles.errors import IncompatiblePair, InvalidSurface, NotSymplectic
from torus_bundles.exact_algebra import IntMatrix
from torus_bundles.heisenberg import AUT_IDENTITY, HeisElement, aut_compose, heis_mul, psi
from torus_bundles.huebschmann import (
    F_coboundary,
    GElement,
    huebschmann_F,
    lam,
    lift_representation,
    make_pi_element,
    mu,
    pi_identity,
    pi_inv,
    pi_mul,
    synthesize_extension,
    verify_huebschmann_identity,
)
from torus_bundles.selftest_helpers import random_heis, random_rational
from torus_bundles.surfaces import SurfaceSpec, trivial_representation, validate_representation

TRIVIAL = trivial_representation(TORUS)


def _window(bound):
    return [(p, q) for p in range(-bound, bound + 1) for q in range(-bound, bound + 1)]


def _cocycle_defect(ext, x, y, z):
    xy = (x[0] + y[0], x[1] + y[1])
    yz = (y[0] + z[0], y[1] + z[1])
    moved = ext.rho_at(x).apply(ext.f(y, z))
    return tuple(
        a - b + c - d
        for a, b, c, d in zip(moved, ext.f(xy, z), ext.f(x, yz), ext.f(x, y))
    )


# ----------------------------------------------------------------------
# Extension model
# ----------------------------------------------------------------------

def test_split_extension_has_zero_cocycle():
    ext = synthesize_extension(kodaira_thurston(), (0, 0))
    for x in _window(2):
        for y in _window(2):
            assert ext.f(x, y) == (0, 0)


def test_trivial_rho_cocycle_is_bilinear():
    ext = synthesize_extension(TRIVIAL, (1, 0))
    for x in _window(3):
        for y in _window(3):
            assert ext.f(x, y) == (-x[1] * y[0], 0)


def test_trivial_rho_single_values():
    ext = synthesize_extension(TRIVIAL, (0, 1))
    assert ext.f((0, 1), (1, 0)) == (0, -1)
    assert ext.f((1, 0), (0, 1)) == (0, 0)


@pytest.mark.parametrize("rho", [TRIVIAL, kodaira_thurston(), mn_family(2, 3)])
def test_synthesized_cocycle_identity(rho):
    rng = random.Random(23)
    ext = synthesize_extension(rho, (1, -1))
    points = _window(2)
    for _ in range(300):
        x, y, z = rng.choice(points), rng.choice(points), rng.choice(points)
        assert _cocycle_defect(ext, x, y, z) == (0, 0)


def test_group_law_inverse():
    ext = synthesize_extension(mn_family(2, 3), (2, 1))
    for x in _window(2):
        g = GElement((3, -1), x)
        assert ext.mul(g, ext.inv(g)) == ext.identity()
        assert ext.mul(ext.inv(g), g) == ext.identity()


@pytest.mark.parametrize("rho", [kodaira_thurston(), mn_family(2, 3)])
def test_group_law_is_associative(rho):
    rng = random.Random(31)
    ext = synthesize_extension(rho, (1, 2))
    points = _window(2)
    for _ in range(200):
        g, h, k = (GElement((rng.randint(-3, 3), rng.randint(-3, 3)), rng.choice(points)) for _ in range(3))
        assert ext.mul(ext.mul(g, h), k) == ext.mul(g, ext.mul(h, k))


def test_extension_needs_torus():
    with pytest.raises(InvalidSurface):
        synthesize_extension(trivial_representation(RP2), (1, 0))


# ----------------------------------------------------------------------
# σ-lifts
# ----------------------------------------------------------------------

def test_trivial_rho_lifts_to_identity():
    sigma = lift_representation(TRIVIAL)
    assert all(A == AUT_IDENTITY for A in sigma.lifts)


@pytest.mark.parametrize("rho", [kodaira_thurston(), mn_family(2, 3), mn_family(1, 4)])
def test_torus_lifts_commute(rho):
    sigma = lift_representation(rho)
    A1, A2 = sigma.lifts
    assert A1.m == rho.images[0]
    assert A2.m == rho.images[1]
    assert aut_compose(A1, A2) == aut_compose(A2, A1)


def test_genus_two_lift():
    X, Y = SHEAR, IntMatrix.from_rows([[2, 1], [1, 1]])
    rho = validate_representation(SurfaceSpec.orientable(2), [X, Y, Y, X])
    sigma = lift_representation(rho)
    assert [A.m for A in sigma.lifts] == [X, Y, Y, X]


def test_lift_errors():
    with pytest.raises(InvalidSurface):
        lift_representation(trivial_representation(RP2))
    flip = validate_representation(TORUS, [[[1, 0], [0, -1]], [[1, 0], [0, 1]]])
    with pytest.raises(NotSymplectic):
        lift_representation(flip)


# ----------------------------------------------------------------------
# Fibre product Π
# ----------------------------------------------------------------------

def test_mu_examples():
    ext = synthesize_extension(TRIVIAL, (0, 0))
    assert mu(HeisElement(0, 0, 0)) == pi_identity(ext)

    p = mu(HeisElement(5, 1, 2))
    assert p.g == GElement((1, 2), (0, 0))
    assert p.aut.u == (-2, 1)
    assert p.aut.m.is_identity()


def test_lam_and_mu_ignore_the_central_coordinate():
    rng = random.Random(37)
    for _ in range(100):
        h = random_heis(rng)
        shifted = HeisElement(h.a + random_rational(rng), h.b, h.c)
        assert lam(h) == GElement((h.b, h.c), (0, 0))
        assert lam(shifted) == lam(h)
        assert mu(shifted) == mu(h)
        assert mu(h).g == lam(h)


def test_mu_is_a_homomorphism():
    rng = random.Random(29)
    ext = synthesize_extension(kodaira_thurston(), (0, 1))
    for _ in range(100):
        g, h = random_heis(rng), random_heis(rng)
        assert pi_mul(ext, mu(g), mu(h)) == mu(heis_mul(g, h))


def test_pi_products_stay_compatible():
    rng = random.Random(31)
    rho = mn_family(2, 3)
    ext = synthesize_extension(rho, (1, 1))
    sigma = lift_representation(rho)
    points = _window(2)
    for _ in range(50):
        x, y = rng.choice(points), rng.choice(points)
        p = make_pi_element(ext, GElement((rng.randint(-3, 3), 0), x), sigma.at(x))
        q = make_pi_element(ext, GElement((0, rng.randint(-3, 3)), y), sigma.at(y))
        product = pi_mul(ext, p, q)
        assert ext.rho_at(product.g.x) == product.aut.m
        assert pi_mul(ext, pi_identity(ext), p) == p
        assert pi_mul(ext, p, pi_inv(ext, p)) == pi_identity(ext)


def test_incompatible_pair_rejected():
    ext = synthesize_extension(kodaira_thurston(), (0, 0))
    with pytest.raises(IncompatiblePair):
        make_pi_element(ext, GElement((0, 0), (0, 1)), AUT_IDENTITY)


# ----------------------------------------------------------------------
# F and the identity ψ(f) = −F
# ----------------------------------------------------------------------

def test_split_extension_gives_zero_F():
    ext = synthesize_extension(TRIVIAL, (0, 0))
    sigma = lift_representation(TRIVIAL)
    for x in _window(2):
        for y in _window(2):
            assert huebschmann_F(x, y, sigma, ext) == (0, 0)


def test_trivial_rho_single_F_value():
    ext = synthesize_extension(TRIVIAL, (1, 0))
    sigma = lift_representation(TRIVIAL)
    x, y = (0, 1), (1, 0)
    assert ext.f(x, y) == (-1, 0)
    F = huebschmann_F(x, y, sigma, ext)
    assert F == (Fraction(0), Fraction(1))
    assert tuple(-v for v in psi(ext.f(x, y))) == F


@pytest.mark.parametrize("rho", [kodaira_thurston(), mn_family(2, 3)])
def test_F_is_a_cocycle(rho):
    rng = random.Random(37)
    ext = synthesize_extension(rho, (0, 1))
    sigma = lift_representation(rho)
    points = _window(2)
    for _ in range(40):
        x, y, z = rng.choice(points), rng.choice(points), rng.choice(points)
        assert F_coboundary(ext, sigma, x, y, z) == (0, 0)


def test_verify_split_extension():
    report = verify_huebschmann_identity(TRIVIAL, (0, 0), 5, 50, seed=1)
    assert report.ok
    assert report.passed == 50
    assert report.class_coords == (0, 0)


@pytest.mark.parametrize("rho, t", [
    (TRIVIAL, (1, 0)),
    (kodaira_thurston(), (0, 1)),
    (mn_family(2, 3), (1, 0)),
])
def test_verify_identity(rho, t):
    report = verify_huebschmann_identity(rho, t, 5, 200)
    assert report.ok
    assert report.passed == 200
    assert report.failures == []
    assert report.cocycle_failures == 0
    assert report.class_matches_target


def test_verify_reports_torsion_target():
    report = verify_huebschmann_identity(mn_family(2, 3), (1, 0), 3, 20)
    assert report.class_is_torsion
    assert not any(report.rational_image)
    payload = report.to_dict()
    assert payload["class"]["is_torsion"] is True
    assert payload["ok"] is True


def test_verify_is_deterministic():
    first = verify_huebschmann_identity(kodaira_thurston(), (0, 1), 4, 30, seed=99).to_dict()
    second = verify_huebschmann_identity(kodaira_thurston(), (0, 1), 4, 30, seed=99).to_dict()
    assert first == second


def test_verify_needs_torus():
    with pytest.raises(InvalidSurface):
        verify_huebschmann_identity(trivial_representation(SurfaceSpec.orientable(2)), (1, 0), 3, 5)
