import random
from fractions import Fraction

import pytest

from torus_bundles.catalog import random_sl2z
from torus_bundles.errors import DimensionMismatch, ExpressionError, NotInvertible
from torus_bundles.exact_algebra import IntMatrix
from torus_bundles.heis_eval import evaluate
from torus_bundles.heisenberg import (
    AUT_IDENTITY,
    GEN_X,
    GEN_Y,
    HEIS_IDENTITY,
    HEISENBERG_COCYCLE,
    HeisAut,
    HeisElement,
    aut_apply,
    aut_compose,
    aut_inner,
    aut_inverse,
    dual_action,
    endomorphism_from_images,
    endomorphism_inverse,
    fibrewise_localize,
    heis_comm,
    heis_conj,
    heis_inv,
    heis_mul,
    heis_pow,
    heisenberg_cocycle,
    is_automorphism,
    is_central,
    kernel_element,
    psi,
    rho1,
)
from torus_bundles.selftest_helpers import (
    oracle_comm,
    oracle_conj,
    oracle_inv,
    oracle_mul,
    oracle_pow,
    random_heis,
    random_rational,
)

H = HeisElement


# ----------------------------------------------------------------------
# Group law
# ----------------------------------------------------------------------

def test_identity_is_neutral():
    g = H(Fraction(2, 3), 4, -1)
    assert heis_mul(HEIS_IDENTITY, g) == g
    assert heis_mul(g, heis_inv(g)) == HEIS_IDENTITY


def test_generators_multiply():
    assert heis_mul(GEN_X, GEN_Y) == H(1, 1, 1)


def test_generator_commutator_is_central_unit():
    assert heis_comm(GEN_X, GEN_Y) == H(1, 0, 0)


def test_conjugation():
    g = H(5, -2, 7)
    assert heis_conj(HEIS_IDENTITY, g) == g
    assert heis_conj(GEN_X, GEN_Y) == H(1, 0, 1)
    assert heis_comm(H(3, 0, 0), H(Fraction(1, 2), 0, 0)) == HEIS_IDENTITY


@pytest.mark.parametrize("g, central", [
    (H(Fraction(7, 3), 0, 0), True),
    (GEN_X, False),
    (HEIS_IDENTITY, True),
])
def test_is_central(g, central):
    assert is_central(g) is central


def test_powers():
    g = H(Fraction(1, 2), 3, -4)
    assert heis_pow(g, 0) == HEIS_IDENTITY
    assert heis_pow(g, 2) == H(2 * g.a + g.b * g.c, 2 * g.b, 2 * g.c)
    assert heis_pow(H(0, 1, 1), 3) == H(3, 3, 3)
    assert heis_mul(heis_pow(g, -3), heis_pow(g, 3)) == HEIS_IDENTITY


def test_b_and_c_must_be_integers():
    with pytest.raises(DimensionMismatch):
        H(0, Fraction(1, 2), 0)


def test_closed_forms_match_matrix_model():
    rng = random.Random(3)
    for _ in range(500):
        g, h = random_heis(rng), random_heis(rng)
        n = rng.randint(-5, 5)
        assert heis_mul(g, h) == oracle_mul(g, h)
        assert heis_inv(g) == oracle_inv(g)
        assert heis_conj(g, h) == oracle_conj(g, h)
        assert heis_comm(g, h) == oracle_comm(g, h)
        assert heis_pow(g, n) == oracle_pow(g, n)


# ----------------------------------------------------------------------
# Endomorphisms and automorphisms
# ----------------------------------------------------------------------

def test_endomorphism_examples():
    assert is_automorphism(endomorphism_from_images(GEN_X, GEN_Y))
    assert is_automorphism(endomorphism_from_images(H(0, 1, 0), H(0, 1, 1)))
    assert not is_automorphism(endomorphism_from_images(H(0, 1, 0), H(0, 0, 2)))


def test_identity_endomorphism_fixes_everything():
    e = endomorphism_from_images(GEN_X, GEN_Y)
    g = H(Fraction(-5, 2), 3, 8)
    assert e.apply(g) == g


def test_endomorphism_inverse():
    rng = random.Random(5)
    e = endomorphism_from_images(H(Fraction(1, 3), 1, 0), H(-2, 1, 1))
    inverse = endomorphism_inverse(e)
    assert inverse is not None
    for _ in range(50):
        g = random_heis(rng)
        assert e.apply(inverse.apply(g)) == g
        assert inverse.apply(e.apply(g)) == g
    assert endomorphism_inverse(endomorphism_from_images(H(0, 1, 0), H(0, 0, 2))) is None


def test_endomorphism_is_a_homomorphism():
    rng = random.Random(9)
    e = endomorphism_from_images(H(Fraction(1, 2), 2, 1), H(3, 1, 1))
    for _ in range(100):
        g, h = random_heis(rng), random_heis(rng)
        assert e.apply(heis_mul(g, h)) == heis_mul(e.apply(g), e.apply(h))


def test_aut_needs_unimodular_bottom_block():
    with pytest.raises(NotInvertible):
        HeisAut((0, 0), IntMatrix.from_rows([[1, 0], [0, 2]]))


def test_inner_automorphism():
    A = aut_inner(H(5, 2, 3))
    assert A.u == (-3, 2)
    assert A.m.is_identity()
    assert rho1(A).is_identity()
    assert A.is_kernel_element


def test_inner_automorphism_is_conjugation():
    rng = random.Random(13)
    for _ in range(100):
        x, g = random_heis(rng), random_heis(rng)
        assert aut_apply(aut_inner(x), g) == heis_conj(x, g)


def test_kernel_elements_add():
    u = (Fraction(1, 2), 3)
    v = (-1, Fraction(2, 5))
    assert aut_compose(kernel_element(u), kernel_element(v)) == kernel_element(
        (u[0] + v[0], u[1] + v[1])
    )


def test_composition_laws():
    rng = random.Random(17)
    for _ in range(100):
        A = HeisAut((random_rational(rng), random_rational(rng)), random_sl2z(rng))
        B = HeisAut((random_rational(rng), random_rational(rng)), random_sl2z(rng))
        g = random_heis(rng)
        assert aut_apply(aut_compose(A, B), g) == aut_apply(A, aut_apply(B, g))
        assert rho1(aut_compose(A, B)) == rho1(A) @ rho1(B)
        assert aut_compose(A, aut_inverse(A)) == AUT_IDENTITY
        assert aut_compose(aut_inverse(A), A) == AUT_IDENTITY


def test_inner_automorphisms_compose():
    x, y = H(1, 2, -1), H(Fraction(1, 3), -4, 5)
    assert aut_compose(aut_inner(x), aut_inner(y)) == aut_inner(heis_mul(x, y))


# ----------------------------------------------------------------------
# ψ, dual action and the Heisenberg cocycle
# ----------------------------------------------------------------------

@pytest.mark.parametrize("v, expected", [((1, 0), (0, 1)), ((0, 0), (0, 0)), ((2, 3), (-3, 2))])
def test_psi(v, expected):
    assert psi(v) == expected


def test_psi_intertwines_dual_action():
    rng = random.Random(19)
    for _ in range(50):
        alpha = random_sl2z(rng)
        v = (rng.randint(-9, 9), rng.randint(-9, 9))
        assert psi(alpha.apply(v)) == dual_action(alpha, psi(v))


def test_heisenberg_cocycle_values():
    assert heisenberg_cocycle((1, 0), (0, 1)) == 1
    assert heisenberg_cocycle((0, 1), (1, 0)) == 0


def test_heisenberg_cocycle_identity():
    rng = random.Random(67)

    def draw():
        return (rng.randint(-9, 9), rng.randint(-9, 9))

    def plus(x, y):
        return (x[0] + y[0], x[1] + y[1])

    for _ in range(500):
        x, y, z = draw(), draw(), draw()
        assert (
            heisenberg_cocycle(y, z)
            - heisenberg_cocycle(plus(x, y), z)
            + heisenberg_cocycle(x, plus(y, z))
            - heisenberg_cocycle(x, y)
        ) == 0
        assert heisenberg_cocycle((0, 0), x) == 0
        assert heisenberg_cocycle(x, (0, 0)) == 0
        # s(x)·s(y) = f(x,y)·s(xy) for the section s(b,c) = (0,b,c)
        product = heis_mul(H(0, *x), H(0, *y))
        assert product == heis_mul(H(heisenberg_cocycle(x, y), 0, 0), H(0, *plus(x, y)))


def test_integral_elements_form_a_subgroup():
    rng = random.Random(71)
    for _ in range(200):
        g = random_heis(rng, integral=True)
        h = random_heis(rng, integral=True)
        assert g.is_integral and h.is_integral
        assert heis_mul(g, h).is_integral
        assert heis_inv(g).is_integral
        assert heis_conj(g, h).is_integral
    assert not H(Fraction(1, 2), 0, 0).is_integral


def test_fibrewise_localize():
    localized = fibrewise_localize(HEISENBERG_COCYCLE)
    assert localized.ring == "Q"
    value = localized((2, 0), (0, 3))
    assert value == (6,)
    assert isinstance(value[0], Fraction)
    assert localized((0, 0), (4, 4)) == (0,)


# ----------------------------------------------------------------------
# Expression evaluator
# ----------------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("[(0,1,0),(0,0,1)]", H(1, 0, 0)),
    ("(0,1,0)*(0,0,1)", H(1, 1, 1)),
    ("{(0,1,0)}(0,0,1)", H(1, 0, 1)),
    ("(0,1,1)^3", H(3, 3, 3)),
    ("(7/3,0,0)*(0,1,1)^-2", H(Fraction(16, 3), -2, -2)),
    ("((0,1,0)*(0,0,1))^2", H(3, 2, 2)),
    (" ( -1/2 , 0 , 0 ) ", H(Fraction(-1, 2), 0, 0)),
])
def test_evaluate(text, expected):
    assert evaluate(text) == expected


@pytest.mark.parametrize("text", ["", "(1,2)", "(0,1,0) x", "(1/0,0,0)", "(0,1,0)*", "[(0,1,0)]"])
def test_evaluate_errors(text):
    with pytest.raises(ExpressionError):
        evaluate(text)


def test_evaluate_nesting():
    assert evaluate("(" * 20 + "(0,1,0)" + ")" * 20) == GEN_X
    with pytest.raises(ExpressionError):
        evaluate("(" * 5000 + "(0,1,0)" + ")" * 5000)
