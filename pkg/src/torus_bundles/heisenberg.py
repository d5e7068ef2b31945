# heisenberg.py
#
# The discrete Heisenberg group ℋ and its fibrewise localization ℋ_f0, as
# triples (a, b, c) with a ∈ Q and b, c ∈ Z under
#
#     (a,b,c)·(x,y,z) = (a + x + bz, b + y, c + z),
#
# together with endomorphisms/automorphisms written as a top row over a 2×2
# integer block, the map ψ, and the Heisenberg 2-cocycle.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DimensionMismatch, NotInvertible
from .exact_algebra import IntMatrix, as_int_matrix, solve_linear_rational

logger = logging.getLogger(__name__)


def _rat(value) -> Fraction:
    if isinstance(value, bool):
        raise DimensionMismatch(f"not a rational number: {value!r}")
    return value if isinstance(value, Fraction) else Fraction(value)


def _int(value) -> int:
    if isinstance(value, bool) or Fraction(value).denominator != 1:
        raise DimensionMismatch(f"not an integer: {value!r}")
    return int(value)


# ----------------------------------------------------------------------
# Group elements
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class HeisElement:
    a: Fraction
    b: int
    c: int

    def __post_init__(self):
        object.__setattr__(self, "a", _rat(self.a))
        object.__setattr__(self, "b", _int(self.b))
        object.__setattr__(self, "c", _int(self.c))

    @property
    def is_integral(self) -> bool:
        return self.a.denominator == 1

    def to_dict(self) -> dict:
        return {"a": fraction_to_json(self.a), "b": self.b, "c": self.c}

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


HEIS_IDENTITY = HeisElement(0, 0, 0)
GEN_X = HeisElement(0, 1, 0)
GEN_Y = HeisElement(0, 0, 1)


def fraction_to_json(value: Fraction):
    """Integers stay integers; other rationals become 'p/q' strings."""
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else str(value)


def heis_mul(g: HeisElement, h: HeisElement) -> HeisElement:
    return HeisElement(g.a + h.a + g.b * h.c, g.b + h.b, g.c + h.c)


def heis_inv(g: HeisElement) -> HeisElement:
    return HeisElement(-g.a + g.b * g.c, -g.b, -g.c)


def heis_conj(g: HeisElement, h: HeisElement) -> HeisElement:
    """g·h·g⁻¹ in closed form."""
    return HeisElement(h.a + g.b * h.c - g.c * h.b, h.b, h.c)


def heis_comm(g: HeisElement, h: HeisElement) -> HeisElement:
    """g·h·g⁻¹·h⁻¹ in closed form."""
    return HeisElement(g.b * h.c - h.b * g.c, 0, 0)


def is_central(g: HeisElement) -> bool:
    return g.b == 0 and g.c == 0


def heis_pow(g: HeisElement, n: int) -> HeisElement:
    """(a,b,c)ⁿ = (n·a + C(n,2)·b·c, n·b, n·c) for n ≥ 0; n < 0 inverts first."""
    if n < 0:
        return heis_pow(heis_inv(g), -n)
    return HeisElement(n * g.a + (n * (n - 1) // 2) * g.b * g.c, n * g.b, n * g.c)


def heis_product(elements: Sequence[HeisElement]) -> HeisElement:
    result = HEIS_IDENTITY
    for g in elements:
        result = heis_mul(result, g)
    return result


def unitriangular(g: HeisElement) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix model [[1,b,a],[0,1,c],[0,0,1]]; multiplication matches heis_mul."""
    one, zero = Fraction(1), Fraction(0)
    return (
        (one, Fraction(g.b), g.a),
        (zero, one, Fraction(g.c)),
        (zero, zero, one),
    )


def from_unitriangular(m) -> HeisElement:
    return HeisElement(m[0][2], m[0][1], m[1][2])


# ----------------------------------------------------------------------
# Endomorphisms and automorphisms
# ----------------------------------------------------------------------

def _images_apply(img1: HeisElement, img2: HeisElement, g: HeisElement) -> HeisElement:
    # g = (a − bc, 0, 0)·(0,1,0)^b·(0,0,1)^c
    det = img1.b * img2.c - img2.b * img1.c
    centre = HeisElement((g.a - g.b * g.c) * det, 0, 0)
    return heis_product([centre, heis_pow(img1, g.b), heis_pow(img2, g.c)])


@dataclass(frozen=True)
class HeisEndomorphism:
    """
    The endomorphism sending (0,1,0) ↦ img1 and (0,0,1) ↦ img2. The centre
    goes to (det·a, 0, 0) where det is the determinant of the bottom block.
    Arbitrary bottom blocks are allowed.
    """

    img1: HeisElement
    img2: HeisElement

    @property
    def bottom(self) -> IntMatrix:
        return IntMatrix.from_rows([[self.img1.b, self.img2.b], [self.img1.c, self.img2.c]])

    @property
    def determinant(self) -> int:
        return self.bottom.det()

    def apply(self, g: HeisElement) -> HeisElement:
        return _images_apply(self.img1, self.img2, g)

    def is_automorphism(self) -> bool:
        return self.determinant in (1, -1)

    def to_automorphism(self) -> "HeisAut":
        return HeisAut((self.img1.a, self.img2.a), self.bottom)


def endomorphism_from_images(img1: HeisElement, img2: HeisElement) -> HeisEndomorphism:
    return HeisEndomorphism(img1, img2)


def is_automorphism(e: HeisEndomorphism) -> bool:
    return e.is_automorphism()


@dataclass(frozen=True)
class HeisAut:
    """
    Automorphism of ℋ_f0 in matrix notation: top row u = (u₁, u₂) over the
    bottom block m. Column j holds the image of the j-th generator:
        (0,1,0) ↦ (u₁, m₁₁, m₂₁),   (0,0,1) ↦ (u₂, m₁₂, m₂₂).
    """

    u: tuple[Fraction, Fraction]
    m: IntMatrix = field(default_factory=lambda: IntMatrix.identity(2))

    def __post_init__(self):
        if len(self.u) != 2:
            raise DimensionMismatch(f"top row must have two entries, got {self.u!r}")
        object.__setattr__(self, "u", (_rat(self.u[0]), _rat(self.u[1])))
        m = as_int_matrix(self.m)
        if (m.rows, m.cols) != (2, 2):
            raise DimensionMismatch("bottom block must be 2x2")
        if m.det() not in (1, -1):
            raise NotInvertible(f"bottom block {m.to_lists()} has determinant {m.det()}")
        object.__setattr__(self, "m", m)

    @property
    def img1(self) -> HeisElement:
        return HeisElement(self.u[0], self.m[0, 0], self.m[1, 0])

    @property
    def img2(self) -> HeisElement:
        return HeisElement(self.u[1], self.m[0, 1], self.m[1, 1])

    @property
    def is_kernel_element(self) -> bool:
        return self.m.is_identity()

    def to_dict(self) -> dict:
        return {"top": [fraction_to_json(v) for v in self.u], "bottom": self.m.to_lists()}


AUT_IDENTITY = HeisAut((0, 0), IntMatrix.identity(2))


def aut_apply(A: HeisAut, g: HeisElement) -> HeisElement:
    return _images_apply(A.img1, A.img2, g)


def aut_from_images(img1: HeisElement, img2: HeisElement) -> HeisAut:
    return HeisEndomorphism(img1, img2).to_automorphism()


def aut_compose(A: HeisAut, B: HeisAut) -> HeisAut:
    """A∘B, read off from where A∘B sends the two generators."""
    return aut_from_images(aut_apply(A, B.img1), aut_apply(A, B.img2))


def aut_inner(x: HeisElement) -> HeisAut:
    """ι_x: y ↦ x·y·x⁻¹, with top row (−c, b) over I."""
    return HeisAut((-x.c, x.b), IntMatrix.identity(2))


def kernel_element(u: Sequence) -> HeisAut:
    return HeisAut((u[0], u[1]), IntMatrix.identity(2))


def rho1(A: HeisAut) -> IntMatrix:
    return A.m


def aut_inverse(A: HeisAut) -> HeisAut:
    """
    B = (0 / m⁻¹) undoes the bottom block, so A∘B = (w / I) and
    A⁻¹ = B∘(−w / I).
    """
    B = HeisAut((0, 0), A.m.inverse_unimodular())
    w = aut_compose(A, B).u
    return aut_compose(B, kernel_element((-w[0], -w[1])))


def aut_pow(A: HeisAut, n: int) -> HeisAut:
    base = A if n >= 0 else aut_inverse(A)
    result = AUT_IDENTITY
    for _ in range(abs(n)):
        result = aut_compose(result, base)
    return result


def aut_product(auts: Sequence[HeisAut]) -> HeisAut:
    result = AUT_IDENTITY
    for A in auts:
        result = aut_compose(result, A)
    return result


def endomorphism_inverse(e: HeisEndomorphism) -> HeisEndomorphism | None:
    """
    Two-sided inverse built by solving for generator preimages, or None when
    the bottom block is not invertible over Z.
    """
    bottom = e.bottom
    det = bottom.det()
    if det == 0:
        return None

    preimages = []
    for target in (GEN_X, GEN_Y):
        bc = solve_linear_rational(bottom.to_lists(), (target.b, target.c))
        if bc is None or any(v.denominator != 1 for v in bc):
            return None
        b, c = (int(v) for v in bc)
        # e(a,b,c).a = (a − bc)·det + (img1^b · img2^c).a
        spread = heis_mul(heis_pow(e.img1, b), heis_pow(e.img2, c)).a
        a = (target.a - spread) / det + b * c
        preimages.append(HeisElement(a, b, c))

    inverse = HeisEndomorphism(*preimages)
    for g in (GEN_X, GEN_Y):
        if e.apply(inverse.apply(g)) != g or inverse.apply(e.apply(g)) != g:
            logger.debug("preimages %s do not invert %s", preimages, e)
            return None
    return inverse


# ----------------------------------------------------------------------
# ψ and the dual action
# ----------------------------------------------------------------------

def psi(v: Sequence) -> tuple[Fraction, Fraction]:
    """ψ(a₁, a₂) = (−a₂, a₁)."""
    a1, a2 = v
    return (Fraction(-a2), Fraction(a1))


def dual_action(alpha: IntMatrix, phi: Sequence) -> tuple[Fraction, ...]:
    """Left action of GL(2,Z) on H¹(Z²;Q) coordinates: φ ↦ (α⁻¹)ᵀφ."""
    return alpha.inverse_unimodular().transpose().apply(tuple(Fraction(v) for v in phi))


# ----------------------------------------------------------------------
# Point cocycles
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PointCocycle:
    """
    A normalized 2-cocycle on Z², evaluated pointwise. `ring` is "Z" or "Q";
    values are tuples of length `rank`.
    """

    function: Callable[[tuple[int, int], tuple[int, int]], tuple]
    ring: str = "Z"
    rank: int = 2

    def __call__(self, x, y) -> tuple:
        return tuple(self.function(tuple(x), tuple(y)))


def heisenberg_cocycle(x: Sequence[int], y: Sequence[int]) -> int:
    """s(x)s(y)s(xy)⁻¹ for the section s(b,c) = (0,b,c): ((b,c),(y,z)) ↦ b·z."""
    return x[0] * y[1]


HEISENBERG_COCYCLE = PointCocycle(lambda x, y: (heisenberg_cocycle(x, y),), ring="Z", rank=1)


def fibrewise_localize(f: PointCocycle) -> PointCocycle:
    """Post-compose with Z → Q."""
    inner = f.function
    return PointCocycle(
        lambda x, y: tuple(Fraction(v) for v in inner(x, y)), ring="Q", rank=f.rank
    )
