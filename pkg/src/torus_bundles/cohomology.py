# cohomology.py
#
# Cohomology of a surface group with coefficients in Z^k twisted by ρ, read
# off the cochain complex of the presentation 2-complex:
#
#     C⁰ = Z^k  --d1-->  C¹ = (Z^k)^n  --d2-->  C² = Z^k
#
# d1 is the block column of ρ(xᵢ) − I, d2 the block row of Fox derivatives.
# Classes in H² are coefficient vectors (the value on the single 2-cell)
# modulo the column span of d2.

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Protocol, Sequence

from .errors import (
    ClassContextMismatch,
    DimensionMismatch,
    InvalidDegree,
    NotAnInvolution,
    RelatorMismatch,
    SurfaceMismatch,
)
from .exact_algebra import (
    FgAbelianGroup,
    IntMatrix,
    apply_rows,
    as_int_matrix,
    cokernel,
    free_group_of_rank,
    is_torsion,
    kernel_basis,
    left_nullspace_rational,
    subquotient,
)
from .surfaces import (
    Representation,
    SurfaceKind,
    SurfaceSpec,
    evaluate_word,
    fox_derivatives,
    presentation_of,
)

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Context
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CohContext:
    surface: SurfaceSpec
    rho: Representation
    d1: IntMatrix
    d2: IntMatrix
    h0: FgAbelianGroup
    h1: FgAbelianGroup
    h2: FgAbelianGroup

    @property
    def module_rank(self) -> int:
        return self.rho.module_rank

    @cached_property
    def localization_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        """Rows L with L·d2 = 0; L·v coordinatizes H²(π; Q^k)."""
        if self.surface.kind is SurfaceKind.OPEN:
            return ()
        return left_nullspace_rational(self.d2)

    def class_of(self, vector: Sequence[int]) -> "CohClass":
        vector = tuple(vector)
        if len(vector) != self.module_rank:
            raise DimensionMismatch(
                f"class vector of length {len(vector)}, coefficient rank is {self.module_rank}"
            )
        for v in vector:
            if isinstance(v, bool) or int(v) != v:
                raise DimensionMismatch(f"class entries must be integers, got {v!r}")
        vector = tuple(int(v) for v in vector)
        return CohClass(self, vector, self.h2.reduce(vector))

    def class_from_coords(self, coords: Sequence[int]) -> "CohClass":
        coords = self.h2.normalize(coords)
        return CohClass(self, self.h2.lift(coords), coords)

    def zero_class(self) -> "CohClass":
        return self.class_from_coords(self.h2.zero())

    def to_dict(self) -> dict:
        return {
            "h0": group_to_dict(self.h0),
            "h1": group_to_dict(self.h1),
            "h2": group_to_dict(self.h2),
            "d1": self.d1.to_lists(),
            "d2": self.d2.to_lists(),
        }


@dataclass(frozen=True, eq=False)
class CohClass:
    context: CohContext
    representative: tuple[int, ...]
    coords: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coords)

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return same_context(self.context, other.context) and self.coords == other.coords

    def __hash__(self):
        return hash((self.context.surface, self.context.rho, self.coords))

    def to_dict(self) -> dict:
        return {"representative": list(self.representative), "coords": list(self.coords)}


def same_context(a: CohContext, b: CohContext) -> bool:
    return a is b or (a.surface == b.surface and a.rho == b.rho)


def group_to_dict(group: FgAbelianGroup) -> dict:
    return {
        "invariant_factors": list(group.invariant_factors),
        "description": group.describe(),
        "order": group.order(),
    }


# ----------------------------------------------------------------------
# Construction
# ----------------------------------------------------------------------

def differential_d1(rho: Representation) -> IntMatrix:
    k = rho.module_rank
    identity = IntMatrix.identity(k)
    return IntMatrix.vstack([m - identity for m in rho.images], cols=k)


def differential_d2(rho: Representation) -> IntMatrix:
    k = rho.module_rank
    presentation = presentation_of(rho.surface)
    if not presentation.relator:
        if rho.surface.kind is SurfaceKind.OPEN:
            # no 2-cells
            return IntMatrix.zeros(0, k * presentation.generator_count)
        # sphere: one 2-cell, no 1-cells
        return IntMatrix.zeros(k, 0)
    return IntMatrix.hstack(fox_derivatives(presentation, rho), rows=k)


@lru_cache(maxsize=256)
def _context_for(surface: SurfaceSpec, rho: Representation) -> CohContext:
    k = rho.module_rank
    d1 = differential_d1(rho)
    d2 = differential_d2(rho)

    if not (d2 @ d1).is_zero():
        raise RelatorMismatch("d2·d1 is not zero; representation and relator disagree")

    h0 = free_group_of_rank(kernel_basis(d1).cols)
    h1 = subquotient(d2, d1)
    if surface.kind is SurfaceKind.OPEN:
        h2 = cokernel(IntMatrix.identity(k))
    else:
        h2 = cokernel(d2)

    logger.debug(
        "cohomology of %s with rank-%d coefficients: H0=%s H1=%s H2=%s",
        surface.label(), k, h0.describe(), h1.describe(), h2.describe(),
    )
    return CohContext(surface, rho, d1, d2, h0, h1, h2)


def cohomology_context(surface: SurfaceSpec, rho: Representation) -> CohContext:
    """H⁰, H¹, H² of the surface with coefficients Z^k_ρ (memoized)."""
    if rho.surface != surface:
        raise SurfaceMismatch(
            f"representation is on {rho.surface.label()}, not {surface.label()}"
        )
    return _context_for(surface, rho)


def coinvariants(rho: Representation) -> FgAbelianGroup:
    """Z^k modulo the span of all (ρ(xᵢ) − I)·v."""
    k = rho.module_rank
    identity = IntMatrix.identity(k)
    return cokernel(IntMatrix.hstack([m - identity for m in rho.images], rows=k))


def invariants_basis(rho: Representation) -> IntMatrix:
    """Columns span ⋂ᵢ ker(ρ(xᵢ) − I), computed generator by generator."""
    k = rho.module_rank
    basis = IntMatrix.identity(k)
    for m in rho.images:
        step = kernel_basis((m - IntMatrix.identity(k)) @ basis)
        basis = basis @ step
    return basis


# ----------------------------------------------------------------------
# Rational localization
# ----------------------------------------------------------------------

def rational_reduce(context: CohContext, vector: Sequence) -> tuple[Fraction, ...]:
    return apply_rows(context.localization_rows, vector)


def rational_image(c: CohClass) -> tuple[Fraction, ...]:
    """Image of c under Z^k → Q^k, in coordinates of H²(π; Q^k)."""
    return rational_reduce(c.context, c.representative)


# ----------------------------------------------------------------------
# Cocycle evaluation
# ----------------------------------------------------------------------

class ExtensionLike(Protocol):
    """
    An extension of the surface group by the coefficient module, exposed
    through its group law and the section xᵢ ↦ (0, xᵢ).
    """

    rho: Representation

    def section(self, generator: int) -> Any: ...

    def mul(self, g: Any, h: Any) -> Any: ...

    def inv(self, g: Any) -> Any: ...

    def identity(self) -> Any: ...

    def decompose(self, g: Any) -> tuple[tuple, bool]: ...


def relator_lift(ext: ExtensionLike) -> tuple:
    """
    Multiply the section images along the relator. The product lies over the
    identity of π; its fibre part is the value of the cocycle on the 2-cell.
    """
    presentation = presentation_of(ext.rho.surface)
    sections = [ext.section(i) for i in range(1, presentation.generator_count + 1)]
    value = evaluate_word(presentation.relator, sections, ext.mul, ext.inv, ext.identity())
    fibre, over_identity = ext.decompose(value)
    if not over_identity:
        raise RelatorMismatch("relator lift does not lie over the identity of π")
    return tuple(fibre)


def class_of_cocycle(ext: ExtensionLike) -> CohClass:
    context = cohomology_context(ext.rho.surface, ext.rho)
    d = relator_lift(ext)
    if any(Fraction(v).denominator != 1 for v in d):
        raise RelatorMismatch("integral class requested for a rational cocycle")
    return context.class_of(tuple(int(v) for v in d))


def rational_class_of_cocycle(ext: ExtensionLike) -> tuple[Fraction, ...]:
    """Class of a Q-valued cocycle in H²(π; Q^k), in localization coordinates."""
    context = cohomology_context(ext.rho.surface, ext.rho)
    return rational_reduce(context, relator_lift(ext))


def check_class_context(surface: SurfaceSpec, rho: Representation, c: CohClass) -> None:
    if c.context.surface != surface or c.context.rho != rho:
        raise ClassContextMismatch(
            f"class belongs to {c.context.surface.label()} with a different ρ"
        )


# ----------------------------------------------------------------------
# Cohomology of Z/2
# ----------------------------------------------------------------------

def cyclic_cohomology_z2(module_action, degree: int) -> FgAbelianGroup:
    """
    H^p(Z/2; Z^k_T) from the periodic resolution:
        p = 0:       ker(T − I)
        p odd:       ker(T + I) / im(T − I)
        p even > 0:  ker(T − I) / im(T + I)
    """
    T = as_int_matrix(module_action)
    if not T.is_square():
        raise DimensionMismatch("module action must be square")
    if degree < 0:
        raise InvalidDegree(f"degree must be >= 0, got {degree}")
    if not (T @ T).is_identity():
        raise NotAnInvolution(f"T = {T.to_lists()} does not square to I")

    identity = IntMatrix.identity(T.rows)
    minus = T - identity
    plus = T + identity
    if degree == 0:
        return free_group_of_rank(kernel_basis(minus).cols)
    if degree % 2 == 1:
        return subquotient(plus, minus)
    return subquotient(minus, plus)


def rp2_spectral_table(max_degree: int) -> dict[tuple[int, int], FgAbelianGroup]:
    """
    E₂^{p,q} = H^p(Z/2; H^q(S²; Z²_ρ)) for the double cover S² → RP² with
    ρ = −I: the q = 0 row carries −I, the q = 2 row the trivial action, and
    the q = 1 row vanishes.
    """
    minus_identity = IntMatrix.from_rows([[-1, 0], [0, -1]])
    table = {}
    for p in range(max_degree + 1):
        table[(p, 0)] = cyclic_cohomology_z2(minus_identity, p)
        table[(p, 1)] = free_group_of_rank(0)
        table[(p, 2)] = cyclic_cohomology_z2(IntMatrix.identity(2), p)
    return table


def coboundary_value(rho_at, g, x, y) -> tuple:
    """δg(x,y) = ρ(x)g(y) − g(xy) + g(x) for a 1-cochain g on an abelian π."""
    xy = tuple(a + b for a, b in zip(x, y))
    moved = rho_at(x).apply(g(y))
    return tuple(m - s + t for m, s, t in zip(moved, g(xy), g(x)))


def is_torsion_class(c: CohClass) -> bool:
    return is_torsion(c.context.h2, c.coords)
