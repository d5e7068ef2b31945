# surfaces.py
#
# Surface descriptors, their one-relator presentations, words in the
# generators, representations of the surface group into GL(k,Z), and Fox
# derivatives of the relator evaluated through a representation.

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence, TypeVar

from .errors import (
    DimensionMismatch,
    EmptyRelator,
    GeneratorCountMismatch,
    InvalidSurface,
    NotInvertible,
    RelatorNotSatisfied,
)
from .exact_algebra import IntMatrix, as_int_matrix

logger = logging.getLogger(__name__)

T = TypeVar("T")

Word = tuple[int, ...]


# ----------------------------------------------------------------------
# Surface descriptors
# ----------------------------------------------------------------------

class SurfaceKind(str, Enum):
    ORIENTABLE_CLOSED = "orientable-closed"
    NONORIENTABLE_CLOSED = "nonorientable-closed"
    OPEN = "open"


@dataclass(frozen=True)
class SurfaceSpec:
    """
    A connected surface up to the homotopy data that matters here.

    genus is the orientable genus g ≥ 0, the non-orientable genus k ≥ 1, or
    the rank r ≥ 0 of the free fundamental group of an open surface.
    """

    kind: SurfaceKind
    genus: int

    def __post_init__(self):
        try:
            kind = SurfaceKind(self.kind)
        except ValueError:
            raise InvalidSurface(f"unknown surface kind {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        if isinstance(self.genus, bool) or not isinstance(self.genus, int):
            raise InvalidSurface(f"genus must be an integer, got {self.genus!r}")
        minimum = 1 if kind is SurfaceKind.NONORIENTABLE_CLOSED else 0
        if self.genus < minimum:
            raise InvalidSurface(f"{kind.value} surface needs genus >= {minimum}")

    @classmethod
    def orientable(cls, genus: int) -> "SurfaceSpec":
        return cls(SurfaceKind.ORIENTABLE_CLOSED, genus)

    @classmethod
    def nonorientable(cls, genus: int) -> "SurfaceSpec":
        return cls(SurfaceKind.NONORIENTABLE_CLOSED, genus)

    @classmethod
    def open(cls, rank: int) -> "SurfaceSpec":
        return cls(SurfaceKind.OPEN, rank)

    @classmethod
    def from_dict(cls, data: dict) -> "SurfaceSpec":
        if not isinstance(data, dict) or "kind" not in data:
            raise InvalidSurface(f"surface must be an object with a kind, got {data!r}")
        return cls(data["kind"], data.get("genus", 0))

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "genus": self.genus}

    @property
    def is_closed(self) -> bool:
        return self.kind is not SurfaceKind.OPEN

    @property
    def is_sphere(self) -> bool:
        return self.kind is SurfaceKind.ORIENTABLE_CLOSED and self.genus == 0

    @property
    def is_projective_plane(self) -> bool:
        return self.kind is SurfaceKind.NONORIENTABLE_CLOSED and self.genus == 1

    @property
    def is_torus(self) -> bool:
        return self.kind is SurfaceKind.ORIENTABLE_CLOSED and self.genus == 1

    def label(self) -> str:
        if self.is_sphere:
            return "S^2"
        if self.is_torus:
            return "T^2"
        if self.is_projective_plane:
            return "RP^2"
        if self.kind is SurfaceKind.ORIENTABLE_CLOSED:
            return f"Sigma_{self.genus}"
        if self.kind is SurfaceKind.NONORIENTABLE_CLOSED:
            return f"N_{self.genus}"
        return f"Open(F_{self.genus})"


# ----------------------------------------------------------------------
# Words
# ----------------------------------------------------------------------

def free_reduce(word: Sequence[int]) -> Word:
    """Cancel adjacent x x⁻¹ pairs until none remain."""
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise DimensionMismatch("word letters are nonzero signed indices")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def concat(u: Sequence[int], v: Sequence[int]) -> Word:
    return free_reduce(tuple(u) + tuple(v))


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(-letter for letter in reversed(word))


def commutator_word(i: int, j: int) -> Word:
    return (i, j, -i, -j)


def evaluate_word(
    word: Sequence[int],
    images: Sequence[T],
    mul: Callable[[T, T], T],
    inv: Callable[[T], T],
    identity: T,
) -> T:
    """Evaluate a word in any group given by its images and operations."""
    inverses: dict[int, T] = {}
    result = identity
    for letter in word:
        i = abs(letter) - 1
        if i >= len(images):
            raise GeneratorCountMismatch(
                f"letter {letter} refers to a missing generator ({len(images)} given)"
            )
        if letter > 0:
            result = mul(result, images[i])
        else:
            if i not in inverses:
                inverses[i] = inv(images[i])
            result = mul(result, inverses[i])
    return result


# ----------------------------------------------------------------------
# Presentations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relator: Word
    simply_connected: bool = False

    def __post_init__(self):
        for letter in self.relator:
            if letter == 0 or abs(letter) > self.generator_count:
                raise DimensionMismatch(
                    f"relator letter {letter} outside [1, {self.generator_count}]"
                )


def presentation_of(surface: SurfaceSpec) -> GroupPresentation:
    """
    Standard one-relator presentation:
        orientable genus g     ⟨a1,b1,...,ag,bg | [a1,b1]...[ag,bg]⟩
        non-orientable genus k ⟨a1,...,ak | a1²...ak²⟩
        open of rank r         free on r generators
    """
    if surface.kind is SurfaceKind.ORIENTABLE_CLOSED:
        g = surface.genus
        relator: list[int] = []
        for h in range(g):
            relator.extend(commutator_word(2 * h + 1, 2 * h + 2))
        return GroupPresentation(2 * g, tuple(relator), simply_connected=(g == 0))

    if surface.kind is SurfaceKind.NONORIENTABLE_CLOSED:
        k = surface.genus
        relator = [i for i in range(1, k + 1) for _ in range(2)]
        return GroupPresentation(k, tuple(relator))

    return GroupPresentation(surface.genus, ())


# ----------------------------------------------------------------------
# Representations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Representation:
    """
    Images of the surface-group generators in GL(k,Z). Build through
    validate_representation; the constructor does not check the relator.
    """

    surface: SurfaceSpec
    images: tuple[IntMatrix, ...]
    symplectic: bool
    module_rank: int = 2

    @property
    def presentation(self) -> GroupPresentation:
        return presentation_of(self.surface)

    @property
    def is_trivial(self) -> bool:
        return all(m.is_identity() for m in self.images)

    def inverse_images(self) -> tuple[IntMatrix, ...]:
        return tuple(m.inverse_unimodular() for m in self.images)

    def evaluate(self, word: Sequence[int]) -> IntMatrix:
        return evaluate_word(
            word,
            self.images,
            lambda x, y: x @ y,
            IntMatrix.inverse_unimodular,
            IntMatrix.identity(self.module_rank),
        )

    def to_lists(self) -> list[list[list[int]]]:
        return [m.to_lists() for m in self.images]


def validate_representation(
    surface: SurfaceSpec,
    images: Sequence,
    module_rank: int | None = None,
) -> Representation:
    """
    Check one square unimodular image per generator and that the relator
    evaluates to the identity. The symplectic flag is set iff every
    determinant is +1.
    """
    presentation = presentation_of(surface)
    matrices = tuple(as_int_matrix(m) for m in images)

    if len(matrices) != presentation.generator_count:
        raise GeneratorCountMismatch(
            f"{surface.label()} has {presentation.generator_count} generators, "
            f"got {len(matrices)} images"
        )

    if module_rank is None:
        module_rank = matrices[0].rows if matrices else 2
    for idx, m in enumerate(matrices, start=1):
        if m.rows != module_rank or m.cols != module_rank:
            raise DimensionMismatch(
                f"image {idx} is {m.rows}x{m.cols}, expected {module_rank}x{module_rank}"
            )

    dets = [m.det() for m in matrices]
    for idx, d in enumerate(dets, start=1):
        if d not in (1, -1):
            raise NotInvertible(f"image {idx} has determinant {d}")

    rho = Representation(
        surface=surface,
        images=matrices,
        symplectic=all(d == 1 for d in dets),
        module_rank=module_rank,
    )

    value = rho.evaluate(presentation.relator)
    if not value.is_identity():
        raise RelatorNotSatisfied(
            f"relator of {surface.label()} evaluates to {value.to_lists()}, not I"
        )

    logger.debug(
        "validated representation on %s (rank %d, symplectic=%s)",
        surface.label(), module_rank, rho.symplectic,
    )
    return rho


def trivial_representation(surface: SurfaceSpec, module_rank: int = 2) -> Representation:
    n = presentation_of(surface).generator_count
    return validate_representation(
        surface, [IntMatrix.identity(module_rank)] * n, module_rank=module_rank
    )


# ----------------------------------------------------------------------
# Fox calculus
# ----------------------------------------------------------------------

def fox_derivatives(
    presentation: GroupPresentation, rho: Representation
) -> list[IntMatrix]:
    """
    ρ(∂r/∂xᵢ) for each generator, reading the relator left to right with a
    running prefix P = ρ(letters so far):

        +i:  ∂ᵢ += P,  then P ← P·ρ(xᵢ)
        −i:  P ← P·ρ(xᵢ)⁻¹, then ∂ᵢ −= P
    """
    if not presentation.relator:
        raise EmptyRelator("Fox derivatives need a nonempty relator")
    if presentation.generator_count != len(rho.images):
        raise GeneratorCountMismatch(
            f"presentation has {presentation.generator_count} generators, "
            f"representation has {len(rho.images)}"
        )

    k = rho.module_rank
    inverses = rho.inverse_images()
    derivatives = [IntMatrix.zeros(k, k) for _ in rho.images]
    prefix = IntMatrix.identity(k)

    for letter in presentation.relator:
        i = abs(letter) - 1
        if letter > 0:
            derivatives[i] = derivatives[i] + prefix
            prefix = prefix @ rho.images[i]
        else:
            prefix = prefix @ inverses[i]
            derivatives[i] = derivatives[i] - prefix

    return derivatives
