# catalog.py
#
# Named representations used by fixtures, the CLI and the selftest, plus
# random sampling of valid surface representations into SL(2,Z).

from __future__ import annotations

import random

from .errors import JobSpecError
from .exact_algebra import IntMatrix
from .surfaces import (
    Representation,
    SurfaceSpec,
    presentation_of,
    trivial_representation,
    validate_representation,
)

TORUS = SurfaceSpec.orientable(1)
SPHERE = SurfaceSpec.orientable(0)
RP2 = SurfaceSpec.nonorientable(1)

IDENTITY = IntMatrix.identity(2)
MINUS_IDENTITY = IntMatrix.from_rows([[-1, 0], [0, -1]])
SHEAR = IntMatrix.from_rows([[1, 1], [0, 1]])


# ----------------------------------------------------------------------
# Worked examples
# ----------------------------------------------------------------------

def kodaira_thurston() -> Representation:
    """ρ(a,b) = [[1,b],[0,1]] on the torus."""
    return validate_representation(TORUS, [IDENTITY, SHEAR])


def mn_family_matrix(m: int, n: int) -> IntMatrix:
    return IntMatrix.from_rows([
        [-2 * m * n + 1, 2 * m * n * n + n],
        [-m, m * n + 1],
    ])


def mn_family(m: int = 2, n: int = 3) -> Representation:
    """ρ(a,b) = M^(a+b); coinvariants Z_m ⊕ Z_n."""
    M = mn_family_matrix(m, n)
    return validate_representation(TORUS, [M, M])


def antipodal() -> Representation:
    """RP² with ρ(x) = −I."""
    return validate_representation(RP2, [MINUS_IDENTITY])


# keys are accepted by --rho; "params" marks a family taking "m,n"
REPRESENTATIONS = {
    "trivial": {
        "label": "trivial ρ (any surface)",
        "surface": None,
        "params": False,
    },
    "kodaira-thurston": {
        "label": "Kodaira-Thurston shear, ρ(a,b) = [[1,b],[0,1]]",
        "surface": TORUS,
        "params": False,
    },
    "mn-family": {
        "label": "m,n family, ρ(a,b) = M^(a+b) with coinvariants Z_m + Z_n",
        "surface": TORUS,
        "params": True,
    },
    "antipodal": {
        "label": "RP^2, ρ(x) = -I",
        "surface": RP2,
        "params": False,
    },
}


def resolve_representation(name: str, surface: SurfaceSpec | None = None) -> Representation:
    """
    Look up a catalog entry by name, e.g. "kodaira-thurston", "mn-family:2,3",
    "trivial". Entries bound to a surface reject any other surface.
    """
    key, _, arg = name.partition(":")
    entry = REPRESENTATIONS.get(key)
    if entry is None:
        raise JobSpecError(f"unknown representation {name!r}; known: {sorted(REPRESENTATIONS)}")
    if arg and not entry["params"]:
        raise JobSpecError(f"representation {key!r} takes no parameters")

    bound = entry["surface"]
    if bound is not None and surface is not None and surface != bound:
        raise JobSpecError(f"representation {key!r} lives on {bound.label()}, not {surface.label()}")

    if key == "trivial":
        if surface is None:
            raise JobSpecError("the trivial representation needs an explicit surface")
        return trivial_representation(surface)
    if key == "kodaira-thurston":
        return kodaira_thurston()
    if key == "mn-family":
        if not arg:
            return mn_family()
        try:
            m, n = (int(v) for v in arg.split(","))
        except ValueError:
            raise JobSpecError(f"mn-family expects 'm,n', got {arg!r}") from None
        return mn_family(m, n)
    return antipodal()


# ----------------------------------------------------------------------
# Random sampling
# ----------------------------------------------------------------------

def random_sl2z(rng: random.Random, factors: int = 3, step: int = 2) -> IntMatrix:
    """Product of random elementary shears; always determinant 1."""
    result = IDENTITY
    for _ in range(factors):
        k = rng.randint(-step, step)
        if rng.random() < 0.5:
            shear = IntMatrix.from_rows([[1, k], [0, 1]])
        else:
            shear = IntMatrix.from_rows([[1, 0], [k, 1]])
        result = result @ shear
    if rng.random() < 0.25:
        result = -result
    return result


def _commuting_pair(rng: random.Random) -> list[IntMatrix]:
    X = random_sl2z(rng)
    return [X.power(rng.randint(-2, 2)), X.power(rng.randint(-2, 2))]


def random_representation(rng: random.Random, genus: int) -> Representation:
    """
    A validated SL(2,Z) representation of the genus-g surface group, g in 1..3.
    Handles get commuting pairs; genus ≥ 2 sometimes uses the swapped
    pattern (X, Y, Y, X), whose two commutators cancel.
    """
    if genus < 1:
        raise JobSpecError("random representations need genus >= 1")
    images: list[IntMatrix] = []
    remaining = genus
    while remaining:
        if remaining >= 2 and rng.random() < 0.5:
            X, Y = random_sl2z(rng), random_sl2z(rng)
            images.extend([X, Y, Y, X])
            remaining -= 2
        else:
            images.extend(_commuting_pair(rng))
            remaining -= 1
    surface = SurfaceSpec.orientable(genus)
    assert len(images) == presentation_of(surface).generator_count
    return validate_representation(surface, images)
