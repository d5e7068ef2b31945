# huebschmann.py
#
# The extension G = Z² ×_f π over the torus group π = Z², the fibre product
# Π = G ×_{GL(2,Z)} Aut(ℋ_f0), the lift σ of ρ into Aut(ℋ_f0), and the
# cocycle F extracted from Π. verify_huebschmann_identity checks ψ(f(x,y)) = −F(x,y)
# pointwise on sampled pairs.

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .cohomology import (
    class_of_cocycle,
    cohomology_context,
    coboundary_value,
    is_torsion_class,
    rational_image,
)
from .config import DEFAULT_BOUND, DEFAULT_SAMPLES, DEFAULT_SEED
from .errors import (
    DimensionMismatch,
    IncompatiblePair,
    InvalidSurface,
    NormalizationFailure,
    NoSolution,
    NotSymplectic,
)
from .exact_algebra import IntMatrix, solve_linear_rational
from .heisenberg import (
    AUT_IDENTITY,
    HEISENBERG_COCYCLE,
    HeisAut,
    HeisElement,
    PointCocycle,
    aut_compose,
    aut_inner,
    aut_inverse,
    aut_pow,
    dual_action,
    fibrewise_localize,
    fraction_to_json,
    psi,
)
from .surfaces import (
    Representation,
    SurfaceKind,
    SurfaceSpec,
    evaluate_word,
    presentation_of,
    trivial_representation,
)

logger = logging.getLogger(__name__)

TorusElement = tuple[int, int]
EPSILON: TorusElement = (0, 0)


def _add(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def _neg(x: Sequence) -> tuple:
    return tuple(-a for a in x)


def _require_torus(rho: Representation) -> None:
    if not rho.surface.is_torus:
        raise InvalidSurface(
            f"extension models live over the torus group, not {rho.surface.label()}"
        )


# ----------------------------------------------------------------------
# Extension model
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GElement:
    u: tuple
    x: TorusElement

    def to_dict(self) -> dict:
        return {"u": [fraction_to_json(v) for v in self.u], "x": list(self.x)}


@dataclass(frozen=True)
class ExtensionModel:
    """
    G = Z^k ×_f Z² with (u,x)·(v,y) = (u + ρ(x)v + f(x,y), x + y).

    `target` is the vector t the model was synthesized from, when known.
    """

    rho: Representation
    cocycle: PointCocycle
    target: tuple | None = None
    _powers: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        _require_torus(self.rho)
        if self.cocycle.rank != self.rho.module_rank:
            raise DimensionMismatch(
                f"cocycle of rank {self.cocycle.rank} over rank-{self.rho.module_rank} ρ"
            )

    @property
    def rank(self) -> int:
        return self.rho.module_rank

    def rho_at(self, x: Sequence[int]) -> IntMatrix:
        """ρ(a)^p ρ(b)^q for x = (p, q)."""
        key = tuple(x)
        if key not in self._powers:
            alpha, beta = self.rho.images
            self._powers[key] = alpha.power(key[0]) @ beta.power(key[1])
        return self._powers[key]

    def f(self, x: Sequence[int], y: Sequence[int]) -> tuple:
        return self.cocycle(tuple(x), tuple(y))

    # group law

    def identity(self) -> GElement:
        return GElement((0,) * self.rank, EPSILON)

    def mul(self, g: GElement, h: GElement) -> GElement:
        moved = self.rho_at(g.x).apply(h.u)
        return GElement(_add(_add(g.u, moved), self.f(g.x, h.x)), _add(g.x, h.x))

    def inv(self, g: GElement) -> GElement:
        """(u,x)⁻¹ = (−ρ(x)⁻¹(u + f(x,x⁻¹)), x⁻¹)."""
        x_inv = _neg(g.x)
        back = self.rho_at(x_inv).apply(_add(g.u, self.f(g.x, x_inv)))
        return GElement(_neg(back), x_inv)

    def section(self, generator: int) -> GElement:
        x = (1, 0) if generator == 1 else (0, 1)
        return GElement((0,) * self.rank, x)

    def decompose(self, g: GElement) -> tuple[tuple, bool]:
        return g.u, g.x == EPSILON


def _geometric_sum(gamma: IntMatrix, n: int) -> IntMatrix:
    """Σ_{j<n} γ^j for n ≥ 0 and −Σ_{j=1}^{|n|} γ^{−j} for n < 0."""
    k = gamma.rows
    total = IntMatrix.zeros(k, k)
    if n >= 0:
        term = IntMatrix.identity(k)
        for _ in range(n):
            total = total + term
            term = term @ gamma
        return total
    step = gamma.inverse_unimodular()
    term = step
    for _ in range(-n):
        total = total - term
        term = term @ step
    return total


def synthesize_extension(rho: Representation, t: Sequence[int]) -> ExtensionModel:
    """
    The group generated by Z², A, B with A·m·A⁻¹ = ρ(a)m, B·m·B⁻¹ = ρ(b)m and
    A·B·A⁻¹·B⁻¹ = t, written in normal form m·A^p·B^q. Moving B^q past A^p′
    leaves −N_β(q)·N_α(p′)·t behind, giving

        f((p,q),(p′,q′)) = −α^p · N_β(q) · N_α(p′) · t.
    """
    _require_torus(rho)
    t = tuple(int(v) for v in t)
    if len(t) != rho.module_rank:
        raise DimensionMismatch(f"target of length {len(t)} for rank {rho.module_rank}")
    alpha, beta = rho.images

    def f(x, y):
        p, q = x
        p2, _ = y
        if q == 0 or p2 == 0 or not any(t):
            return (0,) * len(t)
        left = alpha.power(p) @ _geometric_sum(beta, q) @ _geometric_sum(alpha, p2)
        return _neg(left.apply(t))

    logger.debug("synthesized extension over %s with t=%s", rho.surface.label(), t)
    return ExtensionModel(rho, PointCocycle(f, ring="Z", rank=len(t)), target=t)


def perturb_by_coboundary(
    ext: ExtensionModel, g: Callable[[TorusElement], tuple]
) -> ExtensionModel:
    """Same ρ, cocycle f + δg. g must be normalized: g(ε) = 0."""
    if any(g(EPSILON)):
        raise DimensionMismatch("coboundary perturbation needs g(ε) = 0")
    inner = ext.cocycle

    def f(x, y):
        return _add(inner(x, y), coboundary_value(ext.rho_at, g, x, y))

    return ExtensionModel(ext.rho, PointCocycle(f, ring=inner.ring, rank=inner.rank), ext.target)


def heisenberg_extension(localized: bool = False) -> ExtensionModel:
    """ℋ as Z ×_f Z² with f((b,c),(y,z)) = b·z; localized gives ℋ_f0."""
    rho = trivial_representation(SurfaceSpec.orientable(1), module_rank=1)
    cocycle = fibrewise_localize(HEISENBERG_COCYCLE) if localized else HEISENBERG_COCYCLE
    return ExtensionModel(rho, cocycle)


# ----------------------------------------------------------------------
# Lifting ρ into Aut(ℋ_f0)
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaLift:
    rho: Representation
    lifts: tuple[HeisAut, ...]

    def at(self, x: Sequence[int]) -> HeisAut:
        """σ(p,q) = A₁^p ∘ A₂^q on the torus group."""
        p, q = x
        return aut_compose(aut_pow(self.lifts[0], p), aut_pow(self.lifts[1], q))

    def tops(self) -> list[list]:
        return [[fraction_to_json(v) for v in A.u] for A in self.lifts]


def _relator_in_aut(relator, lifts) -> HeisAut:
    return evaluate_word(relator, lifts, aut_compose, aut_inverse, AUT_IDENTITY)


def lift_representation(rho: Representation) -> SigmaLift:
    """
    Lift each ρ(xᵢ) to (uᵢ / ρ(xᵢ)) so that the relator evaluates to the
    identity automorphism. The relator's top row is affine in the unknown
    tops; probe it at zero and at unit vectors and solve over Q.
    """
    surface = rho.surface
    if surface.kind is not SurfaceKind.ORIENTABLE_CLOSED or surface.genus < 1:
        raise InvalidSurface(f"σ-lifts need a closed orientable base of genus >= 1, got {surface.label()}")
    if not rho.symplectic or rho.module_rank != 2:
        raise NotSymplectic("σ-lifts need ρ into SL(2,Z)")

    relator = presentation_of(surface).relator
    n = len(rho.images)

    def lifts_for(z):
        return [HeisAut((z[2 * i], z[2 * i + 1]), m) for i, m in enumerate(rho.images)]

    def relator_top(z):
        value = _relator_in_aut(relator, lifts_for(z))
        if not value.m.is_identity():
            raise NormalizationFailure("relator bottom block is not I")
        return value.u

    zero = [Fraction(0)] * (2 * n)
    constant = relator_top(zero)
    columns = []
    for j in range(2 * n):
        probe = list(zero)
        probe[j] = Fraction(1)
        columns.append(_add(relator_top(probe), _neg(constant)))
    coefficients = [[col[r] for col in columns] for r in range(2)]

    solution = solve_linear_rational(coefficients, _neg(constant))
    if solution is None:
        raise NoSolution(f"no top-row correction kills the relator defect {constant}")

    lifts = tuple(lifts_for(solution))
    check = _relator_in_aut(relator, lifts)
    if check != AUT_IDENTITY:
        raise NoSolution(f"corrected lifts leave relator value {check}")

    logger.debug("σ-lift tops %s (defect at zero %s)", [A.u for A in lifts], constant)
    return SigmaLift(rho, lifts)


# ----------------------------------------------------------------------
# Fibre product Π
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PiElement:
    g: GElement
    aut: HeisAut


def make_pi_element(ext: ExtensionModel, g: GElement, aut: HeisAut) -> PiElement:
    if ext.rho_at(g.x) != aut.m:
        raise IncompatiblePair(
            f"ρ({g.x}) = {ext.rho_at(g.x).to_lists()} but ρ₁ = {aut.m.to_lists()}"
        )
    return PiElement(g, aut)


def pi_identity(ext: ExtensionModel) -> PiElement:
    return PiElement(ext.identity(), AUT_IDENTITY)


def pi_mul(ext: ExtensionModel, p: PiElement, q: PiElement) -> PiElement:
    return PiElement(ext.mul(p.g, q.g), aut_compose(p.aut, q.aut))


def pi_inv(ext: ExtensionModel, p: PiElement) -> PiElement:
    return PiElement(ext.inv(p.g), aut_inverse(p.aut))


def lam(h: HeisElement) -> GElement:
    """λ(a,b,c) = ((b,c), ε)."""
    return GElement((h.b, h.c), EPSILON)


def mu(h: HeisElement) -> PiElement:
    """μ(a,b,c) = (λ(a,b,c), ι_(a,b,c)); independent of a."""
    return PiElement(lam(h), aut_inner(h))


def huebschmann_F(
    x: Sequence[int], y: Sequence[int], sigma: SigmaLift, ext: ExtensionModel
) -> tuple[Fraction, Fraction]:
    """
    P = T(x)·T(y)·T(xy)⁻¹ with T(z) = ((0, z), σ(z)). P lies over ε with
    bottom block I, so P = μ(w)·J(φ) where w is P's fibre part and
    J(φ) = ((0, ε), (φ / I)); returns φ = top(P) − ψ(w).
    """
    x, y = tuple(x), tuple(y)

    def T(z):
        return PiElement(GElement((0, 0), z), sigma.at(z))

    P = pi_mul(ext, pi_mul(ext, T(x), T(y)), pi_inv(ext, T(_add(x, y))))
    if P.g.x != EPSILON:
        raise NormalizationFailure(f"P lies over {P.g.x}, not ε")
    if not P.aut.m.is_identity():
        raise NormalizationFailure(f"P has bottom block {P.aut.m.to_lists()}")

    w = P.g.u
    shift = psi(w)
    return (P.aut.u[0] - shift[0], P.aut.u[1] - shift[1])


def F_coboundary(ext: ExtensionModel, sigma: SigmaLift, x, y, z) -> tuple[Fraction, ...]:
    """δF(x,y,z) with the dual action on Q²; zero for a cocycle."""
    first = dual_action(ext.rho_at(x), huebschmann_F(y, z, sigma, ext))
    terms = (
        first,
        _neg(huebschmann_F(_add(x, y), z, sigma, ext)),
        huebschmann_F(x, _add(y, z), sigma, ext),
        _neg(huebschmann_F(x, y, sigma, ext)),
    )
    total = (Fraction(0), Fraction(0))
    for term in terms:
        total = _add(total, term)
    return total


# ----------------------------------------------------------------------
# Verification
# ----------------------------------------------------------------------

@dataclass
class VerificationReport:
    seed: int
    bound: int
    samples: int
    target: tuple
    passed: int = 0
    failures: list = field(default_factory=list)
    cocycle_failures: int = 0
    lift_tops: list = field(default_factory=list)
    class_coords: tuple = ()
    class_is_torsion: bool = False
    class_matches_target: bool = False
    rational_image: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failures and self.cocycle_failures == 0 and self.class_matches_target

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "bound": self.bound,
            "samples": self.samples,
            "t": list(self.target),
            "passed": self.passed,
            "failed": len(self.failures),
            "failures": self.failures,
            "cocycle_failures": self.cocycle_failures,
            "lift_tops": self.lift_tops,
            "class": {
                "coords": list(self.class_coords),
                "is_torsion": self.class_is_torsion,
                "matches_t": self.class_matches_target,
                "rational_image": [fraction_to_json(v) for v in self.rational_image],
            },
            "ok": self.ok,
        }


def verify_huebschmann_identity(
    rho: Representation,
    t: Sequence[int],
    sample_bound: int = DEFAULT_BOUND,
    sample_count: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """
    Check ψ(f(x,y)) = −F(x,y) on sampled pairs with coordinates in
    [−bound, bound], plus the cocycle identity of F on a third sampled
    element per pair. Samples are drawn from random.Random(seed).
    """
    _require_torus(rho)
    if not rho.symplectic:
        raise NotSymplectic("verification needs ρ into SL(2,Z)")

    ext = synthesize_extension(rho, t)
    sigma = lift_representation(rho)
    rng = random.Random(seed)
    report = VerificationReport(seed, sample_bound, sample_count, ext.target)
    report.lift_tops = sigma.tops()

    def draw():
        return (rng.randint(-sample_bound, sample_bound), rng.randint(-sample_bound, sample_bound))

    for _ in range(sample_count):
        x, y, z = draw(), draw(), draw()
        psi_f = psi(ext.f(x, y))
        F = huebschmann_F(x, y, sigma, ext)
        if _add(psi_f, F) == (0, 0):
            report.passed += 1
        else:
            report.failures.append({
                "x": list(x),
                "y": list(y),
                "psi_f": [fraction_to_json(v) for v in psi_f],
                "F": [fraction_to_json(v) for v in F],
            })
        if any(F_coboundary(ext, sigma, x, y, z)):
            report.cocycle_failures += 1

    c = class_of_cocycle(ext)
    context = cohomology_context(rho.surface, rho)
    report.class_coords = c.coords
    report.class_is_torsion = is_torsion_class(c)
    report.class_matches_target = c == context.class_of(ext.target)
    report.rational_image = rational_image(c)

    logger.info(
        "verified %d/%d samples for t=%s (seed %d)",
        report.passed, sample_count, ext.target, seed,
    )
    return report
