# selftest.py
#
# Registry of named acceptance checks. Each check takes (rng, scale) where
# scale divides the randomized sample counts (1 normally, QUICK_DIVISOR for
# --quick) and returns (passed, detail).

from __future__ import annotations

import logging
import random

from . import config
from .catalog import (
    IDENTITY,
    MINUS_IDENTITY,
    RP2,
    SPHERE,
    TORUS,
    antipodal,
    kodaira_thurston,
    mn_family,
    random_representation,
    random_sl2z,
)
from .classification import (
    classify,
    decide_symplectic,
    enumerate_admissible,
    principal_bundle_verdict,
)
from .cohomology import (
    class_of_cocycle,
    coinvariants,
    cohomology_context,
    cyclic_cohomology_z2,
    rational_class_of_cocycle,
    rational_image,
)
from .exact_algebra import IntMatrix, cokernel, is_torsion, smith_normal_form
from .heisenberg import (
    GEN_X,
    GEN_Y,
    HeisAut,
    HeisElement,
    aut_compose,
    aut_inner,
    endomorphism_from_images,
    endomorphism_inverse,
    heis_comm,
    heis_conj,
    heis_inv,
    heis_mul,
    heis_pow,
    is_central,
    kernel_element,
    rho1,
)
from .huebschmann import (
    heisenberg_extension,
    perturb_by_coboundary,
    synthesize_extension,
    verify_huebschmann_identity,
)
from .selftest_helpers import (
    oracle_comm,
    oracle_conj,
    oracle_inv,
    oracle_mul,
    oracle_pow,
    random_cochain,
    random_heis,
    random_int_matrix,
    random_rational,
    snf_contract_violations,
)
from .surfaces import SurfaceSpec, trivial_representation

logger = logging.getLogger(__name__)


def _count(full: int, scale: int) -> int:
    return max(1, full // scale)


# ----------------------------------------------------------------------
# Worked examples
# ----------------------------------------------------------------------

def check_kodaira_thurston(rng, scale):
    rho = kodaira_thurston()
    h2 = classify(TORUS, rho)
    admissible = enumerate_admissible(TORUS, rho)
    passed = h2.invariant_factors == (0,) and len(admissible) == 1 and admissible[0].is_zero
    return passed, f"H^2 = {h2.describe()}, {len(admissible)} admissible"


def check_mn_family(rng, scale):
    bad = []
    for m in range(5):
        for n in range(5):
            rho = mn_family(m, n)
            h2 = classify(TORUS, rho)
            count = len(enumerate_admissible(TORUS, rho))
            expected = cokernel(IntMatrix.from_rows([[m, 0], [0, n]]))
            if h2 != expected or count != h2.torsion_order():
                bad.append((m, n))
            elif m and n and (h2.order() != m * n or count != m * n):
                bad.append((m, n))
            elif not (m and n) and h2.free_rank == 0:
                bad.append((m, n))
    return not bad, f"mismatches at {bad}" if bad else "Z_m + Z_n for m, n in 0..4"


def check_genus_zero(rng, scale):
    problems = []

    sphere = trivial_representation(SPHERE)
    ctx = cohomology_context(SPHERE, sphere)
    if ctx.h2.invariant_factors != (0, 0):
        problems.append("S^2 H^2")
    if decide_symplectic(SPHERE, sphere, ctx.class_of((1, 0))).admits:
        problems.append("S^2 nonzero class admits")
    if not decide_symplectic(SPHERE, sphere, ctx.zero_class()).admits:
        problems.append("S^2 zero class")

    flat = trivial_representation(RP2)
    ctx = cohomology_context(RP2, flat)
    if ctx.h2.invariant_factors != (2, 2):
        problems.append("RP^2 trivial H^2")
    if not all(decide_symplectic(RP2, flat, ctx.class_from_coords(c)).admits for c in ctx.h2.torsion_elements()):
        problems.append("RP^2 trivial admits")

    twisted = antipodal()
    ctx = cohomology_context(RP2, twisted)
    if ctx.h2.invariant_factors != (0, 0):
        problems.append("RP^2 twisted H^2")
    if decide_symplectic(RP2, twisted, ctx.class_of((0, 1))).admits:
        problems.append("RP^2 twisted nonzero class admits")

    for p in range(5):
        for q, T in ((0, MINUS_IDENTITY), (2, IDENTITY)):
            group = cyclic_cohomology_z2(T, p)
            if (q == 0 and p % 2 == 1) or (q == 2 and p > 0 and p % 2 == 0):
                expected = (2, 2)
            elif (p, q) == (0, 2):
                expected = (0, 0)
            else:
                expected = ()
            if group.invariant_factors != expected:
                problems.append(f"E2[{p},{q}]")
    return not problems, ", ".join(problems) or "S^2, RP^2 and the Z/2 table agree"


# ----------------------------------------------------------------------
# Heisenberg group
# ----------------------------------------------------------------------

def check_heisenberg_oracle(rng, scale):
    samples = _count(config.HEISENBERG_ORACLE_SAMPLES, scale)
    mismatches = 0
    for _ in range(samples):
        g, h = random_heis(rng), random_heis(rng)
        n = rng.randint(-6, 6)
        ok = (
            heis_mul(g, h) == oracle_mul(g, h)
            and heis_inv(g) == oracle_inv(g)
            and heis_conj(g, h) == oracle_conj(g, h)
            and heis_comm(g, h) == oracle_comm(g, h)
            and heis_pow(g, n) == oracle_pow(g, n)
            and is_central(g) == (heis_comm(g, GEN_X) == heis_comm(g, GEN_Y) == HeisElement(0, 0, 0))
        )
        mismatches += not ok
    return mismatches == 0, f"{samples} samples, {mismatches} mismatches"


def check_heisenberg_class(rng, scale):
    c = class_of_cocycle(heisenberg_extension())
    generates = c.context.h2.invariant_factors == (0,) and c.coords in ((1,), (-1,))
    rational = rational_class_of_cocycle(heisenberg_extension(localized=True))
    nonzero = any(rational)
    return generates and nonzero, f"class coords {list(c.coords)}, rational image {[str(v) for v in rational]}"


def check_automorphisms(rng, scale):
    samples = _count(config.AUTOMORPHISM_SAMPLES, scale)
    problems = 0
    for _ in range(samples):
        img1 = HeisElement(random_rational(rng), rng.randint(-3, 3), rng.randint(-3, 3))
        img2 = HeisElement(random_rational(rng), rng.randint(-3, 3), rng.randint(-3, 3))
        e = endomorphism_from_images(img1, img2)
        if e.is_automorphism() != (endomorphism_inverse(e) is not None):
            problems += 1

        u = (random_rational(rng), random_rational(rng))
        v = (random_rational(rng), random_rational(rng))
        if aut_compose(kernel_element(u), kernel_element(v)) != kernel_element((u[0] + v[0], u[1] + v[1])):
            problems += 1

        x, y = random_heis(rng), random_heis(rng)
        if aut_compose(aut_inner(x), aut_inner(y)) != aut_inner(heis_mul(x, y)):
            problems += 1

        A = _random_aut(rng)
        B = _random_aut(rng)
        if rho1(aut_compose(A, B)) != rho1(A) @ rho1(B):
            problems += 1
    return problems == 0, f"{samples} samples, {problems} failures"


def _random_aut(rng) -> HeisAut:
    return HeisAut((random_rational(rng), random_rational(rng)), random_sl2z(rng))


# ----------------------------------------------------------------------
# Huebschmann construction
# ----------------------------------------------------------------------

def identity_instances():
    instances = []
    for name, rho in (("trivial", trivial_representation(TORUS)), ("kodaira-thurston", kodaira_thurston()), ("mn-family:2,3", mn_family(2, 3))):
        targets = [(0, 0), (1, 0), (0, 1)]
        ctx = cohomology_context(TORUS, rho)
        torsion = [c for c in ctx.h2.torsion_elements() if any(c)]
        if torsion:
            targets.append(ctx.class_from_coords(torsion[0]).representative)
        instances.extend((name, rho, t) for t in targets)
    return instances


def check_huebschmann_identity(rng, scale):
    samples = _count(config.DEFAULT_SAMPLES, scale)
    failing = []
    instances = identity_instances()
    for name, rho, t in instances:
        report = verify_huebschmann_identity(rho, t, config.DEFAULT_BOUND, samples, config.DEFAULT_SEED)
        if not report.ok:
            failing.append(f"{name} t={list(t)}")
    return not failing, f"{len(instances)} instances x {samples} pairs" + (f"; failing {failing}" if failing else "")


def check_torsion_coherence(rng, scale):
    samples = _count(config.COHERENCE_SAMPLES, scale)
    problems = 0
    for _ in range(samples):
        genus = rng.randint(1, 3)
        rho = random_representation(rng, genus)
        surface = SurfaceSpec.orientable(genus)
        c = cohomology_context(surface, rho).class_of((rng.randint(-5, 5), rng.randint(-5, 5)))
        torsion = is_torsion(c.context.h2, c.coords)
        if torsion != (not any(rational_image(c))):
            problems += 1
        if decide_symplectic(surface, rho, c).admits != torsion:
            problems += 1
    return problems == 0, f"{samples} samples, {problems} disagreements"


def check_principal_bundles(rng, scale):
    problems = []
    for surface in (SPHERE, TORUS, SurfaceSpec.orientable(2), RP2, SurfaceSpec.nonorientable(2), SurfaceSpec.open(2)):
        rho = trivial_representation(surface)
        ctx = cohomology_context(surface, rho)
        candidates = [ctx.zero_class(), ctx.class_of((1, 0)), ctx.class_of((0, 1))]
        for c in candidates:
            if principal_bundle_verdict(surface, c).admits != decide_symplectic(surface, rho, c).admits:
                problems.append(f"{surface.label()} {list(c.representative)}")
    return not problems, ", ".join(problems) or "agrees with the general decision on six surfaces"


# ----------------------------------------------------------------------
# Structural suites
# ----------------------------------------------------------------------

def check_snf_contract(rng, scale):
    samples = _count(config.SNF_SAMPLES, scale)
    bad = 0
    for _ in range(samples):
        A = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), config.RANDOM_ENTRY_BOUND)
        bad += bool(snf_contract_violations(A, smith_normal_form(A)))
    return bad == 0, f"{samples} matrices, {bad} violations"


def check_chain_complex(rng, scale):
    samples = _count(config.COHERENCE_SAMPLES, scale)
    bad = 0
    for _ in range(samples):
        rho = random_representation(rng, rng.randint(1, 3))
        ctx = cohomology_context(rho.surface, rho)
        bad += not (ctx.d2 @ ctx.d1).is_zero()
        bad += ctx.h2 != coinvariants(rho)
    for rho in (antipodal(), trivial_representation(RP2), trivial_representation(SurfaceSpec.nonorientable(3))):
        ctx = cohomology_context(rho.surface, rho)
        bad += not (ctx.d2 @ ctx.d1).is_zero()
    return bad == 0, f"{samples} representations, {bad} failures"


def check_coboundary_invariance(rng, scale):
    samples = _count(config.COBOUNDARY_SAMPLES, scale)
    rho = mn_family(2, 3)
    ext = synthesize_extension(rho, (1, 2))
    base = class_of_cocycle(ext)
    moved = 0
    for _ in range(samples):
        perturbed = perturb_by_coboundary(ext, random_cochain(rng))
        moved += class_of_cocycle(perturbed) != base
    return moved == 0, f"{samples} perturbations, {moved} changed the class"


CHECKS = {
    "kodaira-thurston": check_kodaira_thurston,
    "mn-family": check_mn_family,
    "genus-zero": check_genus_zero,
    "heisenberg-oracle": check_heisenberg_oracle,
    "heisenberg-class": check_heisenberg_class,
    "automorphism-laws": check_automorphisms,
    "huebschmann-identity": check_huebschmann_identity,
    "torsion-coherence": check_torsion_coherence,
    "principal-bundles": check_principal_bundles,
    "snf-contract": check_snf_contract,
    "chain-complex": check_chain_complex,
    "coboundary-invariance": check_coboundary_invariance,
}


def run_selftest(quick: bool = False, seed: int = config.DEFAULT_SEED, names=None) -> dict:
    scale = config.QUICK_DIVISOR if quick else 1
    checks = []
    for name, check in CHECKS.items():
        if names and name not in names:
            continue
        rng = random.Random(f"{seed}:{name}")
        passed, detail = check(rng, scale)
        logger.info("selftest %s: %s (%s)", name, "pass" if passed else "FAIL", detail)
        checks.append({"name": name, "passed": bool(passed), "detail": detail})
    failed = sum(1 for c in checks if not c["passed"])
    return {
        "command": "selftest",
        "seed": seed,
        "quick": quick,
        "checks": checks,
        "passed": len(checks) - failed,
        "failed": failed,
    }
