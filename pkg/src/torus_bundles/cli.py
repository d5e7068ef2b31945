# cli.py
#
# torus-bundles <command> [--input job.json] [--surface S] [--rho R]
#               [--class a,b] [--t a,b] [--bound N] [--samples N] [--seed N]
#               [--expression E] [--quick] [--pretty] [--verbose]
#
# JSON goes to stdout (keys sorted, so identical jobs give identical bytes);
# errors go to stderr as {"error": {"kind", "message"}} with exit code 1 for
# invalid input and 2 for internal failures.

from __future__ import annotations

import argparse
import json
import logging
import sys

from .classification import (
    classify,
    decide_symplectic,
    enumerate_admissible,
)
from .cohomology import cohomology_context, group_to_dict, rational_image
from .errors import InternalError, JobSpecError, TorusBundleError
from .heis_eval import evaluate
from .heisenberg import fraction_to_json, is_central
from .huebschmann import verify_huebschmann_identity
from .jobs import (
    COMMANDS,
    JobSpec,
    load_job,
    merge_overrides,
    parse_rho,
    parse_surface,
    parse_vector,
    validate_job,
)
from .report import render
from .selftest import run_selftest

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Dispatch
# ----------------------------------------------------------------------

def _base_payload(job: JobSpec, rho) -> dict:
    return {
        "command": job.command,
        "surface": job.surface.to_dict(),
        "surface_label": job.surface.label(),
        "rho": rho.to_lists(),
        "symplectic": rho.symplectic,
    }


def _run_classify(job):
    rho = job.representation()
    payload = _base_payload(job, rho)
    h2 = classify(job.surface, rho)
    payload["h2"] = group_to_dict(h2)
    payload["invariant_factors"] = list(h2.invariant_factors)
    return payload


def _run_decide(job):
    rho = job.representation()
    context = cohomology_context(job.surface, rho)
    c = context.class_of(job.class_vector)
    verdict = decide_symplectic(job.surface, rho, c)
    payload = _base_payload(job, rho)
    payload.update({
        "h2": group_to_dict(context.h2),
        "invariant_factors": list(context.h2.invariant_factors),
        "class": c.to_dict(),
        "verdict": verdict.to_dict(),
        "admits": verdict.admits,
        "branch": verdict.branch.value,
    })
    return payload


def _run_enumerate(job):
    rho = job.representation()
    classes = enumerate_admissible(job.surface, rho)
    context = cohomology_context(job.surface, rho)
    payload = _base_payload(job, rho)
    payload.update({
        "h2": group_to_dict(context.h2),
        "invariant_factors": list(context.h2.invariant_factors),
        "count": len(classes),
        "classes": [c.to_dict() for c in classes],
    })
    return payload


def _run_cohomology(job):
    rho = job.representation()
    context = cohomology_context(job.surface, rho)
    payload = _base_payload(job, rho)
    payload.update(context.to_dict())
    if job.class_vector is not None:
        c = context.class_of(job.class_vector)
        payload["class"] = c.to_dict()
        payload["rational_image"] = [fraction_to_json(v) for v in rational_image(c)]
    return payload


def _run_verify(job):
    rho = job.representation()
    report = verify_huebschmann_identity(rho, job.t, job.bound, job.samples, job.seed)
    payload = _base_payload(job, rho)
    payload.update(report.to_dict())
    return payload


def _run_heis_eval(job):
    value = evaluate(job.expression)
    return {
        "command": job.command,
        "expression": job.expression,
        "result": value.to_dict(),
        "central": is_central(value),
    }


def _run_selftest(job):
    return run_selftest(quick=job.quick, seed=job.seed)


HANDLERS = {
    "classify": _run_classify,
    "decide": _run_decide,
    "enumerate": _run_enumerate,
    "cohomology": _run_cohomology,
    "verify-huebschmann": _run_verify,
    "heis-eval": _run_heis_eval,
    "selftest": _run_selftest,
}


def run(job: JobSpec) -> dict:
    """Validate and execute a job, returning its JSON payload."""
    job = validate_job(job)
    logger.debug("running %s", job.command)
    return HANDLERS[job.command](job)


def exit_code_for(payload: dict) -> int:
    if payload.get("command") == "selftest" and payload.get("failed"):
        return 2
    if payload.get("command") == "verify-huebschmann" and not payload.get("ok"):
        return 2
    return 0


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------

class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors become structured JobSpecError objects."""

    def error(self, message):
        raise JobSpecError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="torus-bundles",
        description="Classify symplectic torus bundles over surfaces and check the "
                    "closed 2-form criterion.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", help="JSON job file (bare names resolve under data/jobs/)")
    parser.add_argument("--surface", help="sphere | torus | rp2 | klein | orientable:g | nonorientable:k | open:r")
    parser.add_argument("--rho", help="JSON list of matrices, or a catalog name such as kodaira-thurston, mn-family:2,3, antipodal, trivial")
    parser.add_argument("--class", dest="class_vector", help="class representative a,b")
    parser.add_argument("--t", help="target vector a,b for verify-huebschmann")
    parser.add_argument("--bound", type=int, help="sample coordinate bound")
    parser.add_argument("--samples", type=int, help="number of sampled pairs")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--expression", help="heis-eval expression, e.g. '[(0,1,0),(0,0,1)]'")
    parser.add_argument("--quick", action="store_true", default=None, help="selftest with reduced sample counts")
    parser.add_argument("--pretty", action="store_true", help="render a text table instead of JSON")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    job = load_job(args.input) if args.input else JobSpec(command=args.command)
    if args.input and job.command != args.command:
        job = merge_overrides(job, command=args.command)
    return merge_overrides(
        job,
        surface=parse_surface(args.surface) if args.surface else None,
        rho=parse_rho(args.rho) if args.rho else None,
        class_vector=parse_vector(args.class_vector, "class") if args.class_vector else None,
        t=parse_vector(args.t, "t") if args.t else None,
        bound=args.bound,
        samples=args.samples,
        seed=args.seed,
        expression=args.expression,
        quick=args.quick,
    )


def _fail(error: TorusBundleError | Exception, code: int) -> int:
    if isinstance(error, TorusBundleError):
        body = error.to_dict()
    else:
        body = {"kind": InternalError.kind, "message": f"{type(error).__name__}: {error}"}
    print(json.dumps({"error": body}, sort_keys=True, ensure_ascii=False), file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except TorusBundleError as exc:
        return _fail(exc, 1)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        payload = run(job_from_args(args))
    except InternalError as exc:
        return _fail(exc, 2)
    except TorusBundleError as exc:
        return _fail(exc, 1)
    except Exception as exc:  # noqa: BLE001
        logger.debug("unexpected failure", exc_info=True)
        return _fail(exc, 2)

    if args.pretty:
        print(render(payload))
    else:
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    return exit_code_for(payload)


if __name__ == "__main__":
    sys.exit(main())
