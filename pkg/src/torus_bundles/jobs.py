# jobs.py
#
# Job specifications: loading from JSON files under data/jobs/ (or any path),
# parsing the short command-line forms, and schema validation before
# dispatch. See data/jobs/SCHEMA.md.

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .catalog import REPRESENTATIONS, TORUS, resolve_representation
from .config import DEFAULT_BOUND, DEFAULT_SAMPLES, DEFAULT_SEED, JOBS_DIR
from .errors import JobSpecError
from .surfaces import Representation, SurfaceSpec, validate_representation

COMMANDS = (
    "classify",
    "decide",
    "enumerate",
    "cohomology",
    "verify-huebschmann",
    "heis-eval",
    "selftest",
)

SURFACE_ALIASES = {
    "sphere": SurfaceSpec.orientable(0),
    "torus": SurfaceSpec.orientable(1),
    "rp2": SurfaceSpec.nonorientable(1),
    "klein": SurfaceSpec.nonorientable(2),
}

_SURFACE_PREFIXES = {
    "orientable": SurfaceSpec.orientable,
    "orientable-closed": SurfaceSpec.orientable,
    "nonorientable": SurfaceSpec.nonorientable,
    "nonorientable-closed": SurfaceSpec.nonorientable,
    "open": SurfaceSpec.open,
}


@dataclass
class JobSpec:
    command: str
    surface: SurfaceSpec | None = None
    rho: list | str | None = None
    class_vector: tuple[int, ...] | None = None
    t: tuple[int, ...] | None = None
    bound: int = DEFAULT_BOUND
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    expression: str | None = None
    quick: bool = False
    source: str | None = field(default=None, compare=False)

    def representation(self) -> Representation:
        """The validated ρ; matrices are checked against the surface's relator."""
        if self.surface is None:
            raise JobSpecError(f"{self.command} needs a surface")
        if self.rho is None:
            raise JobSpecError(f"{self.command} needs a representation (rho)")
        if isinstance(self.rho, str):
            return resolve_representation(self.rho, self.surface)
        return validate_representation(self.surface, self.rho)


# ----------------------------------------------------------------------
# Field parsers
# ----------------------------------------------------------------------

def parse_surface(value) -> SurfaceSpec:
    """Accept {"kind", "genus"} objects, aliases, and 'kind:genus' strings."""
    if isinstance(value, SurfaceSpec):
        return value
    if isinstance(value, dict):
        return SurfaceSpec.from_dict(value)
    if not isinstance(value, str):
        raise JobSpecError(f"cannot read a surface from {value!r}")

    text = value.strip()
    if text.startswith("{"):
        return SurfaceSpec.from_dict(_json(text, "surface"))
    if text in SURFACE_ALIASES:
        return SURFACE_ALIASES[text]
    prefix, _, genus = text.partition(":")
    builder = _SURFACE_PREFIXES.get(prefix)
    if builder is None or not genus.strip().lstrip("-").isdigit():
        raise JobSpecError(
            f"unknown surface {value!r}; use one of {sorted(SURFACE_ALIASES)} or kind:genus"
        )
    return builder(int(genus))


def parse_rho(value):
    """Nested row-major integer arrays, or a catalog name such as 'mn-family:2,3'."""
    if isinstance(value, list):
        return _check_matrices(value)
    if not isinstance(value, str):
        raise JobSpecError(f"cannot read a representation from {value!r}")
    text = value.strip()
    if text.startswith("["):
        return _check_matrices(_json(text, "rho"))
    if text.partition(":")[0] not in REPRESENTATIONS:
        raise JobSpecError(f"unknown representation {text!r}; known: {sorted(REPRESENTATIONS)}")
    return text


def parse_vector(value, name: str) -> tuple[int, ...]:
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",") if p]
        try:
            return tuple(int(p) for p in parts)
        except ValueError:
            raise JobSpecError(f"{name} must be comma-separated integers, got {value!r}") from None
    if isinstance(value, (list, tuple)) and all(_is_int(v) for v in value):
        return tuple(int(v) for v in value)
    raise JobSpecError(f"{name} must be an array of integers, got {value!r}")


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _check_matrices(value) -> list:
    ok = isinstance(value, list) and all(
        isinstance(m, list) and all(isinstance(r, list) and all(_is_int(v) for v in r) for r in m)
        for m in value
    )
    if not ok:
        raise JobSpecError("rho must be a list of row-major integer matrices")
    return value


def _json(text: str, name: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobSpecError(f"{name} is not valid JSON: {exc}") from None


def _positive_int(value, name: str, minimum: int = 0) -> int:
    if not _is_int(value) or value < minimum:
        raise JobSpecError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return value


# ----------------------------------------------------------------------
# Loading and validation
# ----------------------------------------------------------------------

_KNOWN_KEYS = {
    "command", "surface", "rho", "class", "t", "bound", "samples", "seed",
    "expression", "quick",
}


def job_from_dict(data: dict, source: str | None = None) -> JobSpec:
    if not isinstance(data, dict):
        raise JobSpecError("a job must be a JSON object")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise JobSpecError(f"unknown job keys: {sorted(unknown)}")
    if "command" not in data:
        raise JobSpecError("a job needs a command")

    return JobSpec(
        command=data["command"],
        surface=parse_surface(data["surface"]) if "surface" in data else None,
        rho=parse_rho(data["rho"]) if "rho" in data else None,
        class_vector=parse_vector(data["class"], "class") if "class" in data else None,
        t=parse_vector(data["t"], "t") if "t" in data else None,
        bound=data.get("bound", DEFAULT_BOUND),
        samples=data.get("samples", DEFAULT_SAMPLES),
        seed=data.get("seed", DEFAULT_SEED),
        expression=data.get("expression"),
        quick=bool(data.get("quick", False)),
        source=source,
    )


def load_job(path: str | Path) -> JobSpec:
    """
    Load a job file. Bare names resolve under data/jobs/, so
    load_job("kodaira_thurston_classify") reads data/jobs/kodaira_thurston_classify.json.
    """
    path = Path(path)
    if not path.exists() and not path.suffix:
        path = JOBS_DIR / f"{path}.json"
    if not path.exists():
        raise JobSpecError(f"job file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise JobSpecError(f"{path} is not valid JSON: {exc}") from None
    return job_from_dict(data, source=str(path))


def merge_overrides(job: JobSpec, **overrides) -> JobSpec:
    """Flags win over file values; None means 'not given'."""
    return replace(job, **{k: v for k, v in overrides.items() if v is not None})


def validate_job(job: JobSpec) -> JobSpec:
    """Schema checks per command; fills in the surface of catalog-bound ρ."""
    if job.command not in COMMANDS:
        raise JobSpecError(f"unknown command {job.command!r}; expected one of {list(COMMANDS)}")

    _positive_int(job.bound, "bound")
    _positive_int(job.samples, "samples")
    _positive_int(job.seed, "seed")

    if job.command == "verify-huebschmann" and job.surface is None:
        job = replace(job, surface=TORUS)

    if job.surface is None and isinstance(job.rho, str):
        bound = REPRESENTATIONS[job.rho.partition(":")[0]]["surface"]
        if bound is not None:
            job = replace(job, surface=bound)

    if job.command in ("classify", "decide", "enumerate", "cohomology", "verify-huebschmann"):
        if job.surface is None:
            raise JobSpecError(f"{job.command} needs a surface")
        if job.rho is None:
            raise JobSpecError(f"{job.command} needs a representation (rho)")
    if job.command == "decide" and job.class_vector is None:
        raise JobSpecError("decide needs a class")
    if job.command == "verify-huebschmann" and job.t is None:
        raise JobSpecError("verify-huebschmann needs a target vector t")
    if job.command == "heis-eval" and not job.expression:
        raise JobSpecError("heis-eval needs an expression")
    return job


def list_jobs(directory: Path = JOBS_DIR) -> list[Path]:
    return sorted(directory.glob("*.json"))
