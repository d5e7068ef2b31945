import json

import pytest

from torus_bundles.catalog import RP2, TORUS
from torus_bundles.cli import exit_code_for, run
from torus_bundles.errors import InvalidSurface, JobSpecError, RelatorNotSatisfied
from torus_bundles.jobs import (
    JobSpec,
    job_from_dict,
    list_jobs,
    load_job,
    merge_overrides,
    parse_rho,
    parse_surface,
    parse_vector,
    validate_job,
)
from torus_bundles.surfaces import SurfaceSpec


# ----------------------------------------------------------------------
# Field parsers
# ----------------------------------------------------------------------

@pytest.mark.parametrize("text, surface", [
    ("sphere", SurfaceSpec.orientable(0)),
    ("torus", SurfaceSpec.orientable(1)),
    ("rp2", SurfaceSpec.nonorientable(1)),
    ("klein", SurfaceSpec.nonorientable(2)),
    ("orientable:3", SurfaceSpec.orientable(3)),
    ("nonorientable:4", SurfaceSpec.nonorientable(4)),
    ("open:2", SurfaceSpec.open(2)),
    ('{"kind": "open", "genus": 1}', SurfaceSpec.open(1)),
])
def test_parse_surface(text, surface):
    assert parse_surface(text) == surface


def test_parse_surface_errors():
    with pytest.raises(JobSpecError):
        parse_surface("donut")
    with pytest.raises(JobSpecError):
        parse_surface("orientable:x")
    with pytest.raises(InvalidSurface):
        parse_surface("nonorientable:0")


def test_parse_rho():
    assert parse_rho("mn-family:2,3") == "mn-family:2,3"
    assert parse_rho("[[[1, 0], [0, 1]]]") == [[[1, 0], [0, 1]]]
    with pytest.raises(JobSpecError):
        parse_rho("hopf")
    with pytest.raises(JobSpecError):
        parse_rho([[[1, 0.5], [0, 1]]])
    with pytest.raises(JobSpecError):
        parse_rho("[[[1, 0]")


def test_parse_vector():
    assert parse_vector("1, -2", "class") == (1, -2)
    assert parse_vector([0, 1], "class") == (0, 1)
    with pytest.raises(JobSpecError):
        parse_vector("a,b", "class")
    with pytest.raises(JobSpecError):
        parse_vector([True, 1], "class")


# ----------------------------------------------------------------------
# Loading and validation
# ----------------------------------------------------------------------

def test_unknown_keys_rejected():
    with pytest.raises(JobSpecError):
        job_from_dict({"command": "classify", "colour": "blue"})
    with pytest.raises(JobSpecError):
        job_from_dict({"surface": "torus"})


def test_load_job_by_bare_name():
    job = load_job("kodaira_thurston_classify")
    assert job.command == "classify"
    assert job.surface == TORUS
    assert job.rho == "kodaira-thurston"


def test_load_job_missing(tmp_path):
    with pytest.raises(JobSpecError):
        load_job(tmp_path / "nothing.json")


def test_load_job_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(JobSpecError):
        load_job(path)


def test_overrides_win():
    job = merge_overrides(load_job("kodaira_thurston_decide_zero"), class_vector=(0, 1), seed=None)
    assert job.class_vector == (0, 1)
    assert job.seed == load_job("kodaira_thurston_decide_zero").seed


def test_catalog_rho_fills_surface():
    job = validate_job(JobSpec(command="decide", rho="antipodal", class_vector=(0, 1)))
    assert job.surface == RP2


def test_verify_defaults_to_torus():
    job = validate_job(JobSpec(command="verify-huebschmann", rho="trivial", t=(1, 0)))
    assert job.surface == TORUS


@pytest.mark.parametrize("job", [
    JobSpec(command="explode"),
    JobSpec(command="decide", surface=TORUS, rho="kodaira-thurston"),
    JobSpec(command="classify", surface=TORUS),
    JobSpec(command="classify", rho="trivial"),
    JobSpec(command="verify-huebschmann", rho="trivial"),
    JobSpec(command="heis-eval"),
    JobSpec(command="classify", surface=TORUS, rho="trivial", samples=-1),
])
def test_validate_job_errors(job):
    with pytest.raises(JobSpecError):
        validate_job(job)


def test_catalog_surface_conflict():
    job = JobSpec(command="classify", surface=RP2, rho="kodaira-thurston")
    with pytest.raises(JobSpecError):
        run(job)


def test_bad_matrices_surface_as_validation_errors():
    job = JobSpec(command="classify", surface=TORUS, rho=[[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
    with pytest.raises(RelatorNotSatisfied):
        run(job)


# ----------------------------------------------------------------------
# Fixtures
# ----------------------------------------------------------------------

def test_fixtures_present():
    names = {path.stem for path in list_jobs()}
    assert {"kodaira_thurston_classify", "sphere_decide", "verify_kodaira_thurston"} <= names


@pytest.mark.parametrize("path", list_jobs(), ids=lambda p: p.stem)
def test_every_fixture_runs(path):
    payload = run(load_job(path))
    assert payload["command"] == json.loads(path.read_text(encoding="utf-8"))["command"]
    assert exit_code_for(payload) == 0
    json.dumps(payload, sort_keys=True)


@pytest.mark.parametrize("name, admits, branch", [
    ("kodaira_thurston_decide_zero", True, "ClosedAspherical-TorsionTest"),
    ("kodaira_thurston_decide_generator", False, "ClosedAspherical-TorsionTest"),
    ("sphere_decide", False, "Sphere-TrivialityTest"),
    ("rp2_antipodal_decide", False, "RP2-NontrivialRho"),
    ("klein_decide", True, "ClosedAspherical-TorsionTest"),
])
def test_fixture_verdicts(name, admits, branch):
    payload = run(load_job(name))
    assert payload["admits"] is admits
    assert payload["branch"] == branch


def test_fixture_groups():
    assert run(load_job("kodaira_thurston_classify"))["invariant_factors"] == [0]
    assert run(load_job("rp2_trivial_classify"))["invariant_factors"] == [2, 2]
    assert run(load_job("mn_family_enumerate"))["count"] == 6
