import random

import pytest

from torus_bundles import config
from torus_bundles.selftest import CHECKS, identity_instances, run_selftest


@pytest.mark.parametrize("name", list(CHECKS))
def test_check_passes_quick(name):
    passed, detail = CHECKS[name](random.Random(f"{config.DEFAULT_SEED}:{name}"), config.QUICK_DIVISOR)
    assert passed, detail


def test_identity_instances_cover_torsion_target():
    instances = identity_instances()
    assert len(instances) == 10
    names = [name for name, _, _ in instances]
    assert names.count("mn-family:2,3") == 4
    assert names.count("kodaira-thurston") == 3


def test_run_selftest_selects_by_name():
    payload = run_selftest(quick=True, names=["kodaira-thurston", "mn-family"])
    assert [c["name"] for c in payload["checks"]] == ["kodaira-thurston", "mn-family"]
    assert payload["passed"] == 2
    assert payload["failed"] == 0
    assert payload["seed"] == config.DEFAULT_SEED
