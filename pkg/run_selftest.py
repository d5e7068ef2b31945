#!/usr/bin/env python3
"""
run_selftest.py

Edit the configuration block below to choose:
- which checks to run (names from selftest.CHECKS)
- quick or full sample counts
- seed

Prints one line per check. Same as `torus-bundles selftest --pretty`, but
can run a subset.
"""

import logging

from torus_bundles.config import DEFAULT_SEED
from torus_bundles.report import render
from torus_bundles.selftest import CHECKS, run_selftest


if __name__ == "__main__":
    # HUMAN: choose checks here

    # None runs everything; otherwise e.g. ["huebschmann-identity", "snf-contract"]
    chosen_checks = None

    # True divides the randomized sample counts
    quick = False

    seed = DEFAULT_SEED

    # logging.INFO prints each check as it finishes
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    unknown = set(chosen_checks or ()) - set(CHECKS)
    if unknown:
        raise ValueError(f"Unknown checks: {sorted(unknown)}")

    payload = run_selftest(quick=quick, seed=seed, names=chosen_checks)
    print(render(payload))
