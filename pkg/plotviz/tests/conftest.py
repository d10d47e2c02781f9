"""Shared fixtures: real input files produced by the simulation tool.

The plotting package only ever sees files, so the fixtures invoke the
installed simulation CLI as a subprocess and hand the resulting artifacts
to the tests.
"""

import subprocess
import sys

import matplotlib
import pytest

matplotlib.use("Agg")

SIM = [sys.executable, "-m", "smcflow"]


def run_sim(args, cwd):
    proc = subprocess.run(
        SIM + list(args), cwd=cwd, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def artifact_dir(tmp_path_factory):
    """One directory holding every simulation artifact the tests read."""
    out = tmp_path_factory.mktemp("artifacts")
    run_sim(
        [
            "simulate", "--sites", "10", "--t-end", "1.0", "--dt", "0.01",
            "--sigma", "0.1", "--seed", "42", "-o", "trajectory.csv",
            "--energy-ledger", "ledger.csv",
        ],
        out,
    )
    run_sim(
        [
            "ensemble", "--sites", "6", "--dt", "0.01", "--t-end", "0.5",
            "--sigma", "0.1", "--seed", "11", "--initial", "zeros",
            "--paths", "400", "--oracle", "-o", "ensemble.json",
        ],
        out,
    )
    run_sim(
        [
            "ensemble", "--sites", "4", "--dt", "0.05", "--t-end", "0.25",
            "--sigma", "0", "--seed", "1", "--initial", "1,0,0,-1",
            "--paths", "16", "--oracle", "-o", "ensemble_noise_free.json",
        ],
        out,
    )
    run_sim(["validate", "--quick", "-o", "validation.json"], out)
    return out
