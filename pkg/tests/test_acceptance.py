"""Acceptance gate: one test and one printed pass/fail line per criterion.

The full-scale validation suite runs once for the whole session; each test
here asserts a single criterion's verdict and prints its summary line even
when output capture is on, so a plain pytest run shows the scoreboard.
"""

import json
import subprocess
import sys

import pytest

from smcflow.validate import run_validation


@pytest.fixture(scope="session")
def report():
    return run_validation(quick=False)


def _criterion(pytestconfig, report, name):
    check = {c.name: c for c in report.checks}[name]
    line = f"[{'PASS' if check.passed else 'FAIL'}] {check.name}: {check.summary}"
    capman = pytestconfig.pluginmanager.getplugin("capturemanager")
    if capman is not None:
        with capman.global_and_fixture_disabled():
            sys.stdout.write("\n" + line + "\n")
            sys.stdout.flush()
    else:
        print(line)
    assert check.passed, f"{check.name} failed: {check.summary}\n{check.details}"
    return check


def test_curvature_equals_negative_laplacian_action(pytestconfig, report):
    _criterion(pytestconfig, report, "curvature-laplacian-equivalence")


def test_chain_stencil_matches_matrix_free_updates(pytestconfig, report):
    _criterion(pytestconfig, report, "chain-stencil-fidelity")


def test_noise_free_flow_converges_to_heat_semigroup(pytestconfig, report):
    _criterion(pytestconfig, report, "deterministic-flow")


def test_ensemble_mean_tracks_exact_solution(pytestconfig, report):
    _criterion(pytestconfig, report, "weak-mean")


def test_ensemble_covariance_tracks_exact_solution(pytestconfig, report):
    _criterion(pytestconfig, report, "covariance")


def test_pathwise_convergence_is_first_order(pytestconfig, report):
    _criterion(pytestconfig, report, "strong-order")


def test_increment_ledger_closes_and_residual_halves(pytestconfig, report):
    _criterion(pytestconfig, report, "ito-ledger")


def test_terminal_energy_balances_against_oracle(pytestconfig, report):
    _criterion(pytestconfig, report, "energy-balance")


def test_realized_quadratic_variation_matches_injected_noise(pytestconfig, report):
    _criterion(pytestconfig, report, "quadratic-variation")


def test_runs_are_deterministic_and_worker_invariant(pytestconfig, report, tmp_path):
    _criterion(pytestconfig, report, "determinism")
    # The same guarantee at the process level: two CLI invocations with one
    # seed produce byte-identical files.
    cmd = [
        sys.executable, "-m", "smcflow", "simulate",
        "--sites", "5", "--dt", "0.02", "--t-end", "0.2", "--sigma", "0.1",
        "--seed", "4242",
    ]
    for name in ("first.csv", "second.csv"):
        proc = subprocess.run(
            cmd + ["-o", name], cwd=tmp_path, capture_output=True, text=True
        )
        assert proc.returncode == 0, proc.stderr
    first = (tmp_path / "first.csv").read_bytes()
    second = (tmp_path / "second.csv").read_bytes()
    assert first == second
    manifest = json.loads((tmp_path / "first.manifest.json").read_text())
    assert manifest["config"]["seed"] == 4242


def test_legacy_sweep_reproduces_recorded_behavior(pytestconfig, report):
    _criterion(pytestconfig, report, "legacy-sweep")


def test_every_criterion_is_covered(report):
    assert len(report.checks) == 11
    assert report.passed
