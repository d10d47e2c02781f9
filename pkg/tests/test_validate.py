"""The self-check suite: structure of the report, and that it can actually fail."""

import json

import numpy as np
import pytest

import smcflow.engine as engine
from smcflow.engine import UpdateMode
from smcflow.network import build_path_graph, laplacian_spectral_radius
from smcflow.validate import CHECK_NAMES, run_validation


@pytest.fixture(scope="module")
def quick_report():
    return run_validation(quick=True)


def test_quick_run_passes(quick_report):
    assert quick_report.passed
    assert quick_report.quick
    assert all(check.passed for check in quick_report.checks)


def test_report_covers_every_check_in_order(quick_report):
    assert tuple(check.name for check in quick_report.checks) == CHECK_NAMES
    assert len(CHECK_NAMES) == 11


def test_report_lines_format(quick_report):
    lines = quick_report.lines()
    assert len(lines) == 11
    for line, name in zip(lines, CHECK_NAMES):
        assert line.startswith(f"[PASS] {name}: ")


def test_report_serializes_to_json(quick_report):
    payload = quick_report.to_dict()
    text = json.dumps(payload)
    restored = json.loads(text)
    assert restored["passed"] is True
    assert [c["name"] for c in restored["checks"]] == list(CHECK_NAMES)
    oracle_block = restored["ensemble_vs_oracle"]
    assert set(oracle_block) >= {
        "terminal_mean", "terminal_mean_se", "exact_mean",
        "terminal_variance", "terminal_variance_se", "exact_variance",
        "series",
    }
    assert set(oracle_block["series"]) == {
        "times", "energy_mean", "exact_energy_mean",
        "graph_mean_variance", "exact_graph_mean_variance",
    }


def test_report_carries_oracle_comparison(quick_report):
    # The comparison block must show simulated statistics whose error bars
    # straddle the closed-form curves: means within three standard errors
    # plus the step-size bias allowance, variances within a band.
    block = quick_report.ensemble_vs_oracle
    estimate = np.array(block["terminal_mean"])
    exact = np.array(block["exact_mean"])
    se = np.array(block["terminal_mean_se"])
    u0 = np.array(block["initial"])
    lam_max = laplacian_spectral_radius(build_path_graph(len(u0)))
    bias = 0.5 * lam_max**2 * block["t_end"] * 0.01 * float(np.linalg.norm(u0))
    assert np.all(np.abs(estimate - exact) <= 3.0 * se + bias)

    variance = np.array(block["terminal_variance"])
    exact_variance = np.array(block["exact_variance"])
    assert np.all(np.abs(variance - exact_variance) <= 0.3 * exact_variance)

    series = block["series"]
    assert series["times"][0] == 0.0
    assert series["exact_graph_mean_variance"][-1] == pytest.approx(1e-3)


def test_suite_detects_a_noise_scaling_defect(monkeypatch):
    # A stepper that injects twice the requested noise must be caught: the
    # realized quadratic variation comes out near four times its target.
    def overdriven(net, u, dt, sigma, xi):
        return engine._step_sync(net, u, dt, sigma, 2.0 * np.asarray(xi))

    monkeypatch.setitem(engine._STEPPERS, UpdateMode.SYNCHRONOUS, overdriven)
    report = run_validation(quick=True)
    assert not report.passed
    by_name = {check.name: check for check in report.checks}
    assert not by_name["quadratic-variation"].passed
    assert not by_name["covariance"].passed
    # Checks that never integrate noise still pass under the broken stepper.
    assert by_name["curvature-laplacian-equivalence"].passed
    assert by_name["chain-stencil-fidelity"].passed
