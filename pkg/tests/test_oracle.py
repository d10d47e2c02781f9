"""Closed-form moments checked against independent computations.

The references here deliberately avoid the oracle's own code path: eigenvalues
worked out from characteristic polynomials by hand, matrix exponentials from
scipy, and covariance integrals done by brute-force quadrature.
"""

import numpy as np
import pytest
import scipy.linalg

from smcflow.network import build_from_pairs, build_path_graph, laplacian_matrix
from smcflow.oracle import (
    exact_covariance,
    exact_mean,
    oracle_for_network,
    spectral_decompose,
    stationary_deviation_covariance,
)


def _covariance_by_quadrature(lap, sigma, t, steps=10000):
    """Trapezoid integral of exp(-L s) Sigma^2 exp(-L s) over [0, t]."""
    h = t / steps
    eh = scipy.linalg.expm(-lap * h)
    sig2 = np.diag(np.asarray(sigma, dtype=float) ** 2)
    p = np.eye(len(lap))
    total = 0.5 * (p @ sig2 @ p.T)
    for _ in range(steps - 1):
        p = p @ eh
        total += p @ sig2 @ p.T
    p = p @ eh
    total += 0.5 * (p @ sig2 @ p.T)
    return h * total


def test_path3_eigenvalues_by_characteristic_polynomial():
    # det(L - x I) for the 3-chain expands to -x (x - 1) (x - 3), so the
    # spectrum is exactly {0, 1, 3}.
    oracle = oracle_for_network(build_path_graph(3), 0.1)
    assert np.allclose(oracle.eigenvalues, [0.0, 1.0, 3.0], atol=1e-12)


def test_path2_eigenvalues_and_hand_covariance():
    # Two coupled sites: modes (1,1)/sqrt2 with rate 0 and (1,-1)/sqrt2 with
    # rate 2, so Cov(t) = s^2 t J + s^2 (1 - e^{-4t})/4 K with J, K the
    # projectors onto those modes.
    sigma = 0.3
    t = 0.8
    oracle = oracle_for_network(build_path_graph(2), sigma)
    assert np.allclose(oracle.eigenvalues, [0.0, 2.0], atol=1e-12)
    j = np.array([[0.5, 0.5], [0.5, 0.5]])
    k = np.array([[0.5, -0.5], [-0.5, 0.5]])
    expected = sigma**2 * t * j + sigma**2 * (1.0 - np.exp(-4.0 * t)) / 4.0 * k
    assert np.allclose(exact_covariance(oracle, t), expected, atol=1e-13)


def test_exact_mean_matches_scipy_expm():
    rng = np.random.default_rng(5150)
    for net in (
        build_path_graph(5),
        build_from_pairs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]),
    ):
        lap = laplacian_matrix(net)
        oracle = oracle_for_network(net, 0.2)
        for t in (0.0, 0.3, 1.0, 4.0):
            u0 = rng.normal(size=net.site_count)
            reference = scipy.linalg.expm(-lap * t) @ u0
            assert np.allclose(exact_mean(oracle, u0, t), reference, atol=1e-10)


def test_exact_mean_preserves_constant_vectors():
    oracle = oracle_for_network(build_path_graph(7), 0.1)
    u0 = np.full(7, 4.2)
    assert np.allclose(exact_mean(oracle, u0, 13.0), u0, atol=1e-10)


def test_exact_covariance_matches_quadrature_uniform_sigma():
    net = build_path_graph(4)
    oracle = oracle_for_network(net, 0.3)
    reference = _covariance_by_quadrature(laplacian_matrix(net), [0.3] * 4, 0.7)
    assert np.max(np.abs(exact_covariance(oracle, 0.7) - reference)) < 1e-6


def test_exact_covariance_matches_quadrature_per_site_sigma():
    net = build_from_pairs(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    sigma = [0.1, 0.4, 0.2, 0.05]
    oracle = oracle_for_network(net, sigma)
    reference = _covariance_by_quadrature(laplacian_matrix(net), sigma, 0.9)
    assert np.max(np.abs(exact_covariance(oracle, 0.9) - reference)) < 1e-6


def test_covariance_zero_at_time_zero():
    oracle = oracle_for_network(build_path_graph(4), 0.5)
    assert np.allclose(exact_covariance(oracle, 0.0), np.zeros((4, 4)), atol=1e-15)


def test_covariance_is_symmetric_psd():
    oracle = oracle_for_network(build_path_graph(6), 0.25)
    cov = exact_covariance(oracle, 2.5)
    assert np.array_equal(cov, cov.T)
    assert np.min(np.linalg.eigvalsh(cov)) > -1e-12


def test_graph_mean_variance_grows_like_brownian_motion():
    # The constant mode feels no drift, so the variance of the spatial mean
    # is exactly sigma^2 t / n.
    n, sigma = 5, 0.4
    oracle = oracle_for_network(build_path_graph(n), sigma)
    ones = np.ones(n)
    for t in (0.1, 1.0, 10.0):
        value = ones @ exact_covariance(oracle, t) @ ones / n**2
        assert value == pytest.approx(sigma**2 * t / n, rel=1e-10)


def test_long_horizon_covariance_splits_into_stationary_plus_drift():
    # After the decaying modes settle, what is left is the stationary
    # deviation covariance plus the linearly growing constant-mode term.
    n, sigma, t = 4, 0.2, 50.0
    net = build_path_graph(n)
    oracle = oracle_for_network(net, sigma)
    drift_part = sigma**2 * t * np.full((n, n), 1.0 / n)
    gap = exact_covariance(oracle, t) - drift_part - stationary_deviation_covariance(oracle)
    assert np.max(np.abs(gap)) < 1e-10


def test_stationary_trace_path3_hand_value():
    # Decaying modes at rates 1 and 3 each hold sigma^2 / (2 lambda), so the
    # stationary trace is sigma^2 (1/2 + 1/6) = (2/3) sigma^2.
    sigma = 0.3
    oracle = oracle_for_network(build_path_graph(3), sigma)
    trace = float(np.trace(stationary_deviation_covariance(oracle)))
    assert trace == pytest.approx(sigma**2 * (2.0 / 3.0), rel=1e-12)


def test_spectral_decompose_diagonal_matrix():
    oracle = spectral_decompose(np.diag([1.0, 2.0, 3.0]), np.zeros(3))
    u0 = np.array([1.0, 1.0, 1.0])
    expected = np.exp(-np.array([1.0, 2.0, 3.0]) * 0.5)
    assert np.allclose(exact_mean(oracle, u0, 0.5), expected, atol=1e-12)


def test_spectral_decompose_rejects_bad_inputs():
    with pytest.raises(ValueError):
        spectral_decompose(np.zeros((2, 3)), np.zeros(2))
    with pytest.raises(ValueError):
        spectral_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]), np.zeros(2))
    with pytest.raises(ValueError):
        spectral_decompose(np.eye(2), np.zeros(3))
    with pytest.raises(ValueError):
        spectral_decompose(np.eye(2), np.array([0.1, -0.1]))


def test_exact_mean_rejects_negative_time_and_bad_shape():
    oracle = oracle_for_network(build_path_graph(3), 0.1)
    with pytest.raises(ValueError):
        exact_mean(oracle, np.zeros(3), -0.1)
    with pytest.raises(ValueError):
        exact_mean(oracle, np.zeros(4), 1.0)
    with pytest.raises(ValueError):
        exact_covariance(oracle, -2.0)
