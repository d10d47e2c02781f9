"""Network construction and discrete curvature."""

import numpy as np
import pytest

from smcflow.network import (
    State,
    build_from_pairs,
    build_path_graph,
    curvature,
    laplacian_matrix,
    laplacian_spectral_radius,
)


def test_path_graph_structure():
    net = build_path_graph(4)
    assert net.site_count == 4
    assert net.pairs == ((0, 1), (1, 2), (2, 3))
    assert net.degrees == (1, 2, 2, 1)
    assert net.neighbors == ((1,), (0, 2), (1, 3), (2,))


def test_path_graph_needs_two_sites():
    with pytest.raises(ValueError):
        build_path_graph(1)


def test_pairs_are_canonicalized_and_sorted():
    net = build_from_pairs(4, [(3, 2), (1, 0)])
    assert net.pairs == ((0, 1), (2, 3))


def test_pairs_rejects_out_of_range():
    with pytest.raises(ValueError, match="outside"):
        build_from_pairs(3, [(0, 3)])


def test_pairs_rejects_self_loop():
    with pytest.raises(ValueError, match="self-loop"):
        build_from_pairs(3, [(1, 1)])


def test_pairs_rejects_duplicates():
    with pytest.raises(ValueError, match="duplicate"):
        build_from_pairs(3, [(0, 1), (1, 0)])


def test_network_is_hashable():
    a = build_path_graph(3)
    b = build_from_pairs(3, [(0, 1), (1, 2)])
    assert a == b
    assert hash(a) == hash(b)


def test_state_requires_finite_vector():
    with pytest.raises(ValueError):
        State(positions=np.array([0.0, np.nan]), time=0.0)
    with pytest.raises(ValueError):
        State(positions=np.zeros((2, 2)), time=0.0)
    with pytest.raises(ValueError):
        State(positions=np.zeros(2), time=-1.0)


def test_laplacian_matrix_path3():
    lap = laplacian_matrix(build_path_graph(3))
    expected = np.array([[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]])
    assert np.array_equal(lap, expected)


def test_curvature_small_example():
    # Middle site of a 3-chain with ends at 0 and a peak of 1 in the middle:
    # kappa = (0 - 1) + (0 - 1) = -2 at the peak, +1 at each end.
    net = build_path_graph(3)
    kap = curvature(net, np.array([0.0, 1.0, 0.0]))
    assert np.array_equal(kap, np.array([1.0, -2.0, 1.0]))


def test_curvature_accepts_state():
    net = build_path_graph(3)
    state = State(positions=np.array([0.0, 1.0, 0.0]), time=0.5)
    assert np.array_equal(curvature(net, state), np.array([1.0, -2.0, 1.0]))


def test_curvature_matches_negative_laplacian_product():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(2, 10))
        pairs = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5
        ]
        net = build_from_pairs(n, pairs)
        u = rng.normal(size=n)
        lu = laplacian_matrix(net) @ u
        assert np.max(np.abs(curvature(net, u) + lu)) < 1e-12


def test_curvature_constant_vector_is_exactly_zero():
    net = build_path_graph(6)
    kap = curvature(net, np.full(6, 3.7))
    assert np.array_equal(kap, np.zeros(6))


def test_curvature_batched_matches_per_row():
    rng = np.random.default_rng(11)
    net = build_from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)])
    batch = rng.normal(size=(7, 5))
    out = curvature(net, batch)
    assert out.shape == (7, 5)
    for row_in, row_out in zip(batch, out):
        assert np.array_equal(curvature(net, row_in), row_out)


def test_curvature_rejects_wrong_length():
    net = build_path_graph(3)
    with pytest.raises(ValueError):
        curvature(net, np.zeros(4))


def test_spectral_radius_two_site_chain():
    # L = [[1, -1], [-1, 1]] has eigenvalues 0 and 2.
    assert laplacian_spectral_radius(build_path_graph(2)) == pytest.approx(2.0)


def test_spectral_radius_cached_instance():
    net = build_path_graph(5)
    assert laplacian_spectral_radius(net) == laplacian_spectral_radius(net)


def test_isolated_sites_have_zero_curvature():
    net = build_from_pairs(3, [(0, 1)])
    kap = curvature(net, np.array([2.0, -1.0, 5.0]))
    assert kap[2] == 0.0
