"""Integrator steps, noise streams, trajectories, and the batch runner."""

import numpy as np
import pytest

from smcflow.network import State, build_path_graph
from smcflow.engine import (
    NoiseStream,
    SimConfig,
    SimulationDivergedError,
    StabilityWarning,
    Trajectory,
    UpdateMode,
    em_step,
    em_step_sequential,
    integrate_batch,
    record_steps,
    replay_increments,
    simulate,
)


def _cfg(net, **overrides):
    base = dict(dt=0.01, t_end=1.0, sigma=0.1, seed=0)
    base.update(overrides)
    return SimConfig.build(net, **base)


# ---------------------------------------------------------------- SimConfig


def test_config_broadcasts_scalar_sigma():
    net = build_path_graph(4)
    cfg = _cfg(net, sigma=0.3)
    assert cfg.sigma == (0.3, 0.3, 0.3, 0.3)


def test_config_rejects_dt_larger_than_horizon():
    net = build_path_graph(3)
    with pytest.raises(ValueError):
        _cfg(net, dt=2.0, t_end=1.0)


def test_config_rejects_non_integral_step_count():
    net = build_path_graph(3)
    with pytest.raises(ValueError, match="integer step count"):
        _cfg(net, dt=0.3, t_end=1.0)


def test_config_accepts_near_integral_step_count():
    net = build_path_graph(3)
    cfg = _cfg(net, dt=0.1, t_end=1.0)
    assert cfg.num_steps == 10


def test_config_rejects_negative_sigma():
    net = build_path_graph(3)
    with pytest.raises(ValueError):
        _cfg(net, sigma=(-0.1, 0.1, 0.1))


def test_config_rejects_bad_seed():
    net = build_path_graph(3)
    with pytest.raises(ValueError):
        _cfg(net, seed=-1)


def test_config_rejects_wrong_initial_length():
    net = build_path_graph(3)
    with pytest.raises(ValueError):
        _cfg(net, initial=(0.0, 1.0))


def test_config_update_mode_coercion():
    net = build_path_graph(3)
    cfg = _cfg(net, update_mode="legacy_sequential")
    assert cfg.update_mode is UpdateMode.LEGACY_SEQUENTIAL


# ---------------------------------------------------------------- stepping


def test_sync_step_hand_example():
    # One noise-free step on (0, 1, 0) with dt = 0.1: curvature (1, -2, 1)
    # moves the state to (0.1, 0.8, 0.1).
    net = build_path_graph(3)
    cfg = _cfg(net, dt=0.1, t_end=0.1, sigma=0.0, initial=(0.0, 1.0, 0.0))
    state = State(positions=np.array([0.0, 1.0, 0.0]), time=0.0)
    out = em_step(net, state, cfg, np.zeros(3))
    assert np.array_equal(out.positions, np.array([0.1, 0.8, 0.1]))
    assert out.time == pytest.approx(0.1)


def test_sequential_step_differs_from_sync():
    net = build_path_graph(3)
    cfg = _cfg(net, dt=0.1, t_end=0.1, sigma=0.0, initial=(0.0, 1.0, 0.0))
    state = State(positions=np.array([0.0, 1.0, 0.0]), time=0.0)
    sync = em_step(net, state, cfg, np.zeros(3))
    seq = em_step_sequential(net, state, cfg, np.zeros(3))
    assert not np.array_equal(sync.positions, seq.positions)
    assert seq.positions[0] == sync.positions[0]


def test_constant_state_is_fixed_point_both_modes():
    net = build_path_graph(5)
    cfg = _cfg(net, dt=0.05, t_end=0.05, sigma=0.0)
    state = State(positions=np.full(5, 2.5), time=0.0)
    assert np.array_equal(em_step(net, state, cfg, np.zeros(5)).positions, state.positions)
    assert np.array_equal(
        em_step_sequential(net, state, cfg, np.zeros(5)).positions, state.positions
    )


def test_step_rejects_wrong_noise_shape():
    net = build_path_graph(3)
    cfg = _cfg(net)
    state = State(positions=np.zeros(3), time=0.0)
    with pytest.raises(ValueError):
        em_step(net, state, cfg, np.zeros(4))


def test_step_detects_divergence():
    # Positions at the edge of the float range overflow inside the stencil.
    net = build_path_graph(3)
    cfg = _cfg(net, dt=0.01, t_end=0.01, sigma=0.0)
    state = State(positions=np.array([1e308, -1e308, 1e308]), time=0.0)
    with np.errstate(over="ignore"), pytest.raises(SimulationDivergedError):
        em_step(net, state, cfg, np.zeros(3))


# ---------------------------------------------------------------- NoiseStream


def test_stream_draws_are_reproducible():
    a = NoiseStream(123).gaussian_increments(50, 0.01)
    b = NoiseStream(123).gaussian_increments(50, 0.01)
    assert np.array_equal(a, b)


def test_stream_paths_are_distinct():
    a = NoiseStream(123, path_index=0).gaussian_increments(50, 0.01)
    b = NoiseStream(123, path_index=1).gaussian_increments(50, 0.01)
    assert not np.array_equal(a, b)


def test_stream_batching_invariance():
    # Drawing 5 + 5 gives the same numbers as drawing 10 at once, which is
    # what lets the batch runner pre-generate whole noise blocks.
    one = NoiseStream(9)
    two = NoiseStream(9)
    combined = np.concatenate([one.gaussian_increments(5, 0.01), one.gaussian_increments(5, 0.01)])
    assert np.array_equal(combined, two.gaussian_increments(10, 0.01))
    assert one.position == two.position == 10


def test_stream_increment_scaling():
    draws = NoiseStream(77).gaussian_increments(200_000, 0.04)
    assert abs(float(np.var(draws)) - 0.04) < 0.002
    assert abs(float(np.mean(draws))) < 0.002


def test_stream_rejects_bad_requests():
    stream = NoiseStream(0)
    with pytest.raises(ValueError):
        stream.gaussian_increments(0, 0.01)
    with pytest.raises(ValueError):
        stream.gaussian_increments(5, -1.0)


# ---------------------------------------------------------------- simulate


def test_simulate_shapes_and_times():
    net = build_path_graph(4)
    cfg = _cfg(net, dt=0.1, t_end=1.0)
    traj = simulate(net, cfg, NoiseStream(cfg.seed))
    assert traj.samples.shape == (11, 4)
    assert np.allclose(traj.times, np.arange(11) * 0.1)
    assert np.array_equal(traj.terminal, traj.samples[-1])


def test_simulate_is_deterministic_per_seed():
    net = build_path_graph(5)
    cfg = _cfg(net)
    a = simulate(net, cfg, NoiseStream(cfg.seed))
    b = simulate(net, cfg, NoiseStream(cfg.seed))
    assert np.array_equal(a.samples, b.samples)


def test_simulate_seed_changes_output():
    net = build_path_graph(5)
    a = simulate(net, _cfg(net, seed=1), NoiseStream(1))
    b = simulate(net, _cfg(net, seed=2), NoiseStream(2))
    assert not np.array_equal(a.samples, b.samples)


def test_record_every_keeps_final_state():
    assert record_steps(10, 3) == [0, 3, 6, 9, 10]
    assert record_steps(10, 5) == [0, 5, 10]
    net = build_path_graph(3)
    cfg = _cfg(net, dt=0.1, t_end=1.0, record_every=3)
    traj = simulate(net, cfg, NoiseStream(cfg.seed))
    assert traj.samples.shape == (5, 3)
    assert traj.times[-1] == pytest.approx(1.0)


def test_recorded_rows_match_full_resolution_run():
    net = build_path_graph(3)
    full = simulate(net, _cfg(net, dt=0.1, t_end=1.0), NoiseStream(0))
    thin = simulate(net, _cfg(net, dt=0.1, t_end=1.0, record_every=4), NoiseStream(0))
    assert np.array_equal(thin.samples, full.samples[[0, 4, 8, 10]])


def test_replay_reproduces_consumed_noise():
    net = build_path_graph(4)
    cfg = _cfg(net, dt=0.1, t_end=0.5)
    traj = simulate(net, cfg, NoiseStream(cfg.seed))
    noise = replay_increments(net, cfg, NoiseStream(cfg.seed))
    # Re-integrating by hand with the replayed noise lands on the same states.
    u = traj.samples[0].copy()
    sigma = np.asarray(cfg.sigma)
    for k in range(cfg.num_steps):
        state = State(positions=u, time=k * cfg.dt)
        u = em_step(net, state, cfg, noise[k]).positions
        assert np.array_equal(u, traj.samples[k + 1])


def test_simulate_flags_divergence_with_step():
    # dt far above the stability limit makes the noise-free flow explode.
    net = build_path_graph(2)
    cfg = _cfg(net, dt=2000.0, t_end=200000.0, sigma=0.0, initial=(1.0, 0.0))
    with np.errstate(over="ignore"), pytest.warns(StabilityWarning):
        with pytest.raises(SimulationDivergedError) as info:
            simulate(net, cfg, NoiseStream(0))
    assert info.value.step is not None


def test_stability_warning_threshold():
    net = build_path_graph(2)
    with pytest.warns(StabilityWarning):
        simulate(net, _cfg(net, dt=1.0, t_end=2.0, sigma=0.0), NoiseStream(0))


# ---------------------------------------------------------------- batch


def test_batch_matches_per_path_simulate():
    net = build_path_graph(6)
    cfg = _cfg(net, dt=0.05, t_end=0.5, initial=(0.2,) * 6)
    u0 = np.asarray(cfg.initial)
    paths = 5
    noise = np.stack(
        [
            NoiseStream(cfg.seed, path_index=k)
            .gaussian_increments(cfg.num_steps * 6, cfg.dt)
            .reshape(cfg.num_steps, 6)
            for k in range(paths)
        ]
    )
    terminal = integrate_batch(net, u0, cfg.dt, cfg.sigma, noise)
    for k in range(paths):
        traj = simulate(net, cfg, NoiseStream(cfg.seed, path_index=k))
        assert np.array_equal(terminal[k], traj.terminal)


def test_batch_matches_sequential_mode_too():
    net = build_path_graph(4)
    cfg = _cfg(
        net, dt=0.05, t_end=0.25, initial=(0.5,) * 4, update_mode="legacy-sequential"
    )
    noise = np.stack(
        [
            NoiseStream(cfg.seed, path_index=k)
            .gaussian_increments(cfg.num_steps * 4, cfg.dt)
            .reshape(cfg.num_steps, 4)
            for k in range(3)
        ]
    )
    terminal = integrate_batch(
        net, np.asarray(cfg.initial), cfg.dt, cfg.sigma, noise,
        update_mode=cfg.update_mode,
    )
    for k in range(3):
        traj = simulate(net, cfg, NoiseStream(cfg.seed, path_index=k))
        assert np.array_equal(terminal[k], traj.terminal)


def test_batch_records_requested_steps():
    net = build_path_graph(3)
    noise = np.zeros((2, 4, 3))
    u0 = np.array([0.0, 1.0, 0.0])
    records = integrate_batch(net, u0, 0.1, (0.0,) * 3, noise, record=[0, 2, 4])
    assert records.shape == (2, 3, 3)
    assert np.array_equal(records[0, 0], u0)


def test_batch_rejects_bad_noise_shape():
    net = build_path_graph(3)
    with pytest.raises(ValueError):
        integrate_batch(net, np.zeros(3), 0.1, (0.1,) * 3, np.zeros((2, 4)))


def test_trajectory_validates_time_grid():
    net = build_path_graph(2)
    cfg = _cfg(net, dt=0.5, t_end=1.0)
    with pytest.raises(ValueError):
        Trajectory(times=np.array([0.5, 1.0]), samples=np.zeros((2, 2)), config_echo=cfg)
    with pytest.raises(ValueError):
        Trajectory(times=np.array([0.0, 0.0]), samples=np.zeros((2, 2)), config_echo=cfg)
