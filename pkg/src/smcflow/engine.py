"""Euler-Maruyama integration of du = kappa dt + sigma dW on a network.

Each step advances every site by

    u_i  <-  u_i + kappa_i(u) * dt + sigma_i * xi_i,

where xi_i is an N(0, dt) increment of the driving Wiener process.  The
default synchronous mode evaluates all curvatures at the step's start state.
The legacy sequential mode instead sweeps sites in ascending index order and
lets each curvature see the sites already updated in the current sweep, a
Gauss-Seidel-like variant kept for reproducing older runs.

Noise is drawn from per-path streams derived by seed splitting, so any two
runs with the same (master_seed, path_index) are bit-identical and distinct
path indices are statistically independent.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .network import Network, State, curvature, laplacian_spectral_radius

__all__ = [
    "UpdateMode",
    "SimConfig",
    "Trajectory",
    "NoiseStream",
    "SimulationDivergedError",
    "StabilityWarning",
    "em_step",
    "em_step_sequential",
    "simulate",
    "integrate_batch",
    "replay_increments",
    "record_steps",
]

_STEP_COUNT_TOL = 1e-9  # |t_end/dt - round(t_end/dt)| above this is rejected


class UpdateMode(str, Enum):
    SYNCHRONOUS = "synchronous"
    LEGACY_SEQUENTIAL = "legacy-sequential"

    @classmethod
    def coerce(cls, value) -> "UpdateMode":
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("_", "-"))


class SimulationDivergedError(RuntimeError):
    """A step produced a non-finite position."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class StabilityWarning(UserWarning):
    """dt at or beyond the explicit scheme's stability limit 2/lambda_max."""


@dataclass(frozen=True)
class SimConfig:
    """Integration parameters for one run.

    ``sigma`` is the per-site noise intensity.  ``initial`` is either the
    string "uniform" (each site drawn uniformly from [0, 1) out of the run's
    own noise stream) or an explicit position vector.
    """

    dt: float
    t_end: float
    sigma: tuple[float, ...]
    seed: int
    update_mode: UpdateMode = UpdateMode.SYNCHRONOUS
    record_every: int = 1
    initial: tuple[float, ...] | str = "uniform"

    def __post_init__(self) -> None:
        if not (np.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError("dt must be positive and finite")
        if not (np.isfinite(self.t_end) and self.t_end > 0.0):
            raise ValueError("t_end must be positive and finite")
        if self.dt > self.t_end:
            raise ValueError("dt must not exceed t_end")
        ratio = self.t_end / self.dt
        if abs(ratio - round(ratio)) > _STEP_COUNT_TOL:
            raise ValueError(
                f"t_end/dt = {ratio!r} is not an integer step count; "
                "choose dt so the horizon is a whole number of steps"
            )
        sigma = tuple(float(s) for s in self.sigma)
        if len(sigma) == 0:
            raise ValueError("sigma must have one entry per site")
        for s in sigma:
            if not (np.isfinite(s) and s >= 0.0):
                raise ValueError("sigma entries must be finite and non-negative")
        object.__setattr__(self, "sigma", sigma)
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must fit in 64 unsigned bits")
        object.__setattr__(self, "seed", int(self.seed))
        if int(self.record_every) < 1:
            raise ValueError("record_every must be a positive integer")
        object.__setattr__(self, "record_every", int(self.record_every))
        object.__setattr__(self, "update_mode", UpdateMode.coerce(self.update_mode))
        if isinstance(self.initial, str):
            if self.initial != "uniform":
                raise ValueError('initial must be "uniform" or a position vector')
        else:
            init = tuple(float(x) for x in self.initial)
            if len(init) != len(sigma):
                raise ValueError("initial vector length must match sigma length")
            for x in init:
                if not np.isfinite(x):
                    raise ValueError("initial positions must be finite")
            object.__setattr__(self, "initial", init)

    @property
    def num_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @classmethod
    def build(
        cls,
        net: Network,
        *,
        dt: float,
        t_end: float,
        sigma,
        seed: int,
        update_mode="synchronous",
        record_every: int = 1,
        initial="uniform",
    ) -> "SimConfig":
        """Convenience constructor that broadcasts a scalar sigma over ``net``."""
        if np.isscalar(sigma):
            sigma_vec = (float(sigma),) * net.site_count
        else:
            sigma_vec = tuple(float(s) for s in sigma)
        if len(sigma_vec) != net.site_count:
            raise ValueError("sigma length must equal the network's site count")
        if not isinstance(initial, str):
            initial = tuple(float(x) for x in initial)
        return cls(
            dt=float(dt),
            t_end=float(t_end),
            sigma=sigma_vec,
            seed=int(seed),
            update_mode=UpdateMode.coerce(update_mode),
            record_every=int(record_every),
            initial=initial,
        )

    def with_dt(self, dt: float) -> "SimConfig":
        return replace(self, dt=float(dt))


@dataclass(frozen=True)
class Trajectory:
    """Recorded time grid and positions for one path.

    Rows of ``samples`` sit record_every * dt apart; when record_every does
    not divide the step count the final row is the terminal state and its
    spacing from the previous row is shorter.
    """

    times: np.ndarray
    samples: np.ndarray
    config_echo: SimConfig

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 2 or times.ndim != 1 or samples.shape[0] != times.shape[0]:
            raise ValueError("samples must be (num_records, site_count) aligned with times")
        if times[0] != 0.0 or np.any(np.diff(times) <= 0.0):
            raise ValueError("times must start at 0 and increase")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "samples", samples)

    @property
    def site_count(self) -> int:
        return self.samples.shape[1]

    @property
    def terminal(self) -> np.ndarray:
        return self.samples[-1]


class NoiseStream:
    """Reproducible random stream for one sample path.

    The stream for (master_seed, path_index) is derived with numpy's
    SeedSequence spawn-key mechanism over a PCG64 generator, so identical
    identities replay identical draws and distinct path indices give
    statistically independent streams.  Draws are batching-invariant: two
    calls of k then m values equal one call of k + m values.
    """

    def __init__(self, master_seed: int, path_index: int = 0):
        master_seed = int(master_seed)
        path_index = int(path_index)
        if not (0 <= master_seed < 2**64):
            raise ValueError("master_seed must fit in 64 unsigned bits")
        if path_index < 0:
            raise ValueError("path_index must be non-negative")
        self.master_seed = master_seed
        self.path_index = path_index
        self.position = 0
        seq = np.random.SeedSequence(master_seed, spawn_key=(path_index,))
        self._rng = np.random.Generator(np.random.PCG64(seq))

    def gaussian_increments(self, count: int, dt: float) -> np.ndarray:
        """``count`` independent N(0, dt) draws, i.e. sqrt(dt) times standard normals."""
        if count < 1:
            raise ValueError("count must be positive")
        if not (np.isfinite(dt) and dt > 0.0):
            raise ValueError("dt must be positive")
        draws = np.sqrt(dt) * self._rng.standard_normal(count)
        self.position += count
        return draws

    def uniform(self, count: int) -> np.ndarray:
        """``count`` independent uniform draws on [0, 1)."""
        if count < 1:
            raise ValueError("count must be positive")
        draws = self._rng.random(count)
        self.position += count
        return draws

    def __repr__(self) -> str:
        return (
            f"NoiseStream(master_seed={self.master_seed}, "
            f"path_index={self.path_index}, position={self.position})"
        )


def _check_compatible(net: Network, cfg: SimConfig) -> None:
    if len(cfg.sigma) != net.site_count:
        raise ValueError(
            f"config has {len(cfg.sigma)} sigma entries, network has {net.site_count} sites"
        )


def _warn_if_unstable(net: Network, dt: float) -> None:
    lam_max = laplacian_spectral_radius(net)
    if lam_max > 0.0 and dt >= 2.0 / lam_max:
        warnings.warn(
            f"dt = {dt} is at or beyond the stability limit 2/lambda_max = "
            f"{2.0 / lam_max:.6g}; the deterministic flow will amplify",
            StabilityWarning,
            stacklevel=3,
        )


def _step_sync(net: Network, u: np.ndarray, dt: float, sigma: np.ndarray, xi: np.ndarray) -> np.ndarray:
    du = curvature(net, u) * dt + sigma * xi
    return u + du


def _step_seq(net: Network, u: np.ndarray, dt: float, sigma: np.ndarray, xi: np.ndarray) -> np.ndarray:
    # In-place sweep: site i's curvature sees sites j < i already updated.
    u = np.array(u, copy=True)
    for i, nbrs in enumerate(net.neighbors):
        acc = u[..., i] * (-float(net.degrees[i]))
        for j in nbrs:
            acc = acc + u[..., j]
        du = acc * dt + sigma[i] * xi[..., i]
        u[..., i] = u[..., i] + du
    return u


_STEPPERS = {
    UpdateMode.SYNCHRONOUS: _step_sync,
    UpdateMode.LEGACY_SEQUENTIAL: _step_seq,
}


def _checked_noise(net: Network, noise) -> np.ndarray:
    xi = np.asarray(noise, dtype=float)
    if xi.shape != (net.site_count,):
        raise ValueError(f"noise must have {net.site_count} entries")
    return xi


def em_step(net: Network, state: State, cfg: SimConfig, noise) -> State:
    """One synchronous Euler-Maruyama step from ``state``.

    ``noise`` must hold one N(0, dt) draw per site; the sigma factors are
    applied here.  All curvatures are evaluated at the pre-step positions.
    """
    _check_compatible(net, cfg)
    xi = _checked_noise(net, noise)
    u = _step_sync(net, state.positions, cfg.dt, np.asarray(cfg.sigma), xi)
    if not np.all(np.isfinite(u)):
        raise SimulationDivergedError("step produced a non-finite position")
    return State(positions=u, time=state.time + cfg.dt)


def em_step_sequential(net: Network, state: State, cfg: SimConfig, noise) -> State:
    """One legacy sweep step: sites updated in ascending order, in place."""
    _check_compatible(net, cfg)
    xi = _checked_noise(net, noise)
    u = _step_seq(net, state.positions, cfg.dt, np.asarray(cfg.sigma), xi)
    if not np.all(np.isfinite(u)):
        raise SimulationDivergedError("step produced a non-finite position")
    return State(positions=u, time=state.time + cfg.dt)


def record_steps(num_steps: int, record_every: int) -> list[int]:
    """Step indices stored by simulate: every k-th step plus the final one."""
    rec = list(range(0, num_steps + 1, record_every))
    if rec[-1] != num_steps:
        rec.append(num_steps)
    return rec


def initial_positions(net: Network, cfg: SimConfig, stream: NoiseStream) -> np.ndarray:
    """Starting vector; consumes one uniform draw per site in "uniform" mode."""
    if cfg.initial == "uniform":
        return stream.uniform(net.site_count)
    u0 = np.asarray(cfg.initial, dtype=float)
    if u0.shape != (net.site_count,):
        raise ValueError("initial vector length must match the network's site count")
    return u0.copy()


def simulate(net: Network, cfg: SimConfig, stream: NoiseStream) -> Trajectory:
    """Integrate one path and record it.

    The initial state is stored at t = 0, then exactly round(t_end/dt) steps
    are taken, drawing site_count noise values per step in site order from
    ``stream``.  Every record_every-th step is stored, plus the final state.
    """
    _check_compatible(net, cfg)
    _warn_if_unstable(net, cfg.dt)
    n = net.site_count
    sigma = np.asarray(cfg.sigma)
    step_fn = _STEPPERS[cfg.update_mode]
    steps = cfg.num_steps
    rec = record_steps(steps, cfg.record_every)
    samples = np.empty((len(rec), n))
    u = initial_positions(net, cfg, stream)
    samples[0] = u
    next_rec = 1
    for m in range(1, steps + 1):
        xi = stream.gaussian_increments(n, cfg.dt)
        u = step_fn(net, u, cfg.dt, sigma, xi)
        if not np.all(np.isfinite(u)):
            raise SimulationDivergedError(
                f"position became non-finite at step {m} (t = {m * cfg.dt:.6g})", step=m
            )
        if m == rec[next_rec]:
            samples[next_rec] = u
            next_rec += 1
    times = np.asarray(rec, dtype=float) * cfg.dt
    return Trajectory(times=times, samples=samples, config_echo=cfg)


def replay_increments(net: Network, cfg: SimConfig, stream: NoiseStream) -> np.ndarray:
    """Regenerate the (num_steps, site_count) noise matrix simulate consumed.

    Pass a fresh stream with the same identity as the original run; the
    initial-condition draws are skipped exactly as simulate would make them.
    """
    _check_compatible(net, cfg)
    if cfg.initial == "uniform":
        stream.uniform(net.site_count)
    n = net.site_count
    return stream.gaussian_increments(cfg.num_steps * n, cfg.dt).reshape(cfg.num_steps, n)


def integrate_batch(
    net: Network,
    u0: np.ndarray,
    dt: float,
    sigma,
    noise: np.ndarray,
    update_mode: UpdateMode = UpdateMode.SYNCHRONOUS,
    record: list[int] | None = None,
) -> np.ndarray:
    """Integrate many paths at once; per-path arithmetic matches simulate bit for bit.

    ``u0`` is (n,) or (B, n); ``noise`` is (B, S, n) with one N(0, dt) draw
    per path, step and site.  Returns the terminal (B, n) block, or a
    (B, len(record), n) block when ``record`` lists step indices to keep
    (which must include step 0 and be ascending).
    """
    noise = np.asarray(noise, dtype=float)
    if noise.ndim != 3 or noise.shape[2] != net.site_count:
        raise ValueError("noise must have shape (paths, steps, site_count)")
    batch, steps, n = noise.shape
    u = np.broadcast_to(np.asarray(u0, dtype=float), (batch, n)).copy()
    sigma = np.asarray(sigma, dtype=float)
    step_fn = _STEPPERS[UpdateMode.coerce(update_mode)]
    out = None
    next_rec = 0
    if record is not None:
        if record[0] != 0 or list(record) != sorted(set(record)) or record[-1] > steps:
            raise ValueError("record must be ascending step indices starting at 0")
        out = np.empty((batch, len(record), n))
        out[:, 0, :] = u
        next_rec = 1
    for m in range(1, steps + 1):
        u = step_fn(net, u, dt, sigma, noise[:, m - 1, :])
        if not np.all(np.isfinite(u)):
            raise SimulationDivergedError(
                f"position became non-finite at step {m} in at least one path", step=m
            )
        if out is not None and next_rec < len(record) and m == record[next_rec]:
            out[:, next_rec, :] = u
            next_rec += 1
    return u if out is None else out
