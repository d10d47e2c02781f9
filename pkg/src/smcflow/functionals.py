"""Scalar functionals along trajectories and their Ito decomposition.

For F(u) with diagonal second derivatives, the increment along the SDE
du_i = kappa_i dt + sigma_i dW_i splits into

    dF = sum_i dF/du_i * kappa_i dt        (drift term)
       + sum_i dF/du_i * sigma_i dW_i      (martingale noise term)
       + 1/2 sum_i d2F/du_i^2 sigma_i^2 dt (quadratic-variation term),

with all derivatives evaluated at the step's start state (the Ito,
non-anticipating convention).  Only diagonal Hessians are supported because
independent per-site Wiener processes have no cross quadratic covariation.

For the quadratic energy E(u) = sum_i u_i^2 / 2 the discrete increment obeys
the exact algebraic identity

    E(u') - E(u) = sum_i u_i (u'_i - u_i) + 1/2 sum_i (u'_i - u_i)^2,

which pins the first- and second-order pieces with no time-step error at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .network import Network, State, curvature
from .engine import SimConfig, Trajectory

__all__ = [
    "FunctionalSpec",
    "ItoLedger",
    "quadratic_energy",
    "total_position",
    "ito_track",
    "discrete_energy_identity",
    "expected_energy_drift",
    "finite_difference_gradient",
    "realized_noise_quadratic_variation",
]


@dataclass(frozen=True)
class FunctionalSpec:
    """A scalar functional with its gradient and diagonal Hessian maps."""

    name: str
    dim: int
    value: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    hessian_diag: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class ItoLedger:
    """Cumulative Ito decomposition of F along one recorded path.

    All series share the trajectory's record grid; entry k of each cumulative
    term covers steps 1..k, with zeros at t = 0.  ``residual`` is the gap
    between the directly evaluated increment of F and the three-term sum.
    """

    times: np.ndarray
    f_values: np.ndarray
    drift_term: np.ndarray
    noise_term: np.ndarray
    qv_term: np.ndarray

    @property
    def residual(self) -> np.ndarray:
        return (self.f_values - self.f_values[0]) - (
            self.drift_term + self.noise_term + self.qv_term
        )


def quadratic_energy(n: int) -> FunctionalSpec:
    """E(u) = sum of u_i^2 / 2; gradient u, unit diagonal Hessian."""
    if n < 1:
        raise ValueError("dimension must be positive")

    def value(u: np.ndarray) -> float:
        u = np.asarray(u, dtype=float)
        return 0.5 * float(np.dot(u, u))

    def gradient(u: np.ndarray) -> np.ndarray:
        return np.array(u, dtype=float, copy=True)

    def hessian_diag(u: np.ndarray) -> np.ndarray:
        return np.ones(len(u))

    return FunctionalSpec(
        name="quadratic_energy", dim=n, value=value, gradient=gradient, hessian_diag=hessian_diag
    )


def total_position(n: int) -> FunctionalSpec:
    """Linear functional F(u) = sum of u_i; constant gradient, zero Hessian."""
    if n < 1:
        raise ValueError("dimension must be positive")

    def value(u: np.ndarray) -> float:
        return float(np.sum(np.asarray(u, dtype=float)))

    def gradient(u: np.ndarray) -> np.ndarray:
        return np.ones(len(u))

    def hessian_diag(u: np.ndarray) -> np.ndarray:
        return np.zeros(len(u))

    return FunctionalSpec(
        name="total_position", dim=n, value=value, gradient=gradient, hessian_diag=hessian_diag
    )


def ito_track(
    traj: Trajectory,
    net: Network,
    cfg: SimConfig,
    f: FunctionalSpec,
    noise_replay: np.ndarray,
) -> ItoLedger:
    """Accumulate the three Ito terms of ``f`` along a fully recorded path.

    ``noise_replay`` must be the exact (num_steps, site_count) increment
    matrix the integrator consumed, regenerated from the same stream; the
    trajectory must have been recorded with record_every = 1.
    """
    if cfg.record_every != 1:
        raise ValueError("ito_track needs a trajectory recorded with record_every = 1")
    steps = cfg.num_steps
    if traj.samples.shape[0] != steps + 1:
        raise ValueError("trajectory does not cover every step")
    noise_replay = np.asarray(noise_replay, dtype=float)
    if noise_replay.shape != (steps, net.site_count):
        raise ValueError(
            f"noise_replay must have shape ({steps}, {net.site_count})"
        )
    if f.dim != net.site_count:
        raise ValueError("functional dimension must match the network")
    sigma = np.asarray(cfg.sigma)
    dt = cfg.dt

    f_values = np.empty(steps + 1)
    drift = np.zeros(steps + 1)
    noise = np.zeros(steps + 1)
    qv = np.zeros(steps + 1)
    for k in range(steps):
        u_k = traj.samples[k]
        f_values[k] = f.value(u_k)
        grad = np.asarray(f.gradient(u_k), dtype=float)
        hess = np.asarray(f.hessian_diag(u_k), dtype=float)
        kap = curvature(net, u_k)
        drift[k + 1] = drift[k] + np.dot(grad, kap) * dt
        noise[k + 1] = noise[k] + np.dot(grad, sigma * noise_replay[k])
        qv[k + 1] = qv[k] + 0.5 * np.dot(hess, sigma**2) * dt
    f_values[steps] = f.value(traj.samples[steps])
    return ItoLedger(
        times=traj.times.copy(),
        f_values=f_values,
        drift_term=drift,
        noise_term=noise,
        qv_term=qv,
    )


def discrete_energy_identity(u_before, u_after) -> tuple[float, float, float]:
    """Exact split of the quadratic-energy increment between two states.

    Returns (delta_e, first_order, second_order) with
    delta_e = first_order + second_order as an algebraic identity.
    """
    u0 = np.asarray(u_before, dtype=float)
    u1 = np.asarray(u_after, dtype=float)
    if u0.shape != u1.shape or u0.ndim != 1:
        raise ValueError("states must be vectors of equal length")
    du = u1 - u0
    delta_e = 0.5 * float(np.dot(u1, u1)) - 0.5 * float(np.dot(u0, u0))
    first_order = float(np.dot(u0, du))
    second_order = 0.5 * float(np.dot(du, du))
    return delta_e, first_order, second_order


def expected_energy_drift(net: Network, state, sigma) -> float:
    """Instantaneous expected growth rate of the quadratic energy.

    Equals u . kappa(u) + sum_i sigma_i^2 / 2, i.e. -u . L u plus the
    noise-injection rate.
    """
    u = state.positions if isinstance(state, State) else np.asarray(state, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != u.shape:
        raise ValueError("sigma and state must have equal lengths")
    return float(np.dot(u, curvature(net, u))) + 0.5 * float(np.dot(sigma, sigma))


def finite_difference_gradient(f: FunctionalSpec, u, step: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of f.value, for checking gradient maps."""
    u = np.asarray(u, dtype=float)
    grad = np.empty_like(u)
    for i in range(len(u)):
        up = u.copy()
        down = u.copy()
        up[i] += step
        down[i] -= step
        grad[i] = (f.value(up) - f.value(down)) / (2.0 * step)
    return grad


def realized_noise_quadratic_variation(
    traj: Trajectory, net: Network, cfg: SimConfig
) -> np.ndarray:
    """Per-site realized quadratic variation of the noise part, normalized.

    For each site, sums (delta_u - kappa dt)^2 over the steps of a fully
    recorded path and divides by sigma^2 * t_end; the statistic concentrates
    at 1 when the increments carry the correct sqrt(dt) scaling.
    """
    if cfg.record_every != 1:
        raise ValueError("needs a trajectory recorded with record_every = 1")
    sigma = np.asarray(cfg.sigma)
    if np.any(sigma <= 0.0):
        raise ValueError("all sigma entries must be positive for this statistic")
    u = traj.samples
    kap = curvature(net, u[:-1])
    resid = np.diff(u, axis=0) - kap * cfg.dt
    return np.sum(resid**2, axis=0) / (sigma**2 * cfg.t_end)
