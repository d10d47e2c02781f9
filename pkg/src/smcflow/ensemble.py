"""Monte Carlo ensembles: terminal statistics, weak error, strong order.

Paths are numbered 0..M-1 and each one owns an independent noise stream
derived from the master seed, so the ensemble is reproducible path by path.
Work is split into fixed-size blocks of consecutive path indices and the
per-block results are combined in block order, which makes every statistic
bit-identical no matter how many worker processes are used.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .network import Network, laplacian_spectral_radius
from .engine import NoiseStream, SimConfig, UpdateMode, integrate_batch, record_steps
from .oracle import SpectralOracle, exact_mean, oracle_for_network

__all__ = [
    "BLOCK_SIZE",
    "EnsembleResult",
    "WeakErrorReport",
    "StrongOrderResult",
    "run_ensemble",
    "weak_error",
    "weak_error_report",
    "strong_order_estimate",
]

BLOCK_SIZE = 1024


def _fixed_initial(cfg: SimConfig, n: int) -> np.ndarray:
    if cfg.initial == "uniform":
        raise ValueError(
            "ensemble statistics need a common starting point; "
            "pass an explicit initial vector instead of \"uniform\""
        )
    u0 = np.asarray(cfg.initial, dtype=float)
    if u0.shape != (n,):
        raise ValueError("initial vector length must match the network's site count")
    return u0


def _path_noise(cfg: SimConfig, n: int, start: int, stop: int, steps: int) -> np.ndarray:
    """Noise block (stop - start, steps, n), one stream per path index."""
    noise = np.empty((stop - start, steps, n))
    for j, k in enumerate(range(start, stop)):
        stream = NoiseStream(cfg.seed, path_index=k)
        noise[j] = stream.gaussian_increments(steps * n, cfg.dt).reshape(steps, n)
    return noise


def _block_bounds(path_count: int) -> list[tuple[int, int]]:
    return [
        (start, min(start + BLOCK_SIZE, path_count))
        for start in range(0, path_count, BLOCK_SIZE)
    ]


def _map_blocks(worker, jobs, workers: int):
    """Run ``worker`` over ``jobs``, preserving job order in the results."""
    if workers <= 1 or len(jobs) <= 1:
        return [worker(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, jobs))


def _ensemble_block(job):
    net, cfg, start, stop, want_series = job
    u0 = _fixed_initial(cfg, net.site_count)
    steps = cfg.num_steps
    noise = _path_noise(cfg, net.site_count, start, stop, steps)
    if not want_series:
        terminal = integrate_batch(
            net, u0, cfg.dt, cfg.sigma, noise, update_mode=cfg.update_mode
        )
        return terminal, None
    rec = record_steps(steps, cfg.record_every)
    records = integrate_batch(
        net, u0, cfg.dt, cfg.sigma, noise, update_mode=cfg.update_mode, record=rec
    )
    energy_sum = 0.5 * np.sum(records**2, axis=(0, 2))
    graph_mean = np.mean(records, axis=2)
    gm_sum = np.sum(graph_mean, axis=0)
    gm_sq_sum = np.sum(graph_mean**2, axis=0)
    return records[:, -1, :], (energy_sum, gm_sum, gm_sq_sum)


@dataclass(frozen=True, eq=False)
class EnsembleResult:
    """Cross-path statistics of the terminal state (and optional time series).

    ``terminal_covariance`` is the unbiased sample covariance of the terminal
    positions; ``graph_mean_variance`` is the variance across paths of the
    spatial average of the terminal state.  The series fields are present
    only when the ensemble was run with series=True.
    """

    path_count: int
    terminal_mean: np.ndarray
    terminal_mean_se: np.ndarray
    terminal_covariance: np.ndarray
    graph_mean_variance: float
    graph_mean_variance_se: float
    terminal_energy_mean: float
    terminal_energy_se: float
    series_times: np.ndarray | None = None
    energy_mean_series: np.ndarray | None = None
    graph_mean_variance_series: np.ndarray | None = None

    @property
    def site_count(self) -> int:
        return len(self.terminal_mean)


def run_ensemble(
    net: Network,
    cfg: SimConfig,
    path_count: int,
    *,
    workers: int = 1,
    series: bool = False,
) -> EnsembleResult:
    """Integrate ``path_count`` independent paths and summarize the endpoint.

    Results do not depend on ``workers``; the same path indices always see
    the same noise and the reduction runs in a fixed order.
    """
    if path_count < 2:
        raise ValueError("path_count must be at least 2")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    _fixed_initial(cfg, net.site_count)

    jobs = [
        (net, cfg, start, stop, series) for start, stop in _block_bounds(path_count)
    ]
    outputs = _map_blocks(_ensemble_block, jobs, workers)

    terminals = np.concatenate([terminal for terminal, _ in outputs], axis=0)
    m = path_count
    mean = np.mean(terminals, axis=0)
    centered = terminals - mean
    cov = centered.T @ centered / (m - 1)
    cov = 0.5 * (cov + cov.T)
    mean_se = np.sqrt(np.diag(cov) / m)

    graph_means = np.mean(terminals, axis=1)
    gm_var = float(np.var(graph_means, ddof=1))
    gm_var_se = gm_var * float(np.sqrt(2.0 / (m - 1)))

    energies = 0.5 * np.sum(terminals**2, axis=1)
    energy_mean = float(np.mean(energies))
    energy_se = float(np.std(energies, ddof=1) / np.sqrt(m))

    series_times = energy_series = gm_var_series = None
    if series:
        energy_total = None
        gm_total = None
        gm_sq_total = None
        for _, partial in outputs:
            energy_sum, gm_sum, gm_sq_sum = partial
            if energy_total is None:
                energy_total = energy_sum.copy()
                gm_total = gm_sum.copy()
                gm_sq_total = gm_sq_sum.copy()
            else:
                energy_total += energy_sum
                gm_total += gm_sum
                gm_sq_total += gm_sq_sum
        rec = np.asarray(record_steps(cfg.num_steps, cfg.record_every))
        series_times = rec * cfg.dt
        energy_series = energy_total / m
        gm_mean_series = gm_total / m
        # One-pass variance; rounding can leave a tiny negative where the
        # true value is zero (all paths share the starting point).
        gm_var_series = np.maximum(
            (gm_sq_total - m * gm_mean_series**2) / (m - 1), 0.0
        )

    return EnsembleResult(
        path_count=m,
        terminal_mean=mean,
        terminal_mean_se=mean_se,
        terminal_covariance=cov,
        graph_mean_variance=gm_var,
        graph_mean_variance_se=gm_var_se,
        terminal_energy_mean=energy_mean,
        terminal_energy_se=energy_se,
        series_times=series_times,
        energy_mean_series=energy_series,
        graph_mean_variance_series=gm_var_series,
    )


@dataclass(frozen=True, eq=False)
class WeakErrorReport:
    """Componentwise ensemble mean against the exact mean at t_end.

    ``bias_bound`` is a first-order estimate of the systematic discretization
    shift, lam_max^2 * t_end * dt * |u0| / 2; the statistical tolerance adds
    three standard errors per component on top of it.
    """

    estimate: np.ndarray
    exact: np.ndarray
    standard_error: np.ndarray
    bias_bound: float

    @property
    def abs_error(self) -> np.ndarray:
        return np.abs(self.estimate - self.exact)

    @property
    def tolerance(self) -> np.ndarray:
        return 3.0 * self.standard_error + self.bias_bound

    @property
    def passed(self) -> bool:
        return bool(np.all(self.abs_error <= self.tolerance))


def weak_error_report(
    result: EnsembleResult,
    net: Network,
    cfg: SimConfig,
    oracle: SpectralOracle | None = None,
) -> WeakErrorReport:
    """Build the mean-comparison report from an already-computed ensemble."""
    u0 = _fixed_initial(cfg, net.site_count)
    if oracle is None:
        oracle = oracle_for_network(net, cfg.sigma)
    lam_max = laplacian_spectral_radius(net)
    bias = 0.5 * lam_max**2 * cfg.t_end * cfg.dt * float(np.linalg.norm(u0))
    return WeakErrorReport(
        estimate=result.terminal_mean,
        exact=exact_mean(oracle, u0, cfg.t_end),
        standard_error=result.terminal_mean_se,
        bias_bound=bias,
    )


def weak_error(
    net: Network,
    cfg: SimConfig,
    path_count: int,
    oracle: SpectralOracle | None = None,
    *,
    workers: int = 1,
) -> WeakErrorReport:
    """Compare the ensemble terminal mean with the exact solution's mean."""
    result = run_ensemble(net, cfg, path_count, workers=workers)
    return weak_error_report(result, net, cfg, oracle)


def _strong_block(job):
    net, cfg, start, stop, levels = job
    n = net.site_count
    u0 = _fixed_initial(cfg, n)
    coarse_steps = cfg.num_steps
    fine_steps = coarse_steps * 2 ** (levels - 1)
    fine_dt = cfg.dt / 2 ** (levels - 1)

    block = stop - start
    fine_noise = np.empty((block, fine_steps, n))
    for j, k in enumerate(range(start, stop)):
        stream = NoiseStream(cfg.seed, path_index=k)
        fine_noise[j] = stream.gaussian_increments(fine_steps * n, fine_dt).reshape(
            fine_steps, n
        )

    terminals = []
    for level in range(levels):
        steps = coarse_steps * 2**level
        group = fine_steps // steps
        noise = fine_noise.reshape(block, steps, group, n).sum(axis=2)
        terminals.append(
            integrate_batch(
                net, u0, cfg.dt / 2**level, cfg.sigma, noise,
                update_mode=cfg.update_mode,
            )
        )
    sq_sums = np.empty(levels - 1)
    for level in range(levels - 1):
        diff = terminals[level] - terminals[level + 1]
        sq_sums[level] = np.sum(diff**2)
    return sq_sums


@dataclass(frozen=True, eq=False)
class StrongOrderResult:
    """Pathwise convergence measurement across dyadic step-size refinements.

    ``rms`` holds the root-mean-square terminal gap between each step size in
    ``dts`` and its halved refinement, on the same underlying noise; ``slope``
    is the least-squares slope of log2(rms) against log2(dt).
    """

    slope: float
    dts: np.ndarray
    rms: np.ndarray


def strong_order_estimate(
    net: Network,
    cfg: SimConfig,
    path_count: int,
    refinement_levels: int = 4,
    *,
    workers: int = 1,
) -> StrongOrderResult:
    """Estimate the pathwise convergence order of the integrator.

    The same Brownian increments drive every refinement level: the finest
    grid's draws are summed in consecutive pairs to build each coarser grid,
    so terminal differences measure pure discretization error.
    """
    if refinement_levels < 3:
        raise ValueError("refinement_levels must be at least 3")
    if path_count < 2:
        raise ValueError("path_count must be at least 2")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    _fixed_initial(cfg, net.site_count)

    jobs = [
        (net, cfg, start, stop, refinement_levels)
        for start, stop in _block_bounds(path_count)
    ]
    outputs = _map_blocks(_strong_block, jobs, workers)
    total = None
    for sq in outputs:
        total = sq.copy() if total is None else total + sq
    rms = np.sqrt(total / path_count)
    dts = cfg.dt / 2.0 ** np.arange(refinement_levels - 1)
    slope = float(np.polyfit(np.log2(dts), np.log2(rms), 1)[0])
    return StrongOrderResult(slope=slope, dts=dts, rms=rms)
