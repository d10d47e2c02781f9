"""Self-contained correctness suite for the integrator and its statistics.

Every check compares simulation output against an independent target: linear
algebra identities, hand-computed update sweeps, closed-form moments of the
exact solution, or scaling laws with known exponents.  Tolerances combine
three Monte Carlo standard errors with explicit discretization allowances, so
a failure means a defect rather than an unlucky draw.

``run_validation(quick=True)`` shrinks the ensembles for a fast smoke run and
widens the fixed percentage bands accordingly; the statistical bands based on
standard errors adapt on their own.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .network import (
    Network,
    State,
    build_from_pairs,
    build_path_graph,
    curvature,
    laplacian_matrix,
)
from .engine import (
    NoiseStream,
    SimConfig,
    Trajectory,
    em_step,
    em_step_sequential,
    integrate_batch,
    simulate,
)
from .functionals import (
    discrete_energy_identity,
    ito_track,
    quadratic_energy,
    realized_noise_quadratic_variation,
)
from .oracle import (
    _NULL_EIGENVALUE_CUTOFF,
    SpectralOracle,
    exact_covariance,
    exact_mean,
    oracle_for_network,
)
from .ensemble import run_ensemble, strong_order_estimate, weak_error_report
from . import io as smcio

__all__ = ["CheckResult", "ValidationReport", "run_validation", "CHECK_NAMES"]

SITES = 10
DT = 0.01
T_END = 1.0
SIGMA = 0.1

_U0_SEED = 424242
_SEED_MEAN_ZERO = 1001
_SEED_MEAN_RANDOM = 1002
_SEED_STRONG = 1003
_SEED_MARTINGALE = 1004
_SEED_RESIDUAL = 1005
_SEED_QV = 1006
_SEED_DETERMINISM = 1007
_SEED_IDENTITY = 1010

CHECK_NAMES = (
    "curvature-laplacian-equivalence",
    "chain-stencil-fidelity",
    "deterministic-flow",
    "weak-mean",
    "covariance",
    "strong-order",
    "ito-ledger",
    "energy-balance",
    "quadratic-variation",
    "determinism",
    "legacy-sweep",
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    summary: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "summary": self.summary,
            "details": self.details,
        }


@dataclass(frozen=True, eq=False)
class ValidationReport:
    passed: bool
    quick: bool
    checks: tuple[CheckResult, ...]
    ensemble_vs_oracle: dict | None

    def lines(self) -> list[str]:
        return [
            f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.summary}"
            for c in self.checks
        ]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "quick": self.quick,
            "checks": [c.to_dict() for c in self.checks],
            "ensemble_vs_oracle": self.ensemble_vs_oracle,
        }


def _reference_initial(n: int = SITES) -> tuple[float, ...]:
    rng = np.random.default_rng(_U0_SEED)
    return tuple(float(x) for x in rng.uniform(0.0, 1.0, n))


def _config(net: Network, *, seed: int, dt: float = DT, t_end: float = T_END,
            sigma: float = SIGMA, initial="uniform", record_every: int = 1,
            update_mode: str = "synchronous") -> SimConfig:
    return SimConfig.build(
        net, dt=dt, t_end=t_end, sigma=sigma, seed=seed,
        update_mode=update_mode, record_every=record_every, initial=initial,
    )


def _chain_stencil(u: np.ndarray) -> np.ndarray:
    out = np.empty_like(u)
    n = len(u)
    out[0] = u[1] - u[0]
    out[n - 1] = u[n - 2] - u[n - 1]
    for i in range(1, n - 1):
        out[i] = u[i - 1] - 2.0 * u[i] + u[i + 1]
    return out


def _check_curvature_laplacian() -> CheckResult:
    rng = np.random.default_rng(20240801)
    worst = 0.0
    for trial in range(1000):
        kind = trial % 3
        if kind == 0:
            n = int(rng.integers(2, 13))
            net = build_path_graph(n)
        elif kind == 1:
            n = int(rng.integers(3, 13))
            net = build_from_pairs(n, [(i, (i + 1) % n) for i in range(n)])
        else:
            n = int(rng.integers(2, 13))
            pairs = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.4
            ]
            net = build_from_pairs(n, pairs)
        u = rng.normal(0.0, 1.0, n)
        lu = laplacian_matrix(net) @ u
        err = float(np.max(np.abs(curvature(net, u) + lu)))
        rel = err / max(1.0, float(np.max(np.abs(lu))))
        worst = max(worst, rel)
    passed = worst <= 1e-12
    return CheckResult(
        "curvature-laplacian-equivalence",
        passed,
        f"max relative gap {worst:.2e} over 1000 random networks (bound 1e-12)",
        {"max_relative_error": worst, "trials": 1000},
    )


def _check_chain_stencil() -> CheckResult:
    rng = np.random.default_rng(20240802)
    mismatches = 0
    for _ in range(1000):
        n = int(rng.integers(2, 13))
        net = build_path_graph(n)
        u = rng.uniform(-5.0, 5.0, n)
        if not np.array_equal(curvature(net, u), _chain_stencil(u)):
            mismatches += 1
    passed = mismatches == 0
    return CheckResult(
        "chain-stencil-fidelity",
        passed,
        f"{mismatches} of 1000 random chain states deviate from the one-sided stencil",
        {"mismatches": mismatches, "trials": 1000},
    )


def _check_deterministic_flow() -> CheckResult:
    net = build_path_graph(SITES)
    u0 = _reference_initial()
    oracle = oracle_for_network(net, 0.0)
    target = exact_mean(oracle, np.asarray(u0), T_END)
    errors = {}
    for dt in (DT, DT / 2.0):
        cfg = _config(net, seed=0, dt=dt, sigma=0.0, initial=u0)
        traj = simulate(net, cfg, NoiseStream(cfg.seed))
        errors[dt] = float(np.max(np.abs(traj.terminal - target)))
    ratio = errors[DT / 2.0] / errors[DT]
    passed = errors[DT] <= 2e-2 and 0.4 <= ratio <= 0.6
    return CheckResult(
        "deterministic-flow",
        passed,
        (
            f"noise-free max error {errors[DT]:.2e} (bound 2e-2), "
            f"halving dt scales it by {ratio:.3f} (band [0.4, 0.6])"
        ),
        {"error_dt": errors[DT], "error_half_dt": errors[DT / 2.0], "ratio": ratio},
    )


def _check_weak_mean(res_zero, cfg_zero, res_rand, cfg_rand, net, oracle) -> CheckResult:
    rep_zero = weak_error_report(res_zero, net, cfg_zero, oracle)
    rep_rand = weak_error_report(res_rand, net, cfg_rand, oracle)
    passed = rep_zero.passed and rep_rand.passed
    gap_zero = float(np.max(rep_zero.abs_error / rep_zero.tolerance))
    gap_rand = float(np.max(rep_rand.abs_error / rep_rand.tolerance))
    return CheckResult(
        "weak-mean",
        passed,
        (
            f"per-site mean error vs tolerance: {gap_zero:.2f}x from rest, "
            f"{gap_rand:.2f}x from a random start (bound 1.0x)"
        ),
        {
            "zero_start_max_error": float(np.max(rep_zero.abs_error)),
            "zero_start_max_tolerance": float(np.max(rep_zero.tolerance)),
            "random_start_max_error": float(np.max(rep_rand.abs_error)),
            "random_start_bias_bound": rep_rand.bias_bound,
        },
    )


def _check_covariance(res_zero, oracle, pct_scale: float) -> CheckResult:
    exact_diag = np.diag(exact_covariance(oracle, T_END))
    sample_diag = np.diag(res_zero.terminal_covariance)
    ratios = sample_diag / exact_diag
    site_band = 0.10 * pct_scale
    mean_band = 0.15 * pct_scale
    exact_gm = SIGMA**2 * T_END / SITES
    gm_ratio = res_zero.graph_mean_variance / exact_gm
    passed = bool(
        np.all(np.abs(ratios - 1.0) <= site_band)
        and abs(gm_ratio - 1.0) <= mean_band
    )
    worst = float(np.max(np.abs(ratios - 1.0)))
    return CheckResult(
        "covariance",
        passed,
        (
            f"per-site variance off by at most {worst * 100:.1f}% "
            f"(band {site_band * 100:.0f}%), graph-mean variance off by "
            f"{abs(gm_ratio - 1.0) * 100:.1f}% (band {mean_band * 100:.0f}%)"
        ),
        {
            "variance_ratios": ratios.tolist(),
            "graph_mean_variance": res_zero.graph_mean_variance,
            "exact_graph_mean_variance": exact_gm,
        },
    )


def _check_strong_order(net, u0, paths: int, workers: int) -> CheckResult:
    cfg = _config(net, seed=_SEED_STRONG, dt=0.04, initial=u0)
    result = strong_order_estimate(net, cfg, paths, refinement_levels=4, workers=workers)
    passed = 0.8 <= result.slope <= 1.2
    return CheckResult(
        "strong-order",
        passed,
        f"pathwise convergence slope {result.slope:.3f} (band [0.8, 1.2])",
        {
            "slope": result.slope,
            "dts": result.dts.tolist(),
            "rms": result.rms.tolist(),
            "paths": paths,
        },
    )


def _ledger_parts_terminal(net, u0, dt, sigma, noise, records):
    """Terminal martingale term and ledger residual for a batch of paths."""
    u_prev = records[:, :-1, :]
    kap = curvature(net, u_prev)
    drift = dt * np.sum(u_prev * kap, axis=(1, 2))
    mart = np.sum(u_prev * (sigma * noise), axis=(1, 2))
    qv = 0.5 * float(np.dot(sigma, sigma)) * dt * noise.shape[1]
    delta_e = 0.5 * np.sum(records[:, -1, :] ** 2, axis=1) - 0.5 * float(
        np.dot(u0, u0)
    )
    return mart, delta_e - (drift + mart + qv)


def _path_noise_block(seed: int, start: int, stop: int, steps: int, n: int, dt: float):
    noise = np.empty((stop - start, steps, n))
    for j, k in enumerate(range(start, stop)):
        noise[j] = NoiseStream(seed, path_index=k).gaussian_increments(
            steps * n, dt
        ).reshape(steps, n)
    return noise


def _check_ito_ledger(net, u0, residual_paths: int, martingale_paths: int) -> CheckResult:
    n = net.site_count
    sigma = np.full(n, SIGMA)
    energy = quadratic_energy(n)

    # Exact pathwise split of the energy increment, step by step.
    cfg_id = _config(net, seed=_SEED_IDENTITY)
    traj = simulate(net, cfg_id, NoiseStream(cfg_id.seed))
    worst_identity = 0.0
    for k in range(len(traj.times) - 1):
        delta_e, first, second = discrete_energy_identity(
            traj.samples[k], traj.samples[k + 1]
        )
        gap = abs(delta_e - (first + second)) / max(1.0, abs(delta_e))
        worst_identity = max(worst_identity, gap)
    identity_ok = worst_identity <= 1e-12

    # Ledger residual must shrink linearly in dt.  All four step sizes ride
    # the same Brownian paths (coarser increments are sums of finer pairs),
    # which cancels most sampling noise out of the ratios.
    levels = 4
    coarse_dt = 0.04
    coarse_steps = round(T_END / coarse_dt)
    fine_steps = coarse_steps * 2 ** (levels - 1)
    fine_dt = coarse_dt / 2 ** (levels - 1)
    u0_arr = np.asarray(u0)
    fine_noise = _path_noise_block(
        _SEED_RESIDUAL, 0, residual_paths, fine_steps, n, fine_dt
    )
    mean_residuals = []
    ledger_gap = 0.0
    for level in range(levels):
        steps = coarse_steps * 2**level
        dt = coarse_dt / 2**level
        group = fine_steps // steps
        noise = fine_noise.reshape(residual_paths, steps, group, n).sum(axis=2)
        records = integrate_batch(
            net, u0_arr, dt, sigma, noise, record=list(range(steps + 1))
        )
        _, residual = _ledger_parts_terminal(net, u0_arr, dt, sigma, noise, records)
        mean_residuals.append(float(np.mean(residual)))
        if level == 0:
            cfg_level = _config(net, seed=_SEED_RESIDUAL, dt=dt, initial=u0)
            traj0 = Trajectory(
                times=np.arange(steps + 1) * dt,
                samples=records[0],
                config_echo=cfg_level,
            )
            ledger = ito_track(traj0, net, cfg_level, energy, noise[0])
            ledger_gap = abs(float(ledger.residual[-1]) - float(residual[0]))
    ratios = [
        mean_residuals[i + 1] / mean_residuals[i] for i in range(levels - 1)
    ]
    halving_ok = all(0.35 <= r <= 0.65 for r in ratios) and ledger_gap <= 1e-10

    # The noise term is a martingale: its ensemble mean sits at zero.
    mart_values = np.empty(martingale_paths)
    steps = round(T_END / DT)
    cfg_mart = _config(net, seed=_SEED_MARTINGALE, initial=u0)
    block = 1024
    mart_gap = 0.0
    for start in range(0, martingale_paths, block):
        stop = min(start + block, martingale_paths)
        noise = _path_noise_block(_SEED_MARTINGALE, start, stop, steps, n, DT)
        records = integrate_batch(
            net, u0_arr, DT, sigma, noise, record=list(range(steps + 1))
        )
        mart, _ = _ledger_parts_terminal(net, u0_arr, DT, sigma, noise, records)
        mart_values[start:stop] = mart
        if start == 0:
            traj0 = Trajectory(
                times=np.arange(steps + 1) * DT,
                samples=records[0],
                config_echo=cfg_mart,
            )
            ledger = ito_track(traj0, net, cfg_mart, energy, noise[0])
            mart_gap = abs(float(ledger.noise_term[-1]) - float(mart[0]))
    mart_mean = float(np.mean(mart_values))
    mart_se = float(np.std(mart_values, ddof=1) / np.sqrt(martingale_paths))
    martingale_ok = abs(mart_mean) <= 3.0 * mart_se and mart_gap <= 1e-10

    passed = identity_ok and halving_ok and martingale_ok
    ratio_text = ", ".join(f"{r:.3f}" for r in ratios)
    return CheckResult(
        "ito-ledger",
        passed,
        (
            f"stepwise identity gap {worst_identity:.1e} (bound 1e-12); "
            f"residual ratios per dt halving [{ratio_text}] (band [0.35, 0.65]); "
            f"noise-term mean {mart_mean:.2e} vs 3SE {3.0 * mart_se:.2e}"
        ),
        {
            "identity_max_gap": worst_identity,
            "mean_residuals": mean_residuals,
            "residual_ratios": ratios,
            "ledger_vs_batch_gap": ledger_gap,
            "martingale_mean": mart_mean,
            "martingale_se": mart_se,
            "martingale_paths": martingale_paths,
        },
    )


def _discrete_expected_energy(
    oracle: SpectralOracle, u0: np.ndarray, dt: float, steps: int
) -> float:
    """Closed-form expected terminal energy of the discrete update itself."""
    lam = oracle.eigenvalues
    a = 1.0 - dt * lam
    q0 = oracle.eigenvectors.T @ u0
    mean_part = 0.5 * float(np.sum(a ** (2 * steps) * q0**2))
    v = oracle.eigenvectors
    b_diag = np.sum((oracle.sigma_diag[:, None] * v) ** 2, axis=0)
    denom = 1.0 - a * a
    with np.errstate(divide="ignore", invalid="ignore"):
        geom = (1.0 - a ** (2 * steps)) / denom
    geom = np.where(lam < _NULL_EIGENVALUE_CUTOFF, float(steps), geom)
    var_part = 0.5 * dt * float(np.sum(b_diag * geom))
    return mean_part + var_part


def _check_energy_balance(res_rand, cfg_rand, oracle, u0) -> CheckResult:
    u0_arr = np.asarray(u0)
    mean_t = exact_mean(oracle, u0_arr, T_END)
    exact_energy = 0.5 * float(np.trace(exact_covariance(oracle, T_END))) + 0.5 * float(
        np.dot(mean_t, mean_t)
    )
    disc_energy = _discrete_expected_energy(oracle, u0_arr, DT, cfg_rand.num_steps)
    slack = 2.0 * abs(disc_energy - exact_energy)
    tolerance = 3.0 * res_rand.terminal_energy_se + slack
    gap = abs(res_rand.terminal_energy_mean - exact_energy)
    passed = gap <= tolerance
    return CheckResult(
        "energy-balance",
        passed,
        (
            f"mean terminal energy off by {gap:.2e} vs tolerance {tolerance:.2e} "
            f"(3SE {3.0 * res_rand.terminal_energy_se:.2e} + step-size slack {slack:.2e})"
        ),
        {
            "sample_energy": res_rand.terminal_energy_mean,
            "exact_energy": exact_energy,
            "discrete_energy": disc_energy,
            "slack": slack,
        },
    )


def _check_quadratic_variation(net, u0, paths: int) -> CheckResult:
    n = net.site_count
    dt = 1e-3
    steps = round(T_END / dt)
    sigma = np.full(n, SIGMA)
    cfg = _config(net, seed=_SEED_QV, dt=dt, initial=u0)
    u0_arr = np.asarray(u0)
    stat_sum = np.zeros(n)
    shipped_gap = 0.0
    block = 64
    for start in range(0, paths, block):
        stop = min(start + block, paths)
        noise = _path_noise_block(_SEED_QV, start, stop, steps, n, dt)
        records = integrate_batch(
            net, u0_arr, dt, sigma, noise, record=list(range(steps + 1))
        )
        resid = np.diff(records, axis=1) - curvature(net, records[:, :-1, :]) * dt
        stat = np.sum(resid**2, axis=1) / (sigma**2 * T_END)
        stat_sum += np.sum(stat, axis=0)
        if start == 0:
            traj0 = Trajectory(
                times=np.arange(steps + 1) * dt,
                samples=records[0],
                config_echo=cfg,
            )
            shipped = realized_noise_quadratic_variation(traj0, net, cfg)
            shipped_gap = float(np.max(np.abs(shipped - stat[0])))
    averaged = stat_sum / paths
    passed = bool(np.all((averaged >= 0.9) & (averaged <= 1.1))) and shipped_gap <= 1e-10
    return CheckResult(
        "quadratic-variation",
        passed,
        (
            f"per-site QV statistic in [{float(np.min(averaged)):.3f}, "
            f"{float(np.max(averaged)):.3f}] over {paths} paths (band [0.9, 1.1])"
        ),
        {"per_site": averaged.tolist(), "paths": paths},
    )


def _check_determinism(net, u0, paths: int, workers_b: int) -> CheckResult:
    cfg = _config(net, seed=_SEED_DETERMINISM)
    traj_a = simulate(net, cfg, NoiseStream(cfg.seed))
    traj_b = simulate(net, cfg, NoiseStream(cfg.seed))
    csv_match = smcio.trajectory_to_csv(traj_a) == smcio.trajectory_to_csv(traj_b)
    replay_match = np.array_equal(traj_a.samples, traj_b.samples)

    cfg_e = _config(net, seed=_SEED_DETERMINISM, initial=u0)
    res_one = run_ensemble(net, cfg_e, paths, workers=1)
    res_many = run_ensemble(net, cfg_e, paths, workers=workers_b)
    ensemble_match = (
        np.array_equal(res_one.terminal_mean, res_many.terminal_mean)
        and np.array_equal(res_one.terminal_mean_se, res_many.terminal_mean_se)
        and np.array_equal(res_one.terminal_covariance, res_many.terminal_covariance)
        and res_one.graph_mean_variance == res_many.graph_mean_variance
        and res_one.terminal_energy_mean == res_many.terminal_energy_mean
    )
    passed = csv_match and replay_match and ensemble_match
    return CheckResult(
        "determinism",
        passed,
        (
            f"repeat run CSV identical: {csv_match}; ensemble of {paths} paths "
            f"bit-identical with 1 vs {workers_b} workers: {ensemble_match}"
        ),
        {
            "csv_match": csv_match,
            "replay_match": replay_match,
            "ensemble_match": ensemble_match,
            "workers_compared": workers_b,
        },
    )


def _check_legacy_sweep() -> CheckResult:
    net = build_path_graph(3)
    cfg = SimConfig.build(
        net, dt=0.1, t_end=0.1, sigma=0.0, seed=0,
        update_mode="legacy-sequential", initial=(0.0, 1.0, 0.0),
    )
    state = State(positions=np.array([0.0, 1.0, 0.0]), time=0.0)
    noise = np.zeros(3)
    swept = em_step_sequential(net, state, cfg, noise).positions

    # The same arithmetic the in-place sweep performs, written out by hand.
    h0 = 0.0 + ((0.0 * -1.0 + 1.0) * 0.1 + 0.0)
    h1 = 1.0 + ((1.0 * -2.0 + h0 + 0.0) * 0.1 + 0.0)
    h2 = 0.0 + ((0.0 * -1.0 + h1) * 0.1 + 0.0)
    hand = np.array([h0, h1, h2])
    sweep_exact = np.array_equal(swept, hand)
    near_decimal = bool(np.max(np.abs(swept - np.array([0.1, 0.81, 0.081]))) <= 1e-15)

    cfg_sync = SimConfig.build(
        net, dt=0.1, t_end=0.1, sigma=0.0, seed=0, initial=(0.0, 1.0, 0.0)
    )
    synced = em_step(net, state, cfg_sync, noise).positions
    sync_exact = np.array_equal(synced, np.array([0.1, 0.8, 0.1]))
    modes_differ = not np.array_equal(swept, synced)

    passed = sweep_exact and near_decimal and sync_exact and modes_differ
    return CheckResult(
        "legacy-sweep",
        passed,
        (
            f"in-place sweep reproduces (0.1, 0.81, 0.081): {sweep_exact and near_decimal}; "
            f"synchronous gives (0.1, 0.8, 0.1) and differs: {sync_exact and modes_differ}"
        ),
        {
            "swept": swept.tolist(),
            "synchronous": synced.tolist(),
            "sweep_matches_hand_arithmetic": sweep_exact,
            "modes_differ": modes_differ,
        },
    )


def _ensemble_vs_oracle_block(res_rand, cfg_rand, oracle, u0) -> dict:
    u0_arr = np.asarray(u0)
    m = res_rand.path_count
    var_se = np.diag(res_rand.terminal_covariance) * np.sqrt(2.0 / (m - 1))
    exact_energy_series = []
    for t in res_rand.series_times:
        mean_t = exact_mean(oracle, u0_arr, float(t))
        exact_energy_series.append(
            0.5 * float(np.trace(exact_covariance(oracle, float(t))))
            + 0.5 * float(np.dot(mean_t, mean_t))
        )
    return {
        "path_count": m,
        "t_end": cfg_rand.t_end,
        "initial": list(u0),
        "terminal_mean": res_rand.terminal_mean.tolist(),
        "terminal_mean_se": res_rand.terminal_mean_se.tolist(),
        "exact_mean": exact_mean(oracle, u0_arr, cfg_rand.t_end).tolist(),
        "terminal_variance": np.diag(res_rand.terminal_covariance).tolist(),
        "terminal_variance_se": var_se.tolist(),
        "exact_variance": np.diag(exact_covariance(oracle, cfg_rand.t_end)).tolist(),
        "series": {
            "times": res_rand.series_times.tolist(),
            "energy_mean": res_rand.energy_mean_series.tolist(),
            "exact_energy_mean": exact_energy_series,
            "graph_mean_variance": res_rand.graph_mean_variance_series.tolist(),
            "exact_graph_mean_variance": [
                SIGMA**2 * float(t) / SITES for t in res_rand.series_times
            ],
        },
    }


def run_validation(quick: bool = False, workers: int = 1) -> ValidationReport:
    """Run every check and collect the pass/fail report.

    ``quick`` shrinks ensemble sizes roughly tenfold for a smoke run and
    widens the fixed percentage bands by 2.5x to keep the smaller samples
    meaningful; standard-error-based tolerances adjust automatically.
    """
    if quick:
        mean_paths, strong_paths = 2000, 512
        martingale_paths, residual_paths = 1000, 256
        pct_scale = 2.5
    else:
        mean_paths, strong_paths = 20000, 2048
        martingale_paths, residual_paths = 5000, 1024
        pct_scale = 1.0
    qv_paths = 128
    determinism_paths = 2049

    net = build_path_graph(SITES)
    u0 = _reference_initial()
    oracle = oracle_for_network(net, SIGMA)

    cfg_zero = _config(net, seed=_SEED_MEAN_ZERO, initial=(0.0,) * SITES)
    res_zero = run_ensemble(net, cfg_zero, mean_paths, workers=workers)
    cfg_rand = _config(net, seed=_SEED_MEAN_RANDOM, initial=u0, record_every=5)
    res_rand = run_ensemble(net, cfg_rand, mean_paths, workers=workers, series=True)

    checks = (
        _check_curvature_laplacian(),
        _check_chain_stencil(),
        _check_deterministic_flow(),
        _check_weak_mean(res_zero, cfg_zero, res_rand, cfg_rand, net, oracle),
        _check_covariance(res_zero, oracle, pct_scale),
        _check_strong_order(net, u0, strong_paths, workers),
        _check_ito_ledger(net, u0, residual_paths, martingale_paths),
        _check_energy_balance(res_rand, cfg_rand, oracle, u0),
        _check_quadratic_variation(net, u0, qv_paths),
        _check_determinism(net, u0, determinism_paths, workers_b=max(2, workers)),
        _check_legacy_sweep(),
    )
    return ValidationReport(
        passed=all(c.passed for c in checks),
        quick=quick,
        checks=checks,
        ensemble_vs_oracle=_ensemble_vs_oracle_block(res_rand, cfg_rand, oracle, u0),
    )
