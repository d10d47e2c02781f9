"""Noisy curvature-driven dynamics on site networks.

Each site of a network moves by the discrete curvature of its neighborhood
(the negative graph Laplacian applied to the positions) plus independent
Gaussian noise, du_i = kappa_i dt + sigma_i dW_i.  The package integrates
these dynamics with an explicit Euler-Maruyama scheme under a reproducible
per-path random stream contract, tracks scalar functionals through their
drift, martingale and quadratic-variation parts, compares Monte Carlo
ensembles against the closed-form Gaussian solution, and ships a validation
suite tying all of it together.
"""

__version__ = "0.1.0"

from .network import (
    Network,
    State,
    build_from_pairs,
    build_path_graph,
    curvature,
    laplacian_matrix,
    laplacian_spectral_radius,
)
from .engine import (
    NoiseStream,
    SimConfig,
    SimulationDivergedError,
    StabilityWarning,
    Trajectory,
    UpdateMode,
    em_step,
    em_step_sequential,
    initial_positions,
    integrate_batch,
    replay_increments,
    simulate,
)
from .functionals import (
    FunctionalSpec,
    ItoLedger,
    discrete_energy_identity,
    expected_energy_drift,
    ito_track,
    quadratic_energy,
    realized_noise_quadratic_variation,
    total_position,
)
from .oracle import (
    SpectralOracle,
    exact_covariance,
    exact_mean,
    oracle_for_network,
    spectral_decompose,
    stationary_deviation_covariance,
)
from .ensemble import (
    EnsembleResult,
    StrongOrderResult,
    WeakErrorReport,
    run_ensemble,
    strong_order_estimate,
    weak_error,
    weak_error_report,
)
from .io import (
    ensemble_report,
    read_ledger_csv,
    read_trajectory_csv,
    write_ledger_csv,
    write_trajectory_csv,
)
from .validate import CheckResult, ValidationReport, run_validation

__all__ = [
    "__version__",
    "Network",
    "State",
    "build_from_pairs",
    "build_path_graph",
    "curvature",
    "laplacian_matrix",
    "laplacian_spectral_radius",
    "NoiseStream",
    "SimConfig",
    "SimulationDivergedError",
    "StabilityWarning",
    "Trajectory",
    "UpdateMode",
    "em_step",
    "em_step_sequential",
    "initial_positions",
    "integrate_batch",
    "replay_increments",
    "simulate",
    "FunctionalSpec",
    "ItoLedger",
    "discrete_energy_identity",
    "expected_energy_drift",
    "ito_track",
    "quadratic_energy",
    "realized_noise_quadratic_variation",
    "total_position",
    "SpectralOracle",
    "exact_covariance",
    "exact_mean",
    "oracle_for_network",
    "spectral_decompose",
    "stationary_deviation_covariance",
    "EnsembleResult",
    "StrongOrderResult",
    "WeakErrorReport",
    "run_ensemble",
    "strong_order_estimate",
    "weak_error",
    "weak_error_report",
    "ensemble_report",
    "read_ledger_csv",
    "read_trajectory_csv",
    "write_ledger_csv",
    "write_trajectory_csv",
    "CheckResult",
    "ValidationReport",
    "run_validation",
]
