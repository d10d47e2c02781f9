"""Monte Carlo ensemble statistics against the exact Gaussian law.

Run from the repository root:

    python3 demos/02_ensemble_vs_oracle.py

The process is a linear SDE, so its solution is Gaussian with a mean and
covariance that follow from the Laplacian's eigendecomposition.  An ensemble
of simulated paths must reproduce both, and the spatial average must behave
as a slowed-down Brownian motion: variance sigma^2 t / N at every time.
"""

import numpy as np

from smcflow import (
    SimConfig,
    build_path_graph,
    exact_covariance,
    exact_mean,
    oracle_for_network,
    run_ensemble,
    weak_error,
)

PATHS = 4000


def main() -> None:
    net = build_path_graph(8)
    rng = np.random.default_rng(7)
    u0 = tuple(float(x) for x in rng.uniform(0.0, 1.0, net.site_count))
    cfg = SimConfig.build(
        net, dt=0.01, t_end=1.0, sigma=0.1, seed=2024, initial=u0
    )

    result = run_ensemble(net, cfg, PATHS, series=True)
    oracle = oracle_for_network(net, cfg.sigma)

    mean_exact = exact_mean(oracle, np.array(u0), cfg.t_end)
    var_exact = np.diag(exact_covariance(oracle, cfg.t_end))

    print(f"{PATHS} paths on an {net.site_count}-site chain\n")
    print("site   mean(sim)   mean(exact)   var(sim)    var(exact)")
    for i in range(net.site_count):
        print(
            f"{i:>4}   {result.terminal_mean[i]:>9.5f}   {mean_exact[i]:>11.5f}"
            f"   {result.terminal_covariance[i, i]:>8.6f}   {var_exact[i]:>9.6f}"
        )

    report = weak_error(net, cfg, PATHS)
    worst = np.max(report.abs_error / report.tolerance)
    print(f"\nweak-error check passed: {report.passed}"
          f" (worst site at {worst:.2f}x tolerance)")

    gm_exact = cfg.sigma[0] ** 2 * cfg.t_end / net.site_count
    print(f"graph-mean variance: {result.graph_mean_variance:.3e}"
          f" vs exact {gm_exact:.3e}")

    print("\nvariance of the spatial average along the run:")
    for t, v in zip(result.series_times[::25], result.graph_mean_variance_series[::25]):
        print(f"  t={t:4.2f}   simulated {v:.3e}   exact {cfg.sigma[0] ** 2 * t / net.site_count:.3e}")


if __name__ == "__main__":
    main()
