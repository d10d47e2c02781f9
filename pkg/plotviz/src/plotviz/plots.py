"""Figure builders for simulation output files.

Each builder takes a PlotSpec, reads the input file, draws the figure,
writes it to the requested path, and returns the matplotlib Figure for
inspection.  Nothing is recomputed: every plotted value comes straight
from the input file.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import matplotlib.pyplot as plt

from .io import (
    extract_oracle_comparison,
    load_report,
    read_ledger_csv,
    read_trajectory_csv,
)

KINDS = ("trajectories", "energy_ledger", "ensemble_vs_oracle")

TRAJECTORY_TITLE = "Stochastic Mean Curvature Flow on Network"


@dataclass(frozen=True)
class PlotSpec:
    """What to plot: an input artifact, the figure kind, and the destination.

    ``labels`` is a template for per-site legend entries; ``{index}`` is
    replaced with the 1-based site number.
    """

    input_path: str | Path
    kind: str
    output_path: str | Path
    labels: str = "Edge {index}"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {', '.join(KINDS)}")
        try:
            rendered = self.labels.format(index=1)
        except (KeyError, IndexError, AttributeError):
            raise ValueError(
                'labels must be a template using "{index}", e.g. "Edge {index}"'
            ) from None
        if rendered == self.labels and "{" in self.labels:
            raise ValueError(
                'labels must be a template using "{index}", e.g. "Edge {index}"'
            )

    def label(self, site: int) -> str:
        return self.labels.format(index=site + 1)


def _finish(fig, spec: PlotSpec):
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    return fig


def plot_trajectories(spec: PlotSpec):
    """One line per site against time, in the classic fan layout."""
    times, samples = read_trajectory_csv(spec.input_path)
    n = samples.shape[1]
    fig, ax = plt.subplots(figsize=(9, 5))
    for i in range(n):
        ax.plot(times, samples[:, i], linewidth=1.2, label=spec.label(i))
    ax.set_xlabel("Time")
    ax.set_ylabel("Position")
    ax.set_title(TRAJECTORY_TITLE)
    ax.legend(loc="center left", bbox_to_anchor=(1.01, 0.5), fontsize="small")
    ax.grid(True, alpha=0.3)
    return _finish(fig, spec)


def plot_energy_ledger(spec: PlotSpec):
    """Cumulative drift, noise and quadratic-variation parts of a functional.

    The dashed line is the sum of the three tracked parts; it should hug the
    actual change of the functional, leaving only the small residual.
    """
    columns = read_ledger_csv(spec.input_path)
    times = columns["time"]
    change = columns["f_value"] - columns["f_value"][0]
    split = columns["drift_cum"] + columns["noise_cum"] + columns["qv_cum"]

    fig, (ax, ax_res) = plt.subplots(
        2, 1, figsize=(9, 6), sharex=True, height_ratios=[3, 1]
    )
    ax.plot(times, change, linewidth=1.8, label="actual change")
    ax.plot(times, columns["drift_cum"], linewidth=1.2, label="drift")
    ax.plot(times, columns["noise_cum"], linewidth=1.2, label="noise")
    ax.plot(times, columns["qv_cum"], linewidth=1.2, label="quadratic variation")
    ax.plot(times, split, "--", linewidth=1.2, label="drift + noise + qv")
    ax.set_ylabel("Cumulative change")
    ax.set_title("Functional increment ledger")
    ax.legend(fontsize="small")
    ax.grid(True, alpha=0.3)

    ax_res.plot(times, columns["residual"], linewidth=1.2, color="crimson")
    ax_res.axhline(0.0, color="gray", linewidth=0.8)
    ax_res.set_xlabel("Time")
    ax_res.set_ylabel("Residual")
    ax_res.grid(True, alpha=0.3)
    return _finish(fig, spec)


def plot_ensemble_vs_oracle(spec: PlotSpec):
    """Simulated ensemble statistics with error bars over the exact curves.

    Top panel: per-site terminal mean with three-standard-error bars against
    the closed-form mean.  Middle panel: the same for per-site variance
    (bars appear when the report carries variance standard errors).  When
    the report includes time series with exact curves, a third panel shows
    them along the run.
    """
    payload = load_report(spec.input_path)
    block = extract_oracle_comparison(payload, str(spec.input_path))
    sites = np.arange(1, len(block["mean"]) + 1)
    series = block["series"]
    has_series = bool(series) and "exact_graph_mean_variance" in series

    rows = 3 if has_series else 2
    fig, axes = plt.subplots(rows, 1, figsize=(9, 3.2 * rows))
    ax_mean, ax_var = axes[0], axes[1]

    ax_mean.errorbar(
        sites, block["mean"], yerr=3.0 * block["mean_se"],
        fmt="o", capsize=4, label="ensemble mean (3 SE bars)",
    )
    ax_mean.plot(sites, block["exact_mean"], "-", color="black", label="exact mean")
    ax_mean.set_ylabel("Terminal mean")
    ax_mean.set_title("Ensemble statistics against the exact law")
    ax_mean.legend(fontsize="small")
    ax_mean.grid(True, alpha=0.3)

    if block["variance_se"] is not None:
        ax_var.errorbar(
            sites, block["variance"], yerr=3.0 * block["variance_se"],
            fmt="s", capsize=4, label="ensemble variance (3 SE bars)",
        )
    else:
        ax_var.plot(sites, block["variance"], "s", label="ensemble variance")
    ax_var.plot(
        sites, block["exact_variance"], "-", color="black", label="exact variance"
    )
    ax_var.set_xlabel("Site")
    ax_var.set_ylabel("Terminal variance")
    ax_var.legend(fontsize="small")
    ax_var.grid(True, alpha=0.3)
    for axis in (ax_mean, ax_var):
        axis.set_xticks(sites)
        axis.set_xticklabels([spec.label(i) for i in range(len(sites))],
                             fontsize="small", rotation=45)

    if has_series:
        ax_ser = axes[2]
        times = np.asarray(series["times"], dtype=float)
        ax_ser.plot(
            times, series["graph_mean_variance"], "o-", markersize=3,
            label="graph-mean variance",
        )
        ax_ser.plot(
            times, series["exact_graph_mean_variance"], "--", color="black",
            label="exact: diffusion of the spatial average",
        )
        if "energy_mean" in series and "exact_energy_mean" in series:
            ax_twin = ax_ser.twinx()
            ax_twin.plot(
                times, series["energy_mean"], "s-", markersize=3,
                color="seagreen", label="mean energy",
            )
            ax_twin.plot(
                times, series["exact_energy_mean"], ":", color="darkgreen",
                label="exact mean energy",
            )
            ax_twin.set_ylabel("Mean energy")
            handles1, labels1 = ax_ser.get_legend_handles_labels()
            handles2, labels2 = ax_twin.get_legend_handles_labels()
            ax_ser.legend(handles1 + handles2, labels1 + labels2, fontsize="small")
        else:
            ax_ser.legend(fontsize="small")
        ax_ser.set_xlabel("Time")
        ax_ser.set_ylabel("Graph-mean variance")
        ax_ser.grid(True, alpha=0.3)

    return _finish(fig, spec)


PLOTTERS = {
    "trajectories": plot_trajectories,
    "energy_ledger": plot_energy_ledger,
    "ensemble_vs_oracle": plot_ensemble_vs_oracle,
}
