"""Figures from simulation artifact files.

A standalone consumer of the file formats the smcflow tool writes: it reads
trajectory CSVs, energy-ledger CSVs, and ensemble/validation JSON reports,
and renders them as figures.  It never recomputes simulation values; every
plotted number traces to a field of an input file.
"""

__version__ = "0.1.0"

from .io import (
    extract_oracle_comparison,
    load_report,
    read_ledger_csv,
    read_trajectory_csv,
)
from .plots import (
    KINDS,
    PLOTTERS,
    PlotSpec,
    plot_energy_ledger,
    plot_ensemble_vs_oracle,
    plot_trajectories,
)

__all__ = [
    "__version__",
    "extract_oracle_comparison",
    "load_report",
    "read_ledger_csv",
    "read_trajectory_csv",
    "KINDS",
    "PLOTTERS",
    "PlotSpec",
    "plot_energy_ledger",
    "plot_ensemble_vs_oracle",
    "plot_trajectories",
]
