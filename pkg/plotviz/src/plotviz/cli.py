"""Command-line entry point: render one figure from one artifact file."""

import argparse
import sys

import matplotlib

from . import __version__
from .plots import PLOTTERS, PlotSpec


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotviz",
        description=(
            "Render figures from simulation output files: trajectory CSVs, "
            "energy-ledger CSVs, and ensemble reports with exact-law blocks."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "kind",
        choices=["trajectories", "energy_ledger", "ensemble_vs_oracle"],
        help="which figure to draw",
    )
    parser.add_argument("input", help="input CSV or JSON file")
    parser.add_argument(
        "-o", "--output", required=True, help="image file to write (e.g. out.png)"
    )
    parser.add_argument(
        "--labels",
        default="Edge {index}",
        help='per-site label template; "{index}" is the 1-based site number',
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    matplotlib.use("Agg")  # file output only; no display needed
    try:
        spec = PlotSpec(
            input_path=args.input,
            kind=args.kind,
            output_path=args.output,
            labels=args.labels,
        )
        PLOTTERS[args.kind](spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
