"""Command line front end.

Subcommands: ``simulate`` (one path to CSV), ``ensemble`` (Monte Carlo
summary to JSON), ``converge`` (pathwise convergence measurement),
``oracle`` (closed-form mean and covariance), ``validate`` (the full
correctness suite).  Settings resolve as flags over config file over
defaults; the defaults are a 10-site chain, t_end 1.0, dt 0.01, sigma 0.1,
synchronous updates.

Exit codes: 0 success, 1 validation failure, 2 bad configuration or usage,
3 file I/O failure, 4 numeric divergence.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .engine import NoiseStream, SimulationDivergedError, replay_increments, simulate
from .functionals import ito_track, quadratic_energy
from .ensemble import run_ensemble, strong_order_estimate
from .oracle import exact_covariance, exact_mean, oracle_for_network
from . import io as smcio
from .validate import run_validation

__all__ = ["main", "build_parser"]


def _parse_float_list(text: str, flag: str) -> float | list[float]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError(f"{flag} needs at least one number")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"{flag} must be a number or comma-separated numbers") from None
    return values[0] if len(values) == 1 else values


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="JSON settings file")
    parser.add_argument("--sites", type=int, help="number of sites on a chain")
    parser.add_argument("--dt", type=float, help="time step")
    parser.add_argument("--t-end", type=float, help="total simulated time")
    parser.add_argument(
        "--sigma", help="noise intensity, one number or a comma-separated list"
    )
    parser.add_argument("--seed", type=int, help="master random seed")
    parser.add_argument(
        "--update-mode",
        choices=["synchronous", "legacy-sequential"],
        help="step rule: evaluate all sites at once, or sweep in place",
    )
    parser.add_argument("--record-every", type=int, help="store every k-th step")
    parser.add_argument(
        "--initial",
        help='"uniform", "zeros", or comma-separated starting positions',
    )


def _resolve(args) -> tuple:
    settings = dict(smcio.CONFIG_DEFAULTS)
    if args.config:
        settings.update(smcio.load_config_file(args.config))
    for key, value in (
        ("sites", args.sites),
        ("dt", args.dt),
        ("t_end", args.t_end),
        ("seed", args.seed),
        ("update_mode", args.update_mode),
        ("record_every", args.record_every),
    ):
        if value is not None:
            settings[key] = value
    if args.sigma is not None:
        settings["sigma"] = _parse_float_list(args.sigma, "--sigma")
    if args.initial is not None:
        text = args.initial.strip()
        if text == "uniform":
            settings["initial"] = "uniform"
        elif text == "zeros":
            settings["initial"] = [0.0] * int(settings["sites"])
        else:
            value = _parse_float_list(text, "--initial")
            settings["initial"] = [value] if isinstance(value, float) else value
    settings = smcio.normalize_config(settings)
    return smcio.build_simulation(settings)


def cmd_simulate(args) -> int:
    net, cfg = _resolve(args)
    if args.energy_ledger and cfg.record_every != 1:
        raise ValueError("--energy-ledger needs --record-every 1")
    started = time.perf_counter()
    traj = simulate(net, cfg, NoiseStream(cfg.seed))
    out = Path(args.output)
    smcio.write_trajectory_csv(out, traj)
    outputs = {"trajectory": str(out)}
    if args.energy_ledger:
        noise = replay_increments(net, cfg, NoiseStream(cfg.seed))
        ledger = ito_track(traj, net, cfg, quadratic_energy(net.site_count), noise)
        smcio.write_ledger_csv(args.energy_ledger, ledger)
        outputs["energy_ledger"] = str(args.energy_ledger)
    manifest = {
        "tool_version": __version__,
        "command": args.argv,
        "config": smcio.config_payload(net, cfg),
        "outputs": outputs,
        "wall_time_seconds": time.perf_counter() - started,
    }
    manifest_path = out.with_suffix(".manifest.json")
    smcio.write_json(manifest_path, manifest)
    rows, cols = traj.samples.shape
    print(f"wrote {out} ({rows} rows x {cols + 1} columns) and {manifest_path}")
    return 0


def cmd_ensemble(args) -> int:
    net, cfg = _resolve(args)
    oracle = oracle_for_network(net, cfg.sigma) if args.oracle else None
    result = run_ensemble(
        net, cfg, args.paths, workers=args.workers, series=args.series
    )
    payload = smcio.ensemble_report(result, net, cfg, oracle)
    smcio.write_json(args.output, payload)
    print(
        f"wrote {args.output}: {result.path_count} paths, "
        f"graph-mean variance {result.graph_mean_variance:.6g}"
    )
    return 0


def cmd_converge(args) -> int:
    net, cfg = _resolve(args)
    result = strong_order_estimate(
        net, cfg, args.paths, refinement_levels=args.levels, workers=args.workers
    )
    payload = {
        "slope": result.slope,
        "dts": result.dts.tolist(),
        "rms": result.rms.tolist(),
        "paths": args.paths,
        "config": smcio.config_payload(net, cfg),
    }
    smcio.write_json(args.output, payload)
    print(f"wrote {args.output}: measured convergence slope {result.slope:.3f}")
    return 0


def cmd_oracle(args) -> int:
    net, cfg = _resolve(args)
    if cfg.initial == "uniform":
        raise ValueError(
            "closed-form output needs a fixed starting point; "
            "pass --initial or set initial in the config"
        )
    t = cfg.t_end if args.time is None else args.time
    if t < 0.0:
        raise ValueError("--time must be non-negative")
    oracle = oracle_for_network(net, cfg.sigma)
    mean = exact_mean(oracle, np.asarray(cfg.initial), t)
    cov = exact_covariance(oracle, t)
    payload = {
        "time": t,
        "exact_mean": mean.tolist(),
        "exact_covariance": cov.tolist(),
        "exact_covariance_diag": np.diag(cov).tolist(),
        "config": smcio.config_payload(net, cfg),
    }
    if args.output:
        smcio.write_json(args.output, payload)
        print(f"wrote {args.output}")
    else:
        print(json.dumps(payload, indent=2))
    return 0


def cmd_validate(args) -> int:
    report = run_validation(quick=args.quick, workers=args.workers)
    for line in report.lines():
        print(line)
    smcio.write_json(args.output, report.to_dict())
    print(f"report written to {args.output}")
    print(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smcflow",
        description="Noisy curvature-driven dynamics on site networks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="integrate one path and write CSV")
    _add_config_flags(p_sim)
    p_sim.add_argument("-o", "--output", default="trajectory.csv", help="CSV path")
    p_sim.add_argument(
        "--energy-ledger",
        metavar="FILE",
        help="also write the quadratic-energy bookkeeping CSV (needs --record-every 1)",
    )
    p_sim.set_defaults(func=cmd_simulate)

    p_ens = sub.add_parser("ensemble", help="run many paths and summarize")
    _add_config_flags(p_ens)
    p_ens.add_argument("--paths", type=int, default=1000, help="number of paths")
    p_ens.add_argument("--workers", type=int, default=1, help="worker processes")
    p_ens.add_argument(
        "--series", action="store_true", help="include energy and variance time series"
    )
    p_ens.add_argument(
        "--oracle", action="store_true", help="include closed-form mean and variance"
    )
    p_ens.add_argument("-o", "--output", default="ensemble.json", help="report path")
    p_ens.set_defaults(func=cmd_ensemble)

    p_con = sub.add_parser("converge", help="measure pathwise convergence order")
    _add_config_flags(p_con)
    p_con.add_argument("--paths", type=int, default=2000, help="number of paths")
    p_con.add_argument("--levels", type=int, default=4, help="dyadic refinement levels")
    p_con.add_argument("--workers", type=int, default=1, help="worker processes")
    p_con.add_argument("-o", "--output", default="convergence.json", help="report path")
    p_con.set_defaults(func=cmd_converge)

    p_ora = sub.add_parser("oracle", help="closed-form mean and covariance as JSON")
    _add_config_flags(p_ora)
    p_ora.add_argument("--time", type=float, help="evaluation time (default t_end)")
    p_ora.add_argument("-o", "--output", help="write JSON here instead of stdout")
    p_ora.set_defaults(func=cmd_oracle)

    p_val = sub.add_parser("validate", help="run the correctness suite")
    p_val.add_argument("--quick", action="store_true", help="smaller, faster ensembles")
    p_val.add_argument("--workers", type=int, default=1, help="worker processes")
    p_val.add_argument("-o", "--output", default="validation.json", help="report path")
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        return args.func(args)
    except SimulationDivergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
