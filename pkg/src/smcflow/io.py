"""File formats: trajectory CSV, ledger CSV, config and report JSON.

CSV values are written with the %.17g format so every float round-trips
exactly; files always use LF line endings and end with a newline, which keeps
repeated runs byte-identical.  Config dictionaries follow a small fixed
schema and unknown keys are rejected rather than ignored.
"""

from __future__ import annotations

import json
import numbers

import numpy as np

from .network import Network, build_from_pairs, build_path_graph
from .engine import SimConfig, Trajectory
from .functionals import ItoLedger
from .ensemble import EnsembleResult
from .oracle import SpectralOracle, exact_covariance, exact_mean

__all__ = [
    "CONFIG_KEYS",
    "CONFIG_DEFAULTS",
    "trajectory_to_csv",
    "write_trajectory_csv",
    "read_trajectory_csv",
    "ledger_to_csv",
    "write_ledger_csv",
    "read_ledger_csv",
    "write_json",
    "config_payload",
    "normalize_config",
    "load_config_file",
    "build_simulation",
    "ensemble_report",
]

LEDGER_COLUMNS = ("time", "f_value", "drift_cum", "noise_cum", "qv_cum", "residual")

CONFIG_KEYS = (
    "topology",
    "sites",
    "pairs",
    "dt",
    "t_end",
    "sigma",
    "seed",
    "update_mode",
    "record_every",
    "initial",
)

CONFIG_DEFAULTS = {
    "topology": "path",
    "sites": 10,
    "dt": 0.01,
    "t_end": 1.0,
    "sigma": 0.1,
    "seed": 0,
    "update_mode": "synchronous",
    "record_every": 1,
    "initial": "uniform",
}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def trajectory_to_csv(traj: Trajectory) -> str:
    """Render a trajectory as CSV text with a time column and one per site."""
    n = traj.site_count
    header = "time," + ",".join(f"site_{i}" for i in range(n))
    lines = [header]
    for t, row in zip(traj.times, traj.samples):
        lines.append(",".join([_fmt(t)] + [_fmt(x) for x in row]))
    return "\n".join(lines) + "\n"


def write_trajectory_csv(path, traj: Trajectory) -> None:
    with open(path, "w", newline="") as handle:
        handle.write(trajectory_to_csv(traj))


def read_trajectory_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Parse a trajectory CSV back into (times, samples) arrays."""
    with open(path, "r", newline="") as handle:
        lines = [line for line in handle.read().split("\n") if line]
    if not lines:
        raise ValueError(f"{path}: empty trajectory file")
    header = lines[0].split(",")
    if header[0] != "time" or len(header) < 2:
        raise ValueError(f"{path}: malformed header {lines[0]!r}")
    for i, name in enumerate(header[1:]):
        if name != f"site_{i}":
            raise ValueError(f"{path}: unexpected column {name!r}")
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(f"{path}: row has {len(cells)} cells, header has {len(header)}")
        rows.append([float(cell) for cell in cells])
    data = np.array(rows)
    if data.size == 0:
        raise ValueError(f"{path}: no data rows")
    return data[:, 0], data[:, 1:]


def ledger_to_csv(ledger: ItoLedger) -> str:
    """Render an Ito ledger as CSV with cumulative columns and the residual."""
    lines = [",".join(LEDGER_COLUMNS)]
    residual = ledger.residual
    for k in range(len(ledger.times)):
        cells = (
            ledger.times[k],
            ledger.f_values[k],
            ledger.drift_term[k],
            ledger.noise_term[k],
            ledger.qv_term[k],
            residual[k],
        )
        lines.append(",".join(_fmt(x) for x in cells))
    return "\n".join(lines) + "\n"


def write_ledger_csv(path, ledger: ItoLedger) -> None:
    with open(path, "w", newline="") as handle:
        handle.write(ledger_to_csv(ledger))


def read_ledger_csv(path) -> dict[str, np.ndarray]:
    """Parse a ledger CSV into a column-name -> array mapping."""
    with open(path, "r", newline="") as handle:
        lines = [line for line in handle.read().split("\n") if line]
    if not lines or tuple(lines[0].split(",")) != LEDGER_COLUMNS:
        raise ValueError(f"{path}: malformed ledger header")
    data = np.array([[float(cell) for cell in line.split(",")] for line in lines[1:]])
    if data.size == 0:
        raise ValueError(f"{path}: no data rows")
    return {name: data[:, j] for j, name in enumerate(LEDGER_COLUMNS)}


def write_json(path, payload: dict) -> None:
    with open(path, "w", newline="") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def _is_number(x) -> bool:
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


def _is_int(x) -> bool:
    return isinstance(x, numbers.Integral) and not isinstance(x, bool)


def normalize_config(raw: dict) -> dict:
    """Validate types and keys of a config mapping; no defaults are applied."""
    if not isinstance(raw, dict):
        raise ValueError("config must be a JSON object")
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    out = {}
    if "topology" in raw:
        if raw["topology"] not in ("path", "pairs"):
            raise ValueError('topology must be "path" or "pairs"')
        out["topology"] = raw["topology"]
    if "sites" in raw:
        if not _is_int(raw["sites"]):
            raise ValueError("sites must be an integer")
        out["sites"] = int(raw["sites"])
    if "pairs" in raw:
        pairs = raw["pairs"]
        if not isinstance(pairs, (list, tuple)):
            raise ValueError("pairs must be a list of [i, j] site pairs")
        checked = []
        for pair in pairs:
            if not (isinstance(pair, (list, tuple)) and len(pair) == 2
                    and _is_int(pair[0]) and _is_int(pair[1])):
                raise ValueError("pairs must be a list of [i, j] site pairs")
            checked.append((int(pair[0]), int(pair[1])))
        out["pairs"] = checked
    for key in ("dt", "t_end"):
        if key in raw:
            if not _is_number(raw[key]):
                raise ValueError(f"{key} must be a number")
            out[key] = float(raw[key])
    if "sigma" in raw:
        sigma = raw["sigma"]
        if _is_number(sigma):
            out["sigma"] = float(sigma)
        elif isinstance(sigma, (list, tuple)) and sigma and all(_is_number(s) for s in sigma):
            out["sigma"] = [float(s) for s in sigma]
        else:
            raise ValueError("sigma must be a number or a non-empty list of numbers")
    if "seed" in raw:
        if not _is_int(raw["seed"]):
            raise ValueError("seed must be an integer")
        out["seed"] = int(raw["seed"])
    if "update_mode" in raw:
        if not isinstance(raw["update_mode"], str):
            raise ValueError("update_mode must be a string")
        out["update_mode"] = raw["update_mode"]
    if "record_every" in raw:
        if not _is_int(raw["record_every"]):
            raise ValueError("record_every must be an integer")
        out["record_every"] = int(raw["record_every"])
    if "initial" in raw:
        initial = raw["initial"]
        if initial == "uniform":
            out["initial"] = "uniform"
        elif isinstance(initial, (list, tuple)) and initial and all(
            _is_number(x) for x in initial
        ):
            out["initial"] = [float(x) for x in initial]
        else:
            raise ValueError('initial must be "uniform" or a non-empty list of numbers')
    return out


def load_config_file(path) -> dict:
    """Read a config JSON file; run manifests are unwrapped to their config."""
    with open(path, "r") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    if isinstance(raw, dict) and "config" in raw and "tool_version" in raw:
        raw = raw["config"]
    try:
        return normalize_config(raw)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def build_simulation(resolved: dict) -> tuple[Network, SimConfig]:
    """Construct the network and config from a fully resolved settings dict."""
    missing = [k for k in CONFIG_KEYS if k not in resolved and k != "pairs"]
    if missing:
        raise ValueError(f"config is missing keys: {', '.join(missing)}")
    if resolved["topology"] == "path":
        if "pairs" in resolved:
            raise ValueError('pairs are only valid with topology "pairs"')
        net = build_path_graph(resolved["sites"])
    else:
        if "pairs" not in resolved:
            raise ValueError('topology "pairs" needs a pairs list')
        net = build_from_pairs(resolved["sites"], resolved["pairs"])
    initial = resolved["initial"]
    if isinstance(initial, list):
        initial = tuple(initial)
    cfg = SimConfig.build(
        net,
        dt=resolved["dt"],
        t_end=resolved["t_end"],
        sigma=resolved["sigma"],
        seed=resolved["seed"],
        update_mode=resolved["update_mode"],
        record_every=resolved["record_every"],
        initial=initial,
    )
    return net, cfg


def _is_path_topology(net: Network) -> bool:
    n = net.site_count
    return n >= 2 and net.pairs == tuple((i, i + 1) for i in range(n - 1))


def config_payload(net: Network, cfg: SimConfig) -> dict:
    """Config dict that rebuilds this exact network and run settings."""
    payload: dict = {}
    if _is_path_topology(net):
        payload["topology"] = "path"
        payload["sites"] = net.site_count
    else:
        payload["topology"] = "pairs"
        payload["sites"] = net.site_count
        payload["pairs"] = [list(p) for p in net.pairs]
    payload["dt"] = cfg.dt
    payload["t_end"] = cfg.t_end
    sigma = list(cfg.sigma)
    payload["sigma"] = sigma[0] if len(set(sigma)) == 1 else sigma
    payload["seed"] = cfg.seed
    payload["update_mode"] = cfg.update_mode.value
    payload["record_every"] = cfg.record_every
    payload["initial"] = (
        "uniform" if cfg.initial == "uniform" else list(cfg.initial)
    )
    return payload


def ensemble_report(
    result: EnsembleResult,
    net: Network,
    cfg: SimConfig,
    oracle: SpectralOracle | None = None,
) -> dict:
    """JSON-ready summary of an ensemble run, optionally with exact values."""
    payload = {
        "path_count": result.path_count,
        "config": config_payload(net, cfg),
        "terminal_mean": result.terminal_mean.tolist(),
        "terminal_mean_se": result.terminal_mean_se.tolist(),
        "terminal_covariance": result.terminal_covariance.tolist(),
        "graph_mean_variance": result.graph_mean_variance,
        "graph_mean_variance_se": result.graph_mean_variance_se,
        "terminal_energy_mean": result.terminal_energy_mean,
        "terminal_energy_se": result.terminal_energy_se,
    }
    if result.series_times is not None:
        payload["series"] = {
            "times": result.series_times.tolist(),
            "energy_mean": result.energy_mean_series.tolist(),
            "graph_mean_variance": result.graph_mean_variance_series.tolist(),
        }
    if oracle is not None:
        if cfg.initial == "uniform":
            raise ValueError("exact-solution comparison needs a fixed initial vector")
        u0 = np.asarray(cfg.initial, dtype=float)
        mean = exact_mean(oracle, u0, cfg.t_end)
        cov = exact_covariance(oracle, cfg.t_end)
        payload["oracle"] = {
            "exact_mean": mean.tolist(),
            "exact_covariance_diag": np.diag(cov).tolist(),
        }
    return payload
