"""Strict readers for the smcflow file formats.

This package never runs simulations; every number it draws comes from a
file.  The readers therefore verify the documented schemas exactly and
refuse anything that deviates, rather than guessing at column meanings.
"""

import json

import numpy as np

LEDGER_COLUMNS = ("time", "f_value", "drift_cum", "noise_cum", "qv_cum", "residual")


def read_trajectory_csv(path):
    """Parse a trajectory CSV into (times, samples) arrays.

    Expected layout: header ``time,site_0,...,site_{N-1}``, one row per
    recorded time, every cell a finite float.
    """
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
            raise ValueError(
                f"{path}: row has {len(cells)} cells, header has {len(header)}"
            )
        try:
            rows.append([float(cell) for cell in cells])
        except ValueError:
            raise ValueError(f"{path}: non-numeric cell in row {line!r}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.array(rows)
    return data[:, 0], data[:, 1:]


def read_ledger_csv(path):
    """Parse an energy-ledger CSV into a column-name -> array mapping."""
    with open(path, "r", newline="") as handle:
        lines = [line for line in handle.read().split("\n") if line]
    if not lines or tuple(lines[0].split(",")) != LEDGER_COLUMNS:
        raise ValueError(f"{path}: malformed ledger header")
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != len(LEDGER_COLUMNS):
            raise ValueError(f"{path}: malformed ledger row {line!r}")
        try:
            rows.append([float(cell) for cell in cells])
        except ValueError:
            raise ValueError(f"{path}: non-numeric cell in row {line!r}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.array(rows)
    return {name: data[:, j] for j, name in enumerate(LEDGER_COLUMNS)}


def load_report(path):
    """Read a JSON report file."""
    with open(path, "r") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from exc


def _as_floats(block, key, path):
    try:
        values = block[key]
    except (KeyError, TypeError):
        raise ValueError(f"{path}: comparison block lacks {key!r}") from None
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{path}: {key!r} must be a non-empty list of numbers")
    return arr


def extract_oracle_comparison(payload, path="report"):
    """Normalize the simulated-vs-exact comparison out of a report payload.

    Two shapes are accepted: a validation report (its ``ensemble_vs_oracle``
    block carries means, variances and exact values side by side, plus time
    series), and an ensemble report written with the exact-law option (its
    ``oracle`` block carries the exact values).  The result has keys
    ``mean``, ``mean_se``, ``exact_mean``, ``variance``, ``variance_se``
    (which may be None), ``exact_variance``, and ``series`` (may be None).
    """
    if not isinstance(payload, dict):
        raise ValueError(f"{path}: report must be a JSON object")
    if "ensemble_vs_oracle" in payload:
        block = payload["ensemble_vs_oracle"]
        out = {
            "mean": _as_floats(block, "terminal_mean", path),
            "mean_se": _as_floats(block, "terminal_mean_se", path),
            "exact_mean": _as_floats(block, "exact_mean", path),
            "variance": _as_floats(block, "terminal_variance", path),
            "variance_se": _as_floats(block, "terminal_variance_se", path),
            "exact_variance": _as_floats(block, "exact_variance", path),
            "series": block.get("series"),
        }
    elif "oracle" in payload:
        covariance = payload.get("terminal_covariance")
        if covariance is None:
            raise ValueError(f"{path}: report lacks terminal_covariance")
        variance = np.asarray(covariance, dtype=float)
        if variance.ndim != 2 or variance.shape[0] != variance.shape[1]:
            raise ValueError(f"{path}: terminal_covariance must be a square matrix")
        out = {
            "mean": _as_floats(payload, "terminal_mean", path),
            "mean_se": _as_floats(payload, "terminal_mean_se", path),
            "exact_mean": _as_floats(payload["oracle"], "exact_mean", path),
            "variance": np.diag(variance).copy(),
            "variance_se": None,
            "exact_variance": _as_floats(
                payload["oracle"], "exact_covariance_diag", path
            ),
            "series": None,
        }
    else:
        raise ValueError(
            f"{path}: no exact-solution comparison found; expected a "
            "validation report or an ensemble report with an oracle block"
        )
    n = len(out["mean"])
    for key in ("mean_se", "exact_mean", "variance", "exact_variance"):
        if len(out[key]) != n:
            raise ValueError(
                f"{path}: {key!r} has {len(out[key])} entries, "
                f"terminal mean has {n}"
            )
    if out["variance_se"] is not None and len(out["variance_se"]) != n:
        raise ValueError(f"{path}: 'variance_se' has the wrong length")
    return out
