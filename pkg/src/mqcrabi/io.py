"""CSV and JSON sidecar output, plus configuration files."""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError

SCHEMA_VERSION = 1
CSV_FORMAT = "%.15g"

CONFIG_KEYS = {
    "omega_e": float,
    "omega_gamma": float,
    "g": float,
    "sampler": str,
    "n0": float,
    "trajectories": int,
    "seed": int,
    "dt": float,
    "t_final": float,
    "initial_tls": str,
}


def write_csv(path, columns: dict[str, np.ndarray]) -> Path:
    """Write equal-length columns with 15 significant digits; header is the column names."""
    path = Path(path)
    names = list(columns)
    data = np.column_stack([np.asarray(columns[n], dtype=float) for n in names])
    np.savetxt(path, data, fmt=CSV_FORMAT, delimiter=",", header=",".join(names), comments="")
    return path


def read_csv(path) -> dict[str, np.ndarray]:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    with open(path) as fh:
        names = fh.readline().strip().split(",")
    return {n: data[:, i] for i, n in enumerate(names)}


def _jsonable(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
    return path


def write_sidecar(data_path, metadata: dict) -> Path:
    """JSON sidecar ``<file>.json`` with the resolved configuration of ``data_path``."""
    from . import __version__

    data_path = Path(data_path)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "code_version": __version__,
        "file": data_path.name,
        **metadata,
    }
    return write_json(data_path.with_name(data_path.name + ".json"), payload)


def _parse_key_value(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value.strip("\"'")
    return out


def load_config(path) -> dict:
    """Read a JSON (``.json``) or ``key = value`` config file; unknown keys are rejected."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    if path.suffix.lower() == ".json":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"{path}: {err}") from err
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be an object")
    else:
        raw = _parse_key_value(text)
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    out = {}
    for key, value in raw.items():
        kind = CONFIG_KEYS[key]
        try:
            if kind is int:
                if isinstance(value, float) or (isinstance(value, str) and not value.strip().isdigit()):
                    raise ValueError("expected a non-negative integer")
                out[key] = int(value)
            else:
                out[key] = kind(value)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"config key {key!r}: {err}") from err
    if "seed" in out and not 0 <= out["seed"] < 2**64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    return out


def check_writable(directory) -> Path:
    """Create ``directory`` if needed and confirm files can be written there."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    probe = directory / f".write-probe-{os.getpid()}"
    probe.write_text("")
    probe.unlink()
    return directory
