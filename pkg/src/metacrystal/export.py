"""Writers for summaries, traces, heatmaps and raw snapshot frames.

Floats are written with 17 significant digits so they round-trip exactly.
Text outputs carry the config hash; binary snapshots carry it in their
JSON sidecar.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def write_json(path, payload):
    path = Path(path)
    # json emits repr(float), the shortest string that round-trips
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
    return path


def write_csv(path, header, rows, config_sha256):
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(f"# config_sha256={config_sha256}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
    return path


def write_heatmap(path, axis_name, axis, columns_name, columns, grid, config_sha256):
    """Intensity grid, one row per time sample; the header lists the column coordinates."""
    header = [axis_name] + [f"{columns_name}={fmt(c)}" for c in columns]
    rows = ([t, *r] for t, r in zip(axis, grid))
    return write_csv(path, header, rows, config_sha256)


def write_snapshots(path, frames, meta, config_sha256):
    """Little-endian float64 (re, im) interleaved frames plus ``<name>.json`` sidecar."""
    path = Path(path)
    data = np.ascontiguousarray(np.asarray(frames, dtype="<c16"))
    path.write_bytes(data.tobytes())
    sidecar = dict(meta)
    sidecar.update({
        "N": int(data.shape[1]), "frames": int(data.shape[0]),
        "dtype": "float64 little-endian, (re, im) interleaved, row-major frames",
        "config_sha256": config_sha256,
    })
    write_json(path.with_suffix(".json"), sidecar)
    return path


def read_snapshots(path):
    """Inverse of :func:`write_snapshots`; returns ``(frames, sidecar)``."""
    path = Path(path)
    meta = json.loads(path.with_suffix(".json").read_text())
    data = np.frombuffer(path.read_bytes(), dtype="<c16").reshape(meta["frames"], meta["N"])
    return data, meta
