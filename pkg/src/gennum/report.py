"""JSON serialization of nets, verdicts and task results.

Samples are written as ``{k, log2_abs, sign}`` (which survives underflow
when read by other tools) plus ``hex``/``rad`` fields holding the exact
float64 values, so a report can be re-ingested bit for bit.
"""

import json
import math
from typing import Any

import numpy as np

from .gen_linalg import GenMatrix, GenVector
from .gen_num import EpsGrid, GenNumber, Verdict

SCHEMA = 1


def grid_to_json(grid: EpsGrid) -> dict:
    return {"k_max": grid.k_max, "tail_start": grid.tail_start, "m_cap": grid.m_cap}


def grid_from_json(d: dict) -> EpsGrid:
    return EpsGrid(d["k_max"], d["tail_start"], d["m_cap"])


def _sample(k: int, v: float, r: float) -> dict:
    return {
        "k": k,
        "log2_abs": None if v == 0 or not math.isfinite(v) else math.log2(abs(v)),
        "sign": 0 if v == 0 else (1 if v > 0 else -1),
        "hex": float(v).hex(),
        "rad": float(r).hex(),
    }


def net_to_json(x: GenNumber) -> dict:
    ks = x.grid.ks.tolist()
    return {
        "type": "net",
        "label": x.label,
        "samples": [_sample(k, v, r) for k, v, r in zip(ks, x.samples.tolist(), x.radius.tolist())],
    }


def net_from_json(d: dict, grid: EpsGrid) -> GenNumber:
    s = [float.fromhex(p["hex"]) for p in d["samples"]]
    r = [float.fromhex(p["rad"]) for p in d["samples"]]
    return GenNumber(grid, s, r, None, d.get("label"))


def vector_to_json(v: GenVector) -> dict:
    return {"type": "vector", "entries": [net_to_json(v[i]) for i in range(v.n)]}


def vector_from_json(d: dict, grid: EpsGrid) -> GenVector:
    return GenVector.from_entries([net_from_json(e, grid) for e in d["entries"]], grid)


def matrix_to_json(a: GenMatrix) -> dict:
    return {"type": "matrix", "rows": [[net_to_json(a[i, j]) for j in range(a.n)] for i in range(a.n)]}


def matrix_from_json(d: dict, grid: EpsGrid) -> GenMatrix:
    return GenMatrix.from_entries([[net_from_json(e, grid) for e in row] for row in d["rows"]], grid)


def to_json(obj: Any) -> Any:
    """Recursively convert results to JSON-compatible data."""
    if isinstance(obj, GenNumber):
        return net_to_json(obj)
    if isinstance(obj, GenVector):
        return vector_to_json(obj)
    if isinstance(obj, GenMatrix):
        return matrix_to_json(obj)
    if isinstance(obj, Verdict):
        return obj.to_dict()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_json(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else repr(f)
    return obj


def dumps(report: dict) -> str:
    """Deterministic JSON text (sorted keys, fixed separators)."""
    return json.dumps(report, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"
