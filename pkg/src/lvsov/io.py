"""JSON and CSV serialization.

Floats are written as decimal strings (``repr``, which round-trips
exactly); integers and booleans stay native.
"""
from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

import numpy as np


def encode(obj):
    """Recursively convert to JSON-safe values with floats as decimal strings."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return repr(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": repr(float(obj.real)), "im": repr(float(obj.imag))}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [encode(x) for x in obj]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(encode(obj), indent=2)


def write_json(obj, path: str | Path | None) -> str:
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def decode_number(x):
    """Inverse of :func:`encode` for scalars."""
    if isinstance(x, dict) and set(x) == {"re", "im"}:
        return complex(float(x["re"]), float(x["im"]))
    if isinstance(x, str):
        return float(x)
    return x


def read_state(path: str | Path, L: int | None = None) -> np.ndarray:
    """Read ``{"V": [...]}``; entries may be numbers or decimal strings."""
    data = json.loads(Path(path).read_text())
    if "V" not in data:
        raise ValueError(f"{path}: missing key 'V'")
    vals = [decode_number(x) for x in data["V"]]
    V = np.array(vals, dtype=complex if any(isinstance(v, complex) for v in vals) else float)
    if L is not None and len(V) != L:
        raise ValueError(f"{path}: expected {L} values, got {len(V)}")
    return V


def write_trajectory_csv(path: str | Path, t, V, H) -> None:
    """Header ``t,V_1..V_L,H_1..H_nH``."""
    V, H = np.asarray(V), np.asarray(H)
    L = V.shape[1]
    nH = H.shape[1] if H.ndim == 2 else 0
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["t"] + [f"V_{n}" for n in range(1, L + 1)] + [f"H_{i}" for i in range(1, nH + 1)])
        for k in range(len(t)):
            row = [repr(float(t[k]))] + [_num(x) for x in V[k]]
            if nH:
                row += [_num(x) for x in H[k]]
            wr.writerow(row)


def _num(x) -> str:
    if np.iscomplexobj(x) and np.imag(x) != 0:
        return repr(complex(x))
    return repr(float(np.real(x)))


def read_trajectory_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    data = [[complex(x) if "j" in x else float(x) for x in r] for r in rows[1:]]
    return rows[0], np.array(data)


def write_table_csv(path: str | Path | None, rows) -> str:
    lines = ["L,g"] + [f"{L},{g}" for L, g in rows]
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
