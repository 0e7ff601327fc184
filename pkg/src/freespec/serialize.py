"""JSON serialization for tuples and reports.

The writer is hand-rolled so that output bytes are deterministic across
platforms: fixed key order, fixed separators, and every float printed
with 17 significant digits (enough to round-trip an IEEE double).
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import InvalidTuple, SchemaError
from .tuples import COMPLEX, REAL, MatrixConvexCombination, MatrixTuple

FIELDS = (REAL, COMPLEX)


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise SchemaError(f"non-finite value {x!r} cannot be serialized")
    if x == 0.0:
        return "0"
    return "%.17g" % x


def dumps(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f'{inner}{json.dumps(str(k))}: {dumps(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rendered = [dumps(v, indent + 1) for v in obj]
        if all(isinstance(v, (bool, int, float, np.integer, np.floating)) for v in obj):
            return "[" + ", ".join(rendered) + "]"
        return "[\n" + ",\n".join(inner + r for r in rendered) + f"\n{pad}]"
    raise SchemaError(f"cannot serialize object of type {type(obj).__name__}")


def dump_text(obj) -> str:
    return dumps(obj) + "\n"


# ---------------------------------------------------------------- tuples

def _entry_to_obj(z, field: str):
    if field == COMPLEX:
        return [float(np.real(z)), float(np.imag(z))]
    return float(np.real(z))


def matrix_to_obj(M: np.ndarray, field: str) -> list:
    return [[_entry_to_obj(M[r, c], field) for c in range(M.shape[1])] for r in range(M.shape[0])]


def tuple_to_obj(T: MatrixTuple) -> dict:
    return {
        "g": T.g,
        "n": T.n,
        "field": T.field,
        "matrices": [matrix_to_obj(T.entries[j], T.field) for j in range(T.g)],
    }


def _entry_from_obj(e, field: str, where: str) -> complex:
    if isinstance(e, bool):
        raise SchemaError(f"{where}: boolean is not a matrix entry")
    if isinstance(e, (int, float)):
        return complex(float(e), 0.0)
    if isinstance(e, list) and len(e) in (1, 2) and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in e
    ):
        re = float(e[0])
        im = float(e[1]) if len(e) == 2 else 0.0
        if field == REAL and im != 0.0:
            raise SchemaError(f"{where}: complex entry in a real tuple")
        return complex(re, im)
    raise SchemaError(f"{where}: expected number, [re] or [re, im], got {e!r}")


def tuple_from_obj(obj) -> MatrixTuple:
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object, got {type(obj).__name__}")
    required = {"g", "n", "field", "matrices"}
    missing = required - set(obj)
    if missing:
        raise SchemaError(f"missing keys: {sorted(missing)}")
    extra = set(obj) - required
    if extra:
        raise SchemaError(f"unknown keys: {sorted(extra)}")
    g, n, field, mats = obj["g"], obj["n"], obj["field"], obj["matrices"]
    if not isinstance(g, int) or isinstance(g, bool) or g < 0:
        raise SchemaError(f"g must be a nonnegative integer, got {g!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError(f"n must be a positive integer, got {n!r}")
    if field not in FIELDS:
        raise SchemaError(f"field must be one of {FIELDS}, got {field!r}")
    if not isinstance(mats, list) or len(mats) != g:
        raise SchemaError(f"matrices must be a list of length g = {g}")
    out = np.zeros((g, n, n), dtype=complex if field == COMPLEX else float)
    for j, M in enumerate(mats):
        if not isinstance(M, list) or len(M) != n:
            raise SchemaError(f"matrices[{j}] must have {n} rows")
        for r, row in enumerate(M):
            if not isinstance(row, list) or len(row) != n:
                raise SchemaError(f"matrices[{j}][{r}] must have {n} entries")
            for c, e in enumerate(row):
                z = _entry_from_obj(e, field, f"matrices[{j}][{r}][{c}]")
                out[j, r, c] = z if field == COMPLEX else z.real
    try:
        return MatrixTuple(out, field)
    except InvalidTuple as exc:
        raise SchemaError(str(exc)) from exc


def load_tuple(path: str) -> MatrixTuple:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return tuple_from_obj(obj)


def save_tuple(path: str, T: MatrixTuple) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_text(tuple_to_obj(T)))


# ---------------------------------------------------------------- reports

def verdict_to_obj(v) -> dict:
    return {
        "status": v.status,
        "min_eigenvalue": float(v.min_eigenvalue),
        "kernel_dim": int(v.kernel_dim),
    }


def report_to_obj(rep) -> dict:
    return {
        "classical_extreme": bool(rep.classical),
        "matrix_extreme": bool(rep.matrix),
        "free_extreme": bool(rep.free),
        "irreducible": bool(rep.irreducible),
        "kernel_dim": int(rep.kernel_dim),
        "dilation_dim": int(rep.dilation_dim),
        "residuals": {k: float(v) for k, v in sorted(rep.residuals.items())},
    }


def combination_to_obj(comb: MatrixConvexCombination) -> dict:
    fields = [p.field for p in comb.points]
    field = COMPLEX if COMPLEX in fields else REAL
    return {
        "n": comb.n,
        "num_points": len(comb.points),
        "gammas": [matrix_to_obj(np.asarray(gmat), field) for gmat in comb.gammas],
        "points": [tuple_to_obj(p) for p in comb.points],
    }


def decomposition_to_obj(dec) -> dict:
    fields = [p.field for p in dec.summands]
    field = COMPLEX if COMPLEX in fields else REAL
    return {
        "num_summands": len(dec.summands),
        "summand_levels": [p.n for p in dec.summands],
        "total_size": int(dec.total_size),
        "dilation_steps": int(dec.steps),
        "dilation_trace": [
            {
                "level": int(c.Y_hat.n),
                "dim_before": int(c.dim_before),
                "dim_after": int(c.dim_after),
            }
            for c in dec.dilation_trace
        ],
        "residual": float(dec.residual),
        "gammas": [matrix_to_obj(np.asarray(gmat), field) for gmat in dec.gammas],
        "summands": [tuple_to_obj(p) for p in dec.summands],
    }


def search_report_to_obj(rep) -> dict:
    return {
        "found": bool(rep.found),
        "trials": int(rep.trials),
        "best_violation": float(rep.best_violation),
        "witness": _witness_to_obj(rep.witness),
    }


def _witness_to_obj(w):
    if w is None:
        return None
    out = {}
    for k in sorted(w):
        v = w[k]
        if isinstance(v, MatrixTuple):
            out[k] = tuple_to_obj(v)
        elif isinstance(v, MatrixConvexCombination):
            out[k] = combination_to_obj(v)
        elif isinstance(v, np.ndarray):
            field = COMPLEX if np.iscomplexobj(v) else REAL
            arr = v if v.ndim == 2 else v.reshape(1, -1)
            out[k] = matrix_to_obj(arr, field)
        elif isinstance(v, (tuple, list)):
            out[k] = [
                tuple_to_obj(x) if isinstance(x, MatrixTuple) else float(x) for x in v
            ]
        elif isinstance(v, (float, np.floating)):
            out[k] = float(v)
        elif isinstance(v, (int, np.integer)):
            out[k] = int(v)
        else:
            out[k] = str(v)
    return out
