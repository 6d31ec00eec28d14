"""Text formats: demand CSV and matrix JSON."""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .model import DEFAULT_TOL, DemandDataset, InputError, as_r_matrix, as_square

MATRIX_FIELDS = {"r-json": "R", "cost-json": "c"}


def parse_demand_csv(text: str) -> DemandDataset:
    """Parse ``id,p1,...,pL,x1,...,xL`` rows into a dataset (row order = observation order)."""
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise InputError("empty demand file")
    header = [h.strip() for h in rows[0]]
    width = len(header) - 1
    if width < 2 or width % 2:
        raise InputError(f"header must be id,p1..pL,x1..xL; got {len(header)} columns")
    L = width // 2
    expected = ["p%d" % k for k in range(1, L + 1)] + ["x%d" % k for k in range(1, L + 1)]
    if [h.lower() for h in header[1:]] != expected:
        raise InputError(f"header must be id,{','.join(expected)}; got {','.join(header)}")
    if len(rows) == 1:
        raise InputError("no observations")
    values = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputError(f"row {line}: expected {len(header)} fields, got {len(row)}")
        parsed = []
        for name, cell in zip(header[1:], row[1:]):
            try:
                x = float(cell)
            except ValueError:
                raise InputError(f"row {line}, column {name}: cannot parse {cell.strip()!r}") from None
            if not math.isfinite(x):
                raise InputError(f"row {line}, column {name}: value must be finite")
            if name.lower().startswith("p") and x <= 0:
                raise InputError(f"row {line}, column {name}: price must be positive")
            if name.lower().startswith("x") and x < 0:
                raise InputError(f"row {line}, column {name}: quantity must be nonnegative")
            parsed.append(x)
        values.append(parsed)
    arr = np.array(values)
    return DemandDataset(arr[:, :L], arr[:, L:])


def dump_demand_csv(ds: DemandDataset) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["id"] + ["p%d" % k for k in range(1, ds.L + 1)] + ["x%d" % k for k in range(1, ds.L + 1)])
    for i in range(ds.n):
        w.writerow([i + 1] + [repr(float(v)) for v in ds.prices[i]] + [repr(float(v)) for v in ds.bundles[i]])
    return out.getvalue()


def _reject_constant(name: str):
    raise InputError(f"non-finite number {name} in JSON input")


def load_matrix_document(text: str) -> dict:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("JSON input must be an object")
    return doc


def parse_matrix_json(text: str, kind: str, tol: float = DEFAULT_TOL) -> NDArray[np.float64]:
    """Parse ``{"n": n, "R": [[...]]}`` (kind ``r-json``) or ``{"n": n, "c": [[...]]}`` (``cost-json``).

    R matrices must have a diagonal within ``tol`` of zero; it is snapped to exact 0.
    """
    if kind not in MATRIX_FIELDS:
        raise InputError(f"unknown matrix kind {kind!r}")
    doc = load_matrix_document(text)
    key = MATRIX_FIELDS[kind]
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    rows = doc[key]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"field {key!r} must be a list of lists")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise InputError(f"field {key!r} has non-numeric entry {x!r}")
    if "n" in doc and doc["n"] != len(rows):
        raise InputError(f"n = {doc['n']!r} but {key!r} has {len(rows)} rows")
    if any(len(r) != len(rows) for r in rows):
        raise InputError(f"field {key!r} is not square")
    M = as_square(rows, key)
    return as_r_matrix(M, tol) if kind == "r-json" else M


def dump_matrix_json(M: ArrayLike, kind: str) -> str:
    M = np.asarray(M, dtype=float)
    return json.dumps({"n": int(M.shape[0]), MATRIX_FIELDS[kind]: M.tolist()})
