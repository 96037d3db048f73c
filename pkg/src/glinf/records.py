"""JSON exchange records for matrices, cosets, certificates and trains.

Loaders are strict: entries must already be canonical residues, and every
field must be present with the right type.
"""
from __future__ import annotations

import csv
import io
import json

from .cosets import DoubleCoset, ReductionCertificate
from .errors import RecordError
from .matrix import GroupElement, in_gl_m, mat_mul
from .residue import Modulus
from .train import TrainCoset, TupleElement


def _need(obj, key, kind=int):
    if not isinstance(obj, dict) or key not in obj:
        raise RecordError(f"missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise RecordError(f"field {key!r} must be an integer, got {val!r}")
    if kind is not int and not isinstance(val, kind):
        raise RecordError(f"field {key!r} has the wrong type")
    return val


def matrix_to_record(g: GroupElement) -> dict:
    mod = g.modulus
    return {"p": mod.p, "k": mod.k, "n": g.window, "rows": [list(r) for r in g.core]}


def matrix_from_record(obj, where: str = "matrix") -> GroupElement:
    try:
        p, k, n = _need(obj, "p"), _need(obj, "k"), _need(obj, "n")
        rows = _need(obj, "rows", list)
        try:
            mod = Modulus(p, k)
        except ValueError as e:
            raise RecordError(str(e)) from None
        if len(rows) != n:
            raise RecordError(f"expected {n} rows, got {len(rows)}")
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise RecordError(f"row {i} must be a list of {n} integers")
            for j, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise RecordError(f"entry ({i},{j}) is not an integer")
                if not 0 <= x < mod.q:
                    raise RecordError(f"entry ({i},{j}) = {x} is not canonical in [0, {mod.q})")
        try:
            return GroupElement(rows, mod)
        except ArithmeticError as e:
            raise RecordError(f"matrix is not invertible: {e}") from None
    except RecordError as e:
        raise RecordError(f"{where}: {e}") from None


def coset_to_record(c: DoubleCoset) -> dict:
    return {"m": c.m, "rep": matrix_to_record(c.rep)}


def coset_from_record(obj) -> DoubleCoset:
    m = _need(obj, "m")
    if m < 0:
        raise RecordError("m must be >= 0")
    return DoubleCoset(m, matrix_from_record(_need(obj, "rep", dict), "rep"))


def certificate_to_record(c: ReductionCertificate) -> dict:
    return {"m": c.m, "g": matrix_to_record(c.g), "q": matrix_to_record(c.q),
            "r": matrix_to_record(c.r), "out": matrix_to_record(c.out)}


def certificate_from_record(obj) -> ReductionCertificate:
    m = _need(obj, "m")
    parts = {key: matrix_from_record(_need(obj, key, dict), key) for key in ("g", "q", "r", "out")}
    return ReductionCertificate(parts["g"], m, parts["q"], parts["r"], parts["out"])


def verify_certificate_record(obj) -> bool:
    """Check q g r = out with q, r in GL^[m] using only multiplication and membership."""
    c = certificate_from_record(obj)
    return (in_gl_m(c.q, c.m) and in_gl_m(c.r, c.m)
            and mat_mul(mat_mul(c.q, c.g), c.r) == c.out)


def train_to_record(t: TrainCoset) -> dict:
    return {"alpha": t.alpha, "gamma": t.gamma,
            "parts": [matrix_to_record(x) for x in t.rep.parts]}


def train_from_record(obj) -> TrainCoset:
    alpha, gamma = _need(obj, "alpha"), _need(obj, "gamma")
    if alpha < 0 or gamma < 0:
        raise RecordError("depths must be >= 0")
    parts = _need(obj, "parts", list)
    if not parts:
        raise RecordError("a train needs at least one part")
    elems = tuple(matrix_from_record(x, f"parts[{i}]") for i, x in enumerate(parts))
    if len({e.modulus for e in elems}) != 1:
        raise RecordError("parts must share one modulus")
    return TrainCoset(alpha, gamma, TupleElement(elems))


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise RecordError(f"line {e.lineno} column {e.colno}: {e.msg}") from None


ORBIT_COLUMNS = ("n", "p", "k", "N", "orbit_count", "stabilized")


def orbit_rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ORBIT_COLUMNS)
    for r in rows:
        w.writerow([r.n, r.p, r.k, r.N, r.orbit_count, str(r.stabilized).lower()])
    return buf.getvalue()
