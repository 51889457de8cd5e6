"""Strict JSON encodings for shapes, ideals, gluing data and floor plans.

Every top-level document carries ``"schema": 1``; unknown fields are
rejected. Nested shapes omit the schema field.
"""

from __future__ import annotations

import json
from typing import Any

from .floorplan import FloorPlan, PlanError, Realization
from .gluing import GluingData, GluingError
from .shapes import ShapeError, SkewShape, StandardShape

SCHEMA = 1


class SchemaError(ValueError):
    def __init__(self, location: str, clause: str, file: str | None = None):
        super().__init__(f"{file or '<input>'}: {location}: {clause}")
        self.file, self.location, self.clause = file, location, clause

    def to_json(self) -> dict:
        return {"error": "parse", "file": self.file, "location": self.location,
                "clause": self.clause}


# -- encoding -----------------------------------------------------------------


def _cells(cells) -> list[list[int]]:
    return [list(v) for v in sorted(cells)]


def shape_json(s: SkewShape) -> dict:
    return {"n": s.n, "cells": _cells(s)}


def ideal_json(gens, n: int) -> dict:
    return {"n": n, "gens": _cells(gens)}


def gluing_json(g: GluingData) -> dict:
    return {"lambda": shape_json(g.lam), "mu": shape_json(g.mu),
            "nu": [shape_json(s) for s in g.nu],
            "b": [list(v) for v in g.b], "c": [list(v) for v in g.c]}


def plan_json(plan: FloorPlan) -> dict:
    out = {"nu": [shape_json(s) for s in plan.nu],
           "b": [list(v) for v in plan.b], "c": [list(v) for v in plan.c]}
    if not plan.require_connected:
        out["require_connected"] = False
    return out


def realization_json(real: Realization) -> dict:
    return {**plan_json(real.plan), "bz": list(real.bz), "cz": list(real.cz)}


def document(body: dict) -> dict:
    return {"schema": SCHEMA, **body}


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


# -- decoding -----------------------------------------------------------------


def _fields(obj, where: str, required: set, optional: set = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    missing = required - obj.keys()
    if missing:
        raise SchemaError(where, f"missing field {sorted(missing)[0]!r}")
    extra = obj.keys() - required - optional
    if extra:
        raise SchemaError(where, f"unknown field {sorted(extra)[0]!r}")
    return obj


def _nat(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise SchemaError(where, "expected a nonnegative integer")
    return x


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise SchemaError(where, "expected an array")
    return x


def _point(x, n: int, where: str) -> tuple[int, ...]:
    x = _list(x, where)
    if len(x) != n:
        raise SchemaError(where, f"expected {n} coordinates, got {len(x)}")
    return tuple(_nat(c, f"{where}[{k}]") for k, c in enumerate(x))


def _points(x, n: int, where: str) -> list[tuple[int, ...]]:
    return [_point(v, n, f"{where}[{k}]") for k, v in enumerate(_list(x, where))]


def _dim(x, where: str) -> int:
    n = _nat(x, where)
    if n < 1:
        raise SchemaError(where, "dimension must be positive")
    return n


def _check_schema(obj, where: str):
    if obj.get("schema") != SCHEMA:
        raise SchemaError(f"{where}.schema", f"expected schema {SCHEMA}")


def parse_cells(obj, where: str = "$", top: bool = False) -> tuple[frozenset, int]:
    """The cells of a shape document without checking the skew condition."""
    keys = {"n", "cells"} | ({"schema"} if top else set())
    _fields(obj, where, keys)
    if top:
        _check_schema(obj, where)
    n = _dim(obj["n"], f"{where}.n")
    cells = _points(obj["cells"], n, f"{where}.cells")
    if len(set(cells)) != len(cells):
        raise SchemaError(f"{where}.cells", "duplicate cell")
    return frozenset(cells), n


def parse_shape(obj, where: str = "$", top: bool = False, standard: bool = False) -> SkewShape:
    cells, n = parse_cells(obj, where, top)
    try:
        return (StandardShape if standard else SkewShape)(cells, n)
    except ShapeError as exc:
        raise SchemaError(f"{where}.cells", str(exc)) from None


def parse_ideal(obj, where: str = "$", top: bool = False) -> tuple[list, int]:
    keys = {"n", "gens"} | ({"schema"} if top else set())
    _fields(obj, where, keys)
    if top:
        _check_schema(obj, where)
    n = _dim(obj["n"], f"{where}.n")
    return _points(obj["gens"], n, f"{where}.gens"), n


def parse_ideals(obj, where: str = "$") -> tuple[list, list, list, list, int]:
    """``{"schema", "n", "I", "J", "K", "L"}`` with generator lists."""
    _fields(obj, where, {"schema", "n", "I", "J", "K", "L"})
    _check_schema(obj, where)
    n = _dim(obj["n"], f"{where}.n")
    return (*(_points(obj[k], n, f"{where}.{k}") for k in "IJKL"), n)


def parse_gluing(obj, where: str = "$") -> GluingData:
    _fields(obj, where, {"schema", "lambda", "mu", "nu", "b", "c"})
    _check_schema(obj, where)
    lam = parse_shape(obj["lambda"], f"{where}.lambda", standard=True)
    mu = parse_shape(obj["mu"], f"{where}.mu", standard=True)
    if lam.n != mu.n:
        raise SchemaError(f"{where}.mu.n", "lambda and mu differ in dimension")
    n = lam.n
    nu = [parse_shape(s, f"{where}.nu[{k}]") for k, s in enumerate(_list(obj["nu"], f"{where}.nu"))]
    b = _points(obj["b"], n, f"{where}.b")
    c = _points(obj["c"], n, f"{where}.c")
    try:
        return GluingData(lam, mu, tuple(nu), tuple(b), tuple(c))
    except (GluingError, ShapeError) as exc:
        raise SchemaError(where, str(exc)) from None


def _plan_body(obj, where: str, extra: set):
    _fields(obj, where, {"schema", "nu", "b", "c"}, {"require_connected"} | extra)
    _check_schema(obj, where)
    nu = [parse_shape(s, f"{where}.nu[{k}]") for k, s in enumerate(_list(obj["nu"], f"{where}.nu"))]
    for k, s in enumerate(nu):
        if s.n != 3:
            raise SchemaError(f"{where}.nu[{k}].n", "floor plan pieces must be 3-dimensional")
    conn = obj.get("require_connected", True)
    if not isinstance(conn, bool):
        raise SchemaError(f"{where}.require_connected", "expected a boolean")
    b = _points(obj["b"], 2, f"{where}.b")
    c = _points(obj["c"], 2, f"{where}.c")
    try:
        return FloorPlan(tuple(nu), tuple(b), tuple(c), conn)
    except (PlanError, ShapeError) as exc:
        raise SchemaError(where, str(exc)) from None


def parse_plan(obj, where: str = "$") -> FloorPlan | Realization:
    """A floor plan, or a realization when ``bz`` and ``cz`` are present."""
    if isinstance(obj, dict) and ("bz" in obj or "cz" in obj):
        plan = _plan_body(obj, where, {"bz", "cz"})
        if "bz" not in obj or "cz" not in obj:
            raise SchemaError(where, "a realization needs both 'bz' and 'cz'")
        bz = [_nat(x, f"{where}.bz[{k}]") for k, x in enumerate(_list(obj["bz"], f"{where}.bz"))]
        cz = [_nat(x, f"{where}.cz[{k}]") for k, x in enumerate(_list(obj["cz"], f"{where}.cz"))]
        try:
            return Realization(plan, tuple(bz), tuple(cz))
        except PlanError as exc:
            raise SchemaError(where, str(exc)) from None
    return _plan_body(obj, where, set())


def parse_plans(obj) -> list[FloorPlan | Realization]:
    """One plan document or an array of them."""
    if isinstance(obj, list):
        return [parse_plan(o, f"$[{k}]") for k, o in enumerate(obj)]
    return [parse_plan(obj)]


def load(path: str):
    """Read a JSON file, mapping syntax errors to :class:`SchemaError`."""
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}", exc.msg, path) from None
    except OSError as exc:
        raise SchemaError("$", exc.strerror or str(exc), path) from None


__all__ = [
    "SCHEMA", "SchemaError", "document", "dumps", "gluing_json", "ideal_json", "load",
    "parse_cells", "parse_gluing", "parse_ideal", "parse_ideals", "parse_plan", "parse_plans",
    "parse_shape", "plan_json", "realization_json", "shape_json",
]
