"""Command-line entry point: ``gerst <group> <command> ...``.

All output is JSON on stdout. Exit status is 0 when nothing was found wrong,
1 when a check failed or a witness/violation was found, and 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, fields

from . import jsonio
from .floorplan import PlanError, Realization, canonical_realization, heights, is_right_free
from .gluing import (
    GluingError,
    enumerate_monomial_isos,
    gluing_from_matching,
    is_counterexample,
    module_dimension,
    scaffold,
    validate_gluing,
)
from .oracle import DEFAULT_PRIME, OracleError, module_to_matrices, verify_gq
from .reduction import reduce_to_fixpoint
from .rightfree import RightFreeConfig, bottom_config, search_small_intersection_report
from .search import SearchBounds, campaign_names, run_campaign
from .shapes import (
    ShapeError,
    SkewShape,
    connected_components,
    ideal_to_shape,
    is_abstract,
    is_connected,
    is_downward_closed,
    is_skew_shape,
    normalize,
)

OK, FOUND, BAD_INPUT = 0, 1, 2


# -- rendering ----------------------------------------------------------------


def draw(cells, n: int) -> list[str]:
    """ASCII picture of a shape: rows top to bottom, 3-D as layers a3 = 0 first."""
    cells = {tuple(v) for v in cells}
    if not cells:
        return ["(empty)"]
    if n == 1:
        return ["".join("#" if (x,) in cells else "." for x in range(max(v[0] for v in cells) + 1))]
    if n == 2:
        w = max(v[0] for v in cells) + 1
        h = max(v[1] for v in cells) + 1
        return ["".join("#" if (x, y) in cells else "." for x in range(w))
                for y in reversed(range(h))]
    if n == 3:
        out = []
        for z in range(max(v[2] for v in cells) + 1):
            layer = {(v[0], v[1]) for v in cells if v[2] == z}
            out.append(f"a3 = {z}:")
            out += ["  " + row for row in draw(layer, 2)] if layer else ["  (empty)"]
        return out
    return [f"({len(cells)} cells in dimension {n}; no picture)"]


def _shapes_in(obj, path="$"):
    if isinstance(obj, dict):
        if obj.keys() >= {"n", "cells"}:
            yield path, obj
        for k, v in obj.items():
            yield from _shapes_in(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for k, v in enumerate(obj):
            yield from _shapes_in(v, f"{path}[{k}]")


_INT_ARRAY = re.compile(r"\[\s+(-?\d+(?:,\s+-?\d+)*)\s+\]")


def emit(obj, args) -> None:
    if getattr(args, "pretty", False):
        text = json.dumps(obj, indent=2, ensure_ascii=False)
        text = _INT_ARRAY.sub(
            lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
        lines = text.split("\n")
        for path, s in _shapes_in(obj):
            lines.append(f"\n{path}")
            lines += draw(s["cells"], s["n"])
        text = "\n".join(lines) + "\n"
    else:
        text = jsonio.dumps(obj)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str, parse):
    try:
        return parse(jsonio.load(path))
    except jsonio.SchemaError as exc:
        exc.file = path
        raise


# -- shapes -------------------------------------------------------------------


def cmd_shapes_validate(args) -> int:
    cells, n = _read(args.file, lambda o: jsonio.parse_cells(o, top=True))
    skew = is_skew_shape(cells)
    report = {"size": len(cells), "skew": skew, "standard": is_downward_closed(cells),
              "abstract": skew and is_abstract(cells) if cells else False,
              "connected": bool(cells) and is_connected(cells),
              "components": len(connected_components(SkewShape(cells, n))) if skew else None}
    emit(report, args)
    return OK if skew else FOUND


def cmd_shapes_normalize(args) -> int:
    s = _read(args.file, lambda o: jsonio.parse_shape(o, top=True))
    if not s:
        raise jsonio.SchemaError("$.cells", "cannot normalize the empty shape", args.file)
    emit(jsonio.document(jsonio.shape_json(normalize(s))), args)
    return OK


def cmd_shapes_components(args) -> int:
    s = _read(args.file, lambda o: jsonio.parse_shape(o, top=True))
    comps = connected_components(s)
    emit(jsonio.document({"components": [jsonio.shape_json(c) for c in comps]}), args)
    return OK


# -- glue ---------------------------------------------------------------------


def cmd_glue_isos(args) -> int:
    I, J, K, L, n = _read(args.file, jsonio.parse_ideals)
    try:
        lam, mu = ideal_to_shape(I, n), ideal_to_shape(J, n)
        small_k, small_l = ideal_to_shape(K, n), ideal_to_shape(L, n)
    except ShapeError as exc:
        raise jsonio.SchemaError("$", str(exc), args.file) from None
    if not (small_k <= lam and small_l <= mu):
        raise jsonio.SchemaError("$", "need I inside K and J inside L", args.file)
    zeta, xi = lam - small_k, mu - small_l
    isos, modules = [], []
    for m in enumerate_monomial_isos(zeta, xi):
        g = gluing_from_matching(lam, mu, zeta, xi, m)
        isos.append({"permutation": list(m.permutation), "shifts": [list(v) for v in m.shifts],
                     "c": [list(v) for v in g.c]})
        modules.append(jsonio.document(jsonio.gluing_json(g)))
    emit({"count": len(isos), "isos": isos, "modules": modules}, args)
    return OK


def cmd_glue_check(args) -> int:
    g = _read(args.file, jsonio.parse_gluing)
    v = validate_gluing(g)
    report = {"valid": v.ok, "clause": v.clause, "detail": v.detail,
              "witness": [list(w) for w in v.witness]}
    if v:
        report.update(dimension=module_dimension(g), nu_size=g.nu_size,
                      intersection=len(g.lam & g.mu), counterexample=is_counterexample(g))
    emit(report, args)
    return OK if v and not report["counterexample"] else FOUND


def cmd_glue_scaffold(args) -> int:
    g = _read(args.file, jsonio.parse_gluing)
    try:
        s = scaffold(g)
    except GluingError as exc:
        emit({"error": "invalid", "message": str(exc)}, args)
        return FOUND
    emit(jsonio.document(jsonio.gluing_json(s)), args)
    return OK


# -- plan ---------------------------------------------------------------------


def _one_plan(args):
    plans = _read(args.file, jsonio.parse_plans)
    if len(plans) != 1:
        raise jsonio.SchemaError("$", "expected a single floor plan", args.file)
    p = plans[0]
    return p.plan if isinstance(p, Realization) else p


def cmd_plan_canonical(args) -> int:
    plan = _one_plan(args)
    try:
        real = canonical_realization(plan)
    except PlanError as exc:
        emit({"error": "no canonical realization", "message": str(exc)}, args)
        return FOUND
    emit(jsonio.document(jsonio.realization_json(real)), args)
    return OK if real.is_valid() else FOUND


def cmd_plan_check(args) -> int:
    items = _read(args.file, jsonio.parse_plans)
    results = []
    for k, item in enumerate(items):
        if isinstance(item, Realization):
            ok = item.is_valid()
            results.append({"index": k, "kind": "realization", "valid": ok,
                            "detail": None if ok else "offsets do not give a valid module"})
            continue
        try:
            ok = canonical_realization(item).is_valid()
            detail = None if ok else "canonical realization is not a valid module"
        except PlanError as exc:
            ok, detail = False, str(exc)
        results.append({"index": k, "kind": "plan", "valid": ok, "detail": detail})
    emit({"valid": all(r["valid"] for r in results), "items": results}, args)
    return OK if all(r["valid"] for r in results) else FOUND


def cmd_plan_reduce(args) -> int:
    plan = _one_plan(args)
    emit([jsonio.document(jsonio.plan_json(p)) for p in reduce_to_fixpoint(plan)], args)
    return OK


def _config_json(cfg: RightFreeConfig) -> dict:
    return {"nu0": [jsonio.shape_json(s) for s in cfg.nu0],
            "b": [list(v) for v in cfg.b], "c": [list(v) for v in cfg.c]}


def cmd_plan_rightfree(args) -> int:
    plan = _one_plan(args)
    try:
        report = {"hb": list(heights(plan, "b")), "hc": list(heights(plan, "c")),
                  "right_free": is_right_free(plan)}
    except PlanError as exc:
        emit({"error": "no canonical realization", "message": str(exc)}, args)
        return FOUND
    small = False
    if report["right_free"]:
        cfg = bottom_config(plan)
        small = cfg.intersection < cfg.nu_size
        report.update(bottom=_config_json(cfg), intersection=cfg.intersection,
                      nu_size=cfg.nu_size, small_intersection=small)
    emit(report, args)
    return FOUND if small else OK


# -- search, oracle, campaign -------------------------------------------------


def _box(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"box must look like WxH, got {text!r}") from None
    if not dims or min(dims) < 1:
        raise argparse.ArgumentTypeError(f"box sides must be positive, got {text!r}")
    return dims


def cmd_search_rightfree(args) -> int:
    if len(args.box) != 2:
        raise jsonio.SchemaError("--box", "the right-free search needs a 2-D box WxH")
    if not 0 <= args.shard < args.shards:
        raise jsonio.SchemaError("--shard", "need 0 <= shard < shards")
    res = search_small_intersection_report(args.max_components, args.max_cells, args.box,
                                           args.shards, args.shard)
    emit({"bounds": {"max_components": args.max_components, "max_cells": args.max_cells,
                     "box": list(args.box), "shards": args.shards, "shard": args.shard},
          "candidates_examined": res.candidates_examined,
          "witnesses": [_config_json(w) for w in res.witnesses]}, args)
    return FOUND if res.witnesses else OK


def cmd_oracle_dim(args) -> int:
    g = _read(args.file, jsonio.parse_gluing)
    try:
        res = verify_gq(g, args.prime)
    except GluingError as exc:
        raise jsonio.SchemaError("$", str(exc), args.file) from None
    except OracleError as exc:
        emit({"error": "oracle", "message": str(exc)}, args)
        return FOUND
    out = asdict(res)
    if args.matrices:
        out["matrices"] = [m.tolist() for m in module_to_matrices(g, args.prime)]
    emit(out, args)
    return OK if res.holds else FOUND


def _bounds(text: str) -> SearchBounds:
    where = "--bounds"
    if os.path.exists(text):
        obj, where = jsonio.load(text), text
    else:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise jsonio.SchemaError("--bounds", exc.msg) from None
    if not isinstance(obj, dict):
        raise jsonio.SchemaError("$", "bounds must be an object", where)
    known = {f.name for f in fields(SearchBounds)}
    extra = obj.keys() - known - {"schema"}
    if extra:
        raise jsonio.SchemaError("$", f"unknown field {sorted(extra)[0]!r}", where)
    obj = {k: v for k, v in obj.items() if k != "schema"}
    try:
        return SearchBounds(**obj)
    except (TypeError, ValueError) as exc:
        raise jsonio.SchemaError("$", str(exc), where) from None


def cmd_campaign_run(args) -> int:
    bounds = _bounds(args.bounds)
    report = run_campaign(args.name, bounds, args.jobs)
    emit(report.to_json(), args)
    return FOUND if report.violations else OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON and draw shapes")
    common.add_argument("--output", "-o", help="write the report to this file")

    parser = argparse.ArgumentParser(prog="gerst", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def add(group_parser, name, func, help_text, with_file=True):
        p = group_parser.add_parser(name, parents=[common], help=help_text)
        if with_file:
            p.add_argument("file")
        p.set_defaults(func=func)
        return p

    shapes = groups.add_parser("shapes", help="shape utilities").add_subparsers(dest="cmd", required=True)
    add(shapes, "validate", cmd_shapes_validate, "check the skew-shape condition")
    add(shapes, "normalize", cmd_shapes_normalize, "translate the meet to the origin")
    add(shapes, "components", cmd_shapes_components, "split into connected components")

    glue = groups.add_parser("glue", help="gluing data").add_subparsers(dest="cmd", required=True)
    add(glue, "isos", cmd_glue_isos, "monomial isomorphisms K/I -> L/J")
    add(glue, "check", cmd_glue_check, "validate gluing data")
    add(glue, "scaffold", cmd_glue_scaffold, "shrink to the scaffolded module")

    plan = groups.add_parser("plan", help="floor plans").add_subparsers(dest="cmd", required=True)
    add(plan, "canonical", cmd_plan_canonical, "canonical realization")
    add(plan, "check", cmd_plan_check, "validate plans or realizations")
    add(plan, "reduce", cmd_plan_reduce, "bottom-slice reduction chain")
    add(plan, "rightfree", cmd_plan_rightfree, "right-free test and bottom configuration")

    search = groups.add_parser("search", help="exhaustive searches").add_subparsers(dest="cmd", required=True)
    p = add(search, "rightfree", cmd_search_rightfree,
            "right-free configurations of small intersection", with_file=False)
    p.add_argument("--max-components", type=int, default=3)
    p.add_argument("--max-cells", type=int, default=5)
    p.add_argument("--box", type=_box, default=(5, 5))
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard", type=int, default=0)

    oracle = groups.add_parser("oracle", help="linear-algebra oracle").add_subparsers(dest="cmd", required=True)
    p = add(oracle, "dim", cmd_oracle_dim, "module and algebra dimensions")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--matrices", action="store_true", help="include the multiplication matrices")

    camp = groups.add_parser("campaign", help="verification campaigns").add_subparsers(dest="cmd", required=True)
    p = add(camp, "run", cmd_campaign_run, "run a named campaign", with_file=False)
    p.add_argument("name", choices=campaign_names())
    p.add_argument("--bounds", default="{}", help="JSON object or path to one")
    p.add_argument("--jobs", type=int, default=int(os.environ.get("GERST_JOBS", "1")))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except jsonio.SchemaError as exc:
        sys.stdout.write(jsonio.dumps(exc.to_json()))
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
