"""Verification campaigns over bounded instance spaces."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from itertools import product
from multiprocessing import Pool
from typing import Callable, Iterator

from .enumeration import enumerate_gluing_data, enumerate_half_plans
from .floorplan import (
    FloorPlan,
    PlanError,
    canonical_realization,
    hb_by_chains,
    heights,
    is_right_free,
    leq_b,
    side_is_valid,
)
from .gluing import is_counterexample, scaffolded, validate_gluing
from .oracle import CHECK_PRIME, DEFAULT_PRIME, OracleError, verify_gq
from .reduction import (
    bottom_intersection,
    bottom_size,
    bottom_slice_reduction,
    canonical_intersection,
    verify_height_drop,
)
from .rightfree import bottom_config, has_small_intersection, search_small_intersection_report


@dataclass(frozen=True)
class SearchBounds:
    max_components: int = 2
    max_cells: int = 4
    box: tuple[int, ...] = (4, 4, 4)
    max_third_offset: int | None = None
    max_dim: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "box", tuple(int(x) for x in self.box))
        if self.max_components < 1 or self.max_cells < 1 or min(self.box) < 1:
            raise ValueError("component, cell and box bounds must be at least 1")
        if self.max_third_offset is not None and self.max_third_offset < 0:
            raise ValueError("max_third_offset must be nonnegative")
        if self.max_dim is not None and self.max_dim < 1:
            raise ValueError("max_dim must be at least 1")

    @property
    def plane(self) -> tuple[int, int]:
        return self.box[0], self.box[1]

    @property
    def depth(self) -> int | None:
        return self.box[2] if len(self.box) > 2 else None


@dataclass
class CampaignReport:
    name: str
    bounds: SearchBounds
    instances_checked: int
    violations: list = field(default_factory=list)
    wall_time: float = 0.0
    excluded: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"campaign": self.name, "bounds": asdict(self.bounds),
                "instances_checked": self.instances_checked,
                "violations": self.violations, "excluded": self.excluded,
                "wall_time": round(self.wall_time, 3)}


class Excluded(str):
    """Returned by a predicate when the claim does not apply to an instance."""


def _plan_json(plan: FloorPlan) -> dict:
    return {"nu": [sorted(s) for s in plan.nu], "b": list(plan.b), "c": list(plan.c)}


# -- instance generators and predicates ---------------------------------------
# Predicates return None when the instance passes, else a message.


def _half_plans(bounds: SearchBounds) -> Iterator[FloorPlan]:
    # Left and right data are handled by identical code, so one side suffices:
    # each plan is built with c = b and both sides are checked.
    for nu, b in enumerate_half_plans(bounds.max_components, bounds.max_cells,
                                      bounds.plane, bounds.depth):
        yield FloorPlan(nu, b, b)


def _offset_cap(plan: FloorPlan) -> int:
    return sum(max(v[2] for v in s) + 1 for s in plan.nu) + 2


def _unrealizable(plan: FloorPlan, sides: str = "bc") -> str | None:
    """Classify a plan whose <=_b or <=_c relation has a cycle.

    Such a plan has no canonical realization. It is excluded when a brute
    force over all offsets up to a generous cap finds no valid side either,
    and is a violation otherwise.
    """
    for side in sides:
        try:
            heights(plan, side)
        except PlanError:
            cap = _offset_cap(plan)
            for z in product(range(cap + 1), repeat=plan.ell):
                if side_is_valid(plan, side, z):
                    return f"cyclic <=_{side} but offsets {z} give a valid side"
            return Excluded(f"cyclic <=_{side}; no valid offsets up to {cap}")
    return None


def _check_minimality(plan: FloorPlan) -> str | None:
    cyc = _unrealizable(plan)
    if cyc is not None:
        return cyc
    real = canonical_realization(plan)
    if not real.is_valid():
        return "canonical realization is not a valid module"
    for side, canon in (("b", real.bz), ("c", real.cz)):
        if not side_is_valid(plan, side, canon):
            return f"canonical offsets {canon} fail the direct {side}-side check"
        for z in product(*(range(h + 3) for h in canon)):
            if side_is_valid(plan, side, z) and any(x < y for x, y in zip(z, canon)):
                return f"valid {side}-offsets {z} are not above canonical {canon}"
    return None


def _check_height_drop(plan: FloorPlan) -> str | None:
    cyc = _unrealizable(plan)
    if cyc is not None:
        return cyc
    red = bottom_slice_reduction(plan)
    try:
        heights(red.star_plan, "b"), heights(red.star_plan, "c")
    except PlanError as exc:
        return f"reduced plan has no canonical realization: {exc}"
    if red.star_plan.size != plan.size - bottom_size(plan):
        return "reduced plan size is not |nu| - |nu_bottom|"
    if not verify_height_drop(plan):
        return "upper height of the reduced plan does not drop by one"
    lhs = canonical_intersection(red.star_plan)
    rhs = canonical_intersection(plan) - bottom_intersection(plan)
    if lhs > rhs:
        return f"|lam* & mu*| = {lhs} exceeds |lam & mu| - |lam0 & mu0| = {rhs}"
    if is_right_free(plan) and not is_right_free(red.star_plan):
        return "reduction of a right-free plan is not right-free"
    return None


def _check_chains(plan: FloorPlan) -> str | None:
    for side in ("b", "c"):
        for i in range(plan.ell):
            for j in range(i + 1, plan.ell):
                if leq_b(plan, i, j, side) and leq_b(plan, j, i, side):
                    return f"pieces {i + 1} and {j + 1} are mutually <=_{side}"
        try:
            dp = heights(plan, side)
        except PlanError as exc:
            return str(exc)
        ref = tuple(hb_by_chains(plan, j, side) for j in range(plan.ell))
        if dp != ref:
            return f"DP heights {dp} differ from chain enumeration {ref}"
    return None


def _right_free_plans(bounds: SearchBounds) -> Iterator[FloorPlan]:
    w, h = bounds.plane
    for nu, b in enumerate_half_plans(bounds.max_components, bounds.max_cells,
                                      bounds.plane, bounds.depth):
        half = FloorPlan(nu, b, b)
        if _unrealizable(half, "b") is not None or not is_right_free(half):
            continue
        proj = half.projections
        options = []
        for p in proj:
            mx = max(v[0] for v in p)
            my = max(v[1] for v in p)
            options.append([(x, y) for x in range(w - mx) for y in range(h - my)])
        for c in product(*options):
            seen: set = set()
            ok = True
            for p, a in zip(proj, c):
                cells = {(v[0] + a[0], v[1] + a[1]) for v in p}
                if cells & seen:
                    ok = False
                    break
                seen |= cells
            if ok:
                plan = FloorPlan(nu, b, c)
                # the b side was checked above; cyclic c sides admit no realization
                if _unrealizable(plan, "c") is None:
                    yield plan


def _check_right_free(plan: FloorPlan) -> str | None:
    real = canonical_realization(plan)
    g = real.gluing
    if not validate_gluing(g):
        return "canonical realization is not a valid module"
    inter = len(g.lam & g.mu)
    if g.nu_size > inter:
        return f"right-free plan is a counterexample: |nu| = {g.nu_size}, |lam & mu| = {inter}"
    if has_small_intersection(bottom_config(plan)):
        return "bottom configuration has small intersection"
    try:
        res = verify_gq(g, validate=False)
    except OracleError as exc:
        return str(exc)
    if not res.holds:
        return f"oracle: dim algebra {res.dimAlg} > dim module {res.dimN}"
    return None


def _gluings(bounds: SearchBounds):
    for nu, b, c in enumerate_gluing_data(bounds.max_components, bounds.max_cells, bounds.box,
                                          bounds.max_third_offset, bounds.max_dim):
        yield scaffolded(nu, b, c, len(bounds.box))


def _check_bridge(g) -> str | None:
    predicted = is_counterexample(g)
    for p in (DEFAULT_PRIME, CHECK_PRIME):
        try:
            res = verify_gq(g, p, validate=False)
        except OracleError as exc:
            return f"p = {p}: {exc}"
        if (res.dimAlg > res.dimN) != predicted:
            return (f"p = {p}: |nu| > |lam & mu| is {predicted} but dim algebra "
                    f"{res.dimAlg} vs dim module {res.dimN}")
    return None


def _gluing_json(g) -> dict:
    return {"nu": [sorted(s) for s in g.nu], "b": list(g.b), "c": list(g.c)}


@dataclass(frozen=True)
class Campaign:
    instances: Callable
    check: Callable
    describe: Callable


CAMPAIGNS: dict[str, Campaign] = {
    "canonical-minimality": Campaign(_half_plans, _check_minimality, _plan_json),
    "height-drop": Campaign(_half_plans, _check_height_drop, _plan_json),
    "hb-chains": Campaign(_half_plans, _check_chains, _plan_json),
    "rightfree-not-counterexample": Campaign(_right_free_plans, _check_right_free, _plan_json),
    "counterexample-oracle": Campaign(_gluings, _check_bridge, _gluing_json),
}

SEARCH_CAMPAIGN = "no-small-intersection"


def campaign_names() -> list[str]:
    return sorted([*CAMPAIGNS, SEARCH_CAMPAIGN])


def _run_shard(args) -> tuple[int, list, list]:
    name, bounds, jobs, shard = args
    if name == SEARCH_CAMPAIGN:
        res = search_small_intersection_report(bounds.max_components, bounds.max_cells,
                                               bounds.plane, jobs, shard)
        return res.candidates_examined, [
            (0, {"instance": {"nu0": [sorted(s) for s in w.nu0], "b": list(w.b), "c": list(w.c)},
                 "message": "right-free configuration of small intersection"})
            for w in res.witnesses], []
    camp = CAMPAIGNS[name]
    count = 0
    bad, skipped = [], []
    for k, inst in enumerate(camp.instances(bounds)):
        if k % jobs != shard:
            continue
        count += 1
        msg = camp.check(inst)
        if msg is not None:
            entry = (k, {"instance": camp.describe(inst), "message": str(msg)})
            (skipped if isinstance(msg, Excluded) else bad).append(entry)
    return count, bad, skipped


def run_campaign(name: str, bounds: SearchBounds, jobs: int = 1) -> CampaignReport:
    if name not in CAMPAIGNS and name != SEARCH_CAMPAIGN:
        raise ValueError(f"unknown campaign {name!r}; known: {', '.join(campaign_names())}")
    jobs = max(1, int(jobs))
    start = time.perf_counter()
    tasks = [(name, bounds, jobs, k) for k in range(jobs)]
    if jobs == 1:
        results = [_run_shard(tasks[0])]
    else:
        with Pool(jobs) as pool:
            results = pool.map(_run_shard, tasks)
    count = sum(r[0] for r in results)

    def merged(pos):
        rows = sorted((v for r in results for v in r[pos]), key=lambda kv: (kv[0], repr(kv[1])))
        return [v for _, v in rows]

    return CampaignReport(name, bounds, count, merged(1), time.perf_counter() - start,
                          merged(2))


__all__ = ["CAMPAIGNS", "CampaignReport", "Excluded", "SearchBounds", "campaign_names",
           "run_campaign"]
