"""Bottom slices of 3-D pieces and the bottom-slice reduction of floor plans."""

from __future__ import annotations

from dataclasses import dataclass

from .floorplan import FloorPlan, upper_heights
from .shapes import Point, SkewShape, connected_components, meet, normalize


@dataclass(frozen=True)
class SliceReduction:
    star_plan: FloorPlan
    eta: tuple[int, ...]
    anchors: tuple[Point, ...]


def bottom_slice(sigma) -> tuple[frozenset, list[tuple[SkewShape, Point]]]:
    """Split ``sigma`` into its a3 = 0 layer and the normalized components of
    the rest, each with the meet it was translated from.

    Components are ordered by meet with the third coordinate most
    significant, then the second, then the first.
    """
    bottom = frozenset(v for v in sigma if v[2] == 0)
    rest = frozenset(v for v in sigma if v[2] != 0)
    comps = sorted(connected_components(SkewShape(rest, 3)) if rest else [],
                   key=lambda t: meet(t)[::-1])
    return bottom, [(normalize(t), meet(t)) for t in comps]


def bottom_slice_reduction(plan: FloorPlan) -> SliceReduction:
    nu, b, c, eta, anchors = [], [], [], [], []
    for j, piece in enumerate(plan.nu):
        _, rest = bottom_slice(piece)
        for shape, m in rest:
            nu.append(shape)
            b.append((plan.b[j][0] + m[0], plan.b[j][1] + m[1]))
            c.append((plan.c[j][0] + m[0], plan.c[j][1] + m[1]))
            eta.append(j)
            anchors.append(m)
    star = FloorPlan(tuple(nu), tuple(b), tuple(c), plan.require_connected)
    return SliceReduction(star, tuple(eta), tuple(anchors))


def bottom_size(plan: FloorPlan) -> int:
    return sum(len(bottom_slice(s)[0]) for s in plan.nu)


def bottom_intersection(plan: FloorPlan) -> int:
    """Size of the intersection of the bottom layers of the canonical sides."""
    return len(set(upper_heights(plan, "b")) & set(upper_heights(plan, "c")))


def canonical_intersection(plan: FloorPlan) -> int:
    """``|lam & mu|`` for the canonical realization, from upper heights."""
    up_b, up_c = upper_heights(plan, "b"), upper_heights(plan, "c")
    return sum(min(h, up_c.get(a, 0)) for a, h in up_b.items())


def verify_height_drop(plan: FloorPlan) -> bool:
    """Each canonical side loses at least one unit of height on the support
    of the reduced plan's side."""
    star = bottom_slice_reduction(plan).star_plan
    for side in ("b", "c"):
        full, reduced = upper_heights(plan, side), upper_heights(star, side)
        if any(full.get(a, 0) < h + 1 for a, h in reduced.items()):
            return False
    return True


def prop_main_condition(plan: FloorPlan) -> bool:
    return bottom_size(plan) <= bottom_intersection(plan)


def reduce_to_fixpoint(plan: FloorPlan) -> list[FloorPlan]:
    chain = [plan]
    while chain[-1].ell:
        star = bottom_slice_reduction(chain[-1]).star_plan
        assert star.size < chain[-1].size
        chain.append(star)
    return chain


__all__ = [
    "SliceReduction", "bottom_intersection", "bottom_size", "bottom_slice",
    "bottom_slice_reduction", "canonical_intersection", "prop_main_condition",
    "reduce_to_fixpoint", "verify_height_drop",
]
