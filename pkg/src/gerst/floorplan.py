"""Floor plans in N^2, b-heights and canonical realizations.

Every operation taking a ``side`` argument works on the left data (``"b"``)
or, identically, on the right data (``"c"``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .gluing import GluingData, scaffolded, validate_gluing
from .shapes import (
    HeightPair,
    Point,
    ShapeError,
    SkewShape,
    closure_leq,
    height_functions,
    is_connected,
    meet,
    translate,
)


class PlanError(ValueError):
    pass


@lru_cache(maxsize=4096)
def _piece_facts(s: SkewShape) -> tuple[bool, bool, HeightPair | None]:
    """(abstract, connected, height pair) for a 3-D piece; pieces recur a lot."""
    abstract = bool(s) and not any(meet(s))
    return abstract, is_connected(s) if s else False, height_functions(s) if s else None


def _project(cells) -> frozenset:
    return frozenset((a[0], a[1]) for a in cells)


@dataclass(frozen=True)
class FloorPlan:
    """Connected abstract 3-D pieces ``nu`` with planar anchors ``b`` and ``c``.

    ``require_connected=False`` admits disconnected pieces; only the
    reduction and height machinery is meaningful for such plans.
    """

    nu: tuple[SkewShape, ...]
    b: tuple[Point, ...]
    c: tuple[Point, ...]
    require_connected: bool = True

    def __post_init__(self):
        nu = tuple(s if isinstance(s, SkewShape) else SkewShape(s, 3) for s in self.nu)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "b", tuple(tuple(int(x) for x in v) for v in self.b))
        object.__setattr__(self, "c", tuple(tuple(int(x) for x in v) for v in self.c))
        if not (len(self.nu) == len(self.b) == len(self.c)):
            raise PlanError("nu, b and c must have the same length")
        for j, s in enumerate(self.nu):
            if s.n != 3:
                raise PlanError(f"piece {j + 1} is not three-dimensional")
            abstract, connected, _ = _piece_facts(s)
            if not abstract:
                raise PlanError(f"piece {j + 1} is not an abstract skew shape")
            if self.require_connected and not connected:
                raise PlanError(f"piece {j + 1} is not connected")
        for v in self.b + self.c:
            if len(v) != 2 or min(v) < 0:
                raise PlanError(f"anchor {v} is not a point of N^2")
        for side in ("b", "c"):
            seen: dict = {}
            for j, cells in enumerate(self.placed(side)):
                for v in cells:
                    if v in seen:
                        raise PlanError(f"projections of pieces {seen[v] + 1} and {j + 1} "
                                        f"overlap at {v} on side {side}")
                    seen[v] = j

    @property
    def ell(self) -> int:
        return len(self.nu)

    @property
    def size(self) -> int:
        return sum(len(s) for s in self.nu)

    def anchors(self, side: str) -> tuple[Point, ...]:
        if side == "b":
            return self.b
        if side == "c":
            return self.c
        raise ValueError(f"side must be 'b' or 'c', not {side!r}")

    @cached_property
    def projections(self) -> tuple[frozenset, ...]:
        return tuple(_project(s) for s in self.nu)

    @cached_property
    def height_pairs(self) -> tuple[HeightPair, ...]:
        return tuple(_piece_facts(s)[2] for s in self.nu)

    def placed(self, side: str) -> tuple[frozenset, ...]:
        return tuple(translate(p, v) for p, v in zip(self.projections, self.anchors(side)))

    @cached_property
    def _relations(self) -> dict:
        # filled per side on demand, see _relations_for
        return {}

    def _relations_for(self, side: str) -> dict:
        if side not in self._relations:
            self._relations[side] = _relation_table(self, side)
        return self._relations[side]

    @cached_property
    def _heights(self) -> dict:
        # filled lazily per side so that a cycle on one side does not block the other
        return {}


def _relation_table(plan: FloorPlan, side: str) -> dict:
    """Map (i, j), i != j, with nu_i <=_side nu_j to the pair height."""
    anchors = plan.anchors(side)
    placed = plan.placed(side)
    hp = plan.height_pairs
    table = {}
    for i in range(plan.ell):
        for j in range(plan.ell):
            if i == j:
                continue
            best = None
            bi, bj = anchors[i], anchors[j]
            for v in placed[i]:
                low = hp[i].low((v[0] - bi[0], v[1] - bi[1]))
                for w in placed[j]:
                    if v[0] <= w[0] and v[1] <= w[1]:
                        val = hp[j].up((w[0] - bj[0], w[1] - bj[1])) - low
                        if best is None or val > best:
                            best = val
            if best is not None:
                table[(i, j)] = best
    return table


def _longest_paths(ell: int, table: dict, side: str = "b") -> tuple[int, ...]:
    succ: dict = {i: [] for i in range(ell)}
    for (i, j), w in table.items():
        succ[i].append((j, w))
    memo: dict = {}
    state = [0] * ell

    def visit(i):
        if state[i] == 2:
            return memo[i]
        if state[i] == 1:
            raise PlanError(f"the <=_{side} relation has a cycle")
        state[i] = 1
        best = 0
        for j, w in succ[i]:
            best = max(best, w + visit(j))
        state[i] = 2
        memo[i] = best
        return best

    return tuple(visit(i) for i in range(ell))


def _check_index(plan, *idx):
    for i in idx:
        if not 0 <= i < plan.ell:
            raise IndexError(f"piece index {i} out of range for {plan.ell} pieces")


def leq_b(plan: FloorPlan, i: int, j: int, side: str = "b") -> bool:
    _check_index(plan, i, j)
    return i == j or (i, j) in plan._relations_for(side)


def leq_c(plan: FloorPlan, i: int, j: int) -> bool:
    return leq_b(plan, i, j, "c")


def hb_pair(plan: FloorPlan, i: int, j: int, side: str = "b") -> int:
    _check_index(plan, i, j)
    try:
        return plan._relations_for(side)[(i, j)]
    except KeyError:
        raise PlanError(f"pieces {i + 1} and {j + 1} are not related under <=_{side}") from None


def hb(plan: FloorPlan, j: int, side: str = "b") -> int:
    _check_index(plan, j)
    return heights(plan, side)[j]


def hc(plan: FloorPlan, j: int) -> int:
    return hb(plan, j, "c")


def heights(plan: FloorPlan, side: str = "b") -> tuple[int, ...]:
    plan.anchors(side)
    cache = plan._heights
    if side not in cache:
        cache[side] = _longest_paths(plan.ell, plan._relations_for(side), side)
    return cache[side]


def hb_by_chains(plan: FloorPlan, j: int, side: str = "b") -> int:
    """Reference computation: maximise over every explicit chain from ``j``."""
    table = plan._relations_for(side)
    best = 0

    def walk(i, total, visited):
        nonlocal best
        best = max(best, total)
        for (x, y), w in table.items():
            if x == i and y not in visited:
                walk(y, total + w, visited | {y})

    walk(j, 0, frozenset([j]))
    return best


@dataclass(frozen=True)
class Realization:
    plan: FloorPlan
    bz: tuple[int, ...]
    cz: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bz", tuple(int(x) for x in self.bz))
        object.__setattr__(self, "cz", tuple(int(x) for x in self.cz))
        if len(self.bz) != self.plan.ell or len(self.cz) != self.plan.ell:
            raise PlanError("third offsets must have one entry per piece")

    @property
    def bvec(self) -> tuple[Point, ...]:
        return tuple(v + (z,) for v, z in zip(self.plan.b, self.bz))

    @property
    def cvec(self) -> tuple[Point, ...]:
        return tuple(v + (z,) for v, z in zip(self.plan.c, self.cz))

    @cached_property
    def gluing(self) -> GluingData:
        return scaffolded(self.plan.nu, self.bvec, self.cvec, 3)

    @property
    def lam(self):
        return self.gluing.lam

    @property
    def mu(self):
        return self.gluing.mu

    def is_valid(self) -> bool:
        return min(self.bz + self.cz, default=0) >= 0 and bool(validate_gluing(self.gluing))


def canonical_realization(plan: FloorPlan) -> Realization:
    return Realization(plan, heights(plan, "b"), heights(plan, "c"))


def is_realization(plan: FloorPlan, bz: Sequence[int], cz: Sequence[int]) -> bool:
    if len(bz) != plan.ell or len(cz) != plan.ell:
        raise PlanError("third offsets must have one entry per piece")
    return Realization(plan, bz, cz).is_valid()


def side_is_valid(plan: FloorPlan, side: str, offsets: Sequence[int]) -> bool:
    """Whether lifting one side by ``offsets`` gives pieces closed under >= in
    the closure of their union.

    Membership in the closure is tested directly as domination by a placed
    cell, so no closure is materialised.
    """
    if min(offsets, default=0) < 0:
        return False
    anchors = plan.anchors(side)
    pieces = [translate(s, v + (z,)) for s, v, z in zip(plan.nu, anchors, offsets)]
    allcells = [(w, j) for j, p in enumerate(pieces) for w in p]
    for j, p in enumerate(pieces):
        for v in p:
            for i in range(3):
                u = v[:i] + (v[i] + 1,) + v[i + 1:]
                if u in p:
                    continue
                for w, k in allcells:
                    if w[0] >= u[0] and w[1] >= u[1] and w[2] >= u[2]:
                        return False
    return True


def upper_height_lambda(plan: FloorPlan, a: Point, side: str = "b") -> int:
    """Upper height of the canonical left (or right) side, from b-heights."""
    hts = heights(plan, side)
    best = 0
    for j, (cells, v0) in enumerate(zip(plan.placed(side), plan.anchors(side))):
        hp = plan.height_pairs[j]
        for v in cells:
            if a[0] <= v[0] and a[1] <= v[1]:
                best = max(best, hts[j] + hp.up((v[0] - v0[0], v[1] - v0[1])))
    return best


def upper_heights(plan: FloorPlan, side: str = "b") -> dict:
    """The whole upper height function of the canonical side, zeros omitted."""
    support = closure_leq(frozenset().union(*plan.placed(side)), 2) if plan.ell else ()
    return {a: upper_height_lambda(plan, a, side) for a in support}


def is_right_free(plan: FloorPlan) -> bool:
    return all(h == 0 for h in heights(plan, "b"))


__all__ = [
    "FloorPlan", "PlanError", "Realization", "ShapeError", "canonical_realization", "hb",
    "hb_by_chains", "hb_pair", "hc", "heights", "is_realization", "is_right_free", "leq_b",
    "leq_c", "side_is_valid", "upper_height_lambda", "upper_heights",
]
