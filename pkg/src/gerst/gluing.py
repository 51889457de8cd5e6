"""Combinatorial modules glued from two monomial quotients.

A module is stored in anchored form ``(lam, mu, nu, b, c)``: ``nu`` is a
list of connected abstract skew shapes and piece ``j`` sits at ``nu[j] + b[j]``
inside ``lam`` and at ``nu[j] + c[j]`` inside ``mu``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Iterable, Sequence

from .shapes import (
    Point,
    ShapeError,
    SkewShape,
    StandardShape,
    closure_leq,
    connected_components,
    ideal_to_shape,
    is_connected,
    meet,
    normalize,
    translate,
)


class GluingError(ValueError):
    pass


@dataclass(frozen=True)
class GluingData:
    lam: StandardShape
    mu: StandardShape
    nu: tuple[SkewShape, ...]
    b: tuple[Point, ...]
    c: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(self.nu))
        object.__setattr__(self, "b", tuple(tuple(int(x) for x in v) for v in self.b))
        object.__setattr__(self, "c", tuple(tuple(int(x) for x in v) for v in self.c))
        if not (len(self.nu) == len(self.b) == len(self.c)):
            raise GluingError("nu, b and c must have the same length")
        n = self.n
        parts = [self.lam, self.mu, *self.nu]
        if any(p.n != n for p in parts) or any(len(v) != n for v in self.b + self.c):
            raise GluingError("dimension mismatch among gluing data parts")

    @property
    def n(self) -> int:
        return self.lam.n

    @property
    def ell(self) -> int:
        return len(self.nu)

    def placed_left(self, j: int) -> frozenset:
        return translate(self.nu[j], self.b[j])

    def placed_right(self, j: int) -> frozenset:
        return translate(self.nu[j], self.c[j])

    @property
    def nu_size(self) -> int:
        return sum(len(s) for s in self.nu)


@dataclass(frozen=True)
class Validation:
    """Outcome of :func:`validate_gluing`; truthy iff the data is valid."""

    ok: bool
    clause: str | None = None
    detail: str | None = None
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def _check_side(pieces: list[frozenset], shape, side: str) -> Validation | None:
    seen: dict = {}
    for j, piece in enumerate(pieces):
        for v in piece:
            if v in seen:
                return Validation(False, f"{side}: disjointness",
                                  f"pieces {seen[v] + 1} and {j + 1} share a cell", (v,))
            seen[v] = j
    for j, piece in enumerate(pieces):
        for v in piece:
            if v not in shape:
                return Validation(False, f"{side}: containment",
                                  f"piece {j + 1} leaves the standard shape", (v,))
    for j, piece in enumerate(pieces):
        for v in piece:
            for i in range(len(v)):
                w = v[:i] + (v[i] + 1,) + v[i + 1:]
                if w in shape and w not in piece:
                    return Validation(False, f"{side}: upward closure",
                                      f"piece {j + 1} is not closed under >= in the shape",
                                      (v, w))
    return None


def validate_gluing(g: GluingData) -> Validation:
    """Check conditions (i) and (ii) and that every piece is connected and abstract."""
    for j, s in enumerate(g.nu):
        if not s or any(meet(s)):
            return Validation(False, "abstract", f"piece {j + 1} does not have its meet at the origin")
        if not is_connected(s):
            return Validation(False, "connected", f"piece {j + 1} is not connected")
    left = [g.placed_left(j) for j in range(g.ell)]
    right = [g.placed_right(j) for j in range(g.ell)]
    for pieces, shape, side in ((left, g.lam, "(i) left"), (right, g.mu, "(ii) right")):
        failure = _check_side(pieces, shape, side)
        if failure is not None:
            return failure
    return Validation(True)


def _require_valid(g: GluingData):
    v = validate_gluing(g)
    if not v:
        raise GluingError(f"invalid gluing data: {v.clause}: {v.detail}")


def module_dimension(g: GluingData) -> int:
    _require_valid(g)
    return len(g.lam) + len(g.mu) - g.nu_size


def is_counterexample(g: GluingData) -> bool:
    _require_valid(g)
    return g.nu_size > len(g.lam & g.mu)


def scaffold(g: GluingData) -> GluingData:
    """Shrink both sides to the closures of the placed pieces."""
    _require_valid(g)
    left = frozenset().union(*(g.placed_left(j) for j in range(g.ell)))
    right = frozenset().union(*(g.placed_right(j) for j in range(g.ell)))
    return GluingData(closure_leq(left, g.n), closure_leq(right, g.n), g.nu, g.b, g.c)


@lru_cache(maxsize=4096)
def _placed_closure(nu: tuple, anchors: tuple, n: int) -> StandardShape:
    return closure_leq(frozenset().union(*(translate(s, v) for s, v in zip(nu, anchors))), n)


def scaffolded(nu: Sequence[SkewShape], b: Sequence[Point], c: Sequence[Point],
               n: int | None = None) -> GluingData:
    """Gluing data with both sides the closures of the placed pieces (no validation)."""
    if n is None:
        n = nu[0].n if nu else len(b[0])
    nu, b, c = tuple(nu), tuple(map(tuple, b)), tuple(map(tuple, c))
    return GluingData(_placed_closure(nu, b, n), _placed_closure(nu, c, n), nu, b, c)


# -- monomial isomorphisms ----------------------------------------------------


@dataclass(frozen=True)
class IsoMatching:
    """Component ``i`` of the source maps to component ``permutation[i]`` of the
    target, translated by ``shifts[i]``."""

    permutation: tuple[int, ...]
    shifts: tuple[Point, ...]


def enumerate_monomial_isos(zeta: Iterable[Point], xi: Iterable[Point]) -> list[IsoMatching]:
    """All bijections between components matching translation classes."""
    zc = connected_components(zeta)
    xc = connected_components(xi)
    if len(zc) != len(xc):
        return []
    znorm = [normalize(s) for s in zc]
    xnorm = [normalize(s) for s in xc]
    classes: dict = {}
    for i, s in enumerate(znorm):
        classes.setdefault(s, ([], []))[0].append(i)
    for k, s in enumerate(xnorm):
        if s not in classes:
            return []
        classes[s][1].append(k)
    if any(len(src) != len(dst) for src, dst in classes.values()):
        return []
    groups = list(classes.values())
    out = []
    for choice in product(*(permutations(dst) for _, dst in groups)):
        perm = [0] * len(zc)
        for (src, _), dst in zip(groups, choice):
            for i, k in zip(src, dst):
                perm[i] = k
        shifts = tuple(tuple(x - y for x, y in zip(meet(xc[perm[i]]), meet(zc[i])))
                       for i in range(len(zc)))
        out.append(IsoMatching(tuple(perm), shifts))
    out.sort(key=lambda m: m.permutation)
    return out


def expected_iso_count(zeta, xi) -> int:
    """Product of factorials of the class multiplicities (0 if classes differ)."""
    zn = sorted(sorted(normalize(s)) for s in connected_components(zeta))
    xn = sorted(sorted(normalize(s)) for s in connected_components(xi))
    if zn != xn:
        return 0
    counts: dict = {}
    for s in zn:
        counts[tuple(s)] = counts.get(tuple(s), 0) + 1
    return prod(factorial(k) for k in counts.values())


def gluing_from_matching(lam, mu, zeta, xi, matching: IsoMatching) -> GluingData:
    zc = connected_components(zeta)
    xc = connected_components(xi)
    nu = tuple(normalize(s) for s in zc)
    b = tuple(meet(s) for s in zc)
    c = tuple(meet(xc[matching.permutation[i]]) for i in range(len(zc)))
    return GluingData(lam, mu, nu, b, c)


def gluings_from_ideals(I, J, K, L, n: int) -> list[GluingData]:
    """One gluing datum per monomial isomorphism ``K/I -> L/J``."""
    lam, mu = ideal_to_shape(I, n), ideal_to_shape(J, n)
    small_k, small_l = ideal_to_shape(K, n), ideal_to_shape(L, n)
    if not (small_k <= lam and small_l <= mu):
        raise GluingError("need I inside K and J inside L")
    zeta, xi = lam - small_k, mu - small_l
    return [gluing_from_matching(lam, mu, zeta, xi, m)
            for m in enumerate_monomial_isos(zeta, xi)]


# -- indecomposable summands --------------------------------------------------


@dataclass(frozen=True)
class Summand:
    cells: SkewShape
    anchor: Point

    @property
    def shape(self) -> SkewShape:
        return normalize(self.cells)


def indecomposable_decomposition(k_over_i: Iterable[Point]) -> list[Summand]:
    """Graded indecomposable summands of ``K/I``: one per connected component."""
    comps = connected_components(k_over_i)
    for comp in comps:
        assert is_connected(comp)
    return [Summand(comp, meet(comp)) for comp in comps]


def summand_in_x3(g: GluingData, j: int) -> bool:
    """Whether summand ``j`` embeds in the ideal (x3) of ``S/I``."""
    if g.n != 3:
        raise GluingError("summand_in_x3 needs n = 3")
    _require_valid(g)
    if not 0 <= j < g.ell:
        raise IndexError(f"summand index {j} out of range")
    return all(v[2] >= 1 for v in g.placed_left(j))


__all__ = [
    "GluingData", "GluingError", "IsoMatching", "ShapeError", "Summand", "Validation",
    "enumerate_monomial_isos", "expected_iso_count", "gluing_from_matching",
    "gluings_from_ideals", "indecomposable_decomposition", "is_counterexample",
    "module_dimension", "scaffold", "scaffolded", "summand_in_x3", "validate_gluing",
]
