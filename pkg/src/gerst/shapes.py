"""Lattice geometry of N^n: standard shapes, skew shapes and height functions.

Cells are plain tuples of non-negative ints. A :class:`SkewShape` is a
``frozenset`` of cells carrying its ambient dimension ``n``; a
:class:`StandardShape` is a skew shape that is closed under ``<=``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

Point = tuple[int, ...]


class ShapeError(ValueError):
    """Raised when a cell set violates a shape invariant."""


def _as_cells(cells: Iterable[Sequence[int]]) -> frozenset:
    if isinstance(cells, frozenset):
        return cells
    return frozenset(tuple(int(x) for x in c) for c in cells)


def _infer_dim(cells, n):
    if n is not None:
        return n
    n = getattr(cells, "n", None)
    if n is not None:
        return n
    for c in cells:
        return len(c)
    raise ShapeError("cannot infer dimension of an empty cell set; pass n")


class SkewShape(frozenset):
    """A finite skew shape in N^n, stored as a frozenset of cells."""

    __slots__ = ("n",)

    def __new__(cls, cells: Iterable[Sequence[int]] = (), n: int | None = None):
        cells = _as_cells(cells)
        self = super().__new__(cls, cells)
        self.n = _infer_dim(cells, n)
        for c in self:
            if len(c) != self.n:
                raise ShapeError(f"cell {c} has dimension {len(c)}, expected {self.n}")
            if min(c) < 0:
                raise ShapeError(f"cell {c} has a negative coordinate")
        self._check()
        return self

    def _check(self):
        if not is_skew_shape(self):
            raise ShapeError("cells do not form a skew shape: closure minus cells "
                             "is not downward closed")

    def __reduce__(self):
        return (self.__class__, (tuple(self), self.n))

    def __repr__(self):
        return f"{type(self).__name__}({sorted(self)!r}, n={self.n})"

    def sorted(self) -> list[Point]:
        return sorted(self)

    @property
    def outer(self) -> StandardShape:
        return closure_leq(self, self.n)

    @property
    def inner(self) -> StandardShape:
        outer = self.outer
        return StandardShape(outer - self, self.n)

    def translate(self, v: Sequence[int]) -> SkewShape:
        return SkewShape(translate(self, v), self.n)


class StandardShape(SkewShape):
    """A finite subset of N^n closed under the componentwise order."""

    __slots__ = ()

    def _check(self):
        bad = first_non_downward_closed(self)
        if bad is not None:
            raise ShapeError(f"not downward closed: {bad[0]} is in the shape "
                             f"but {bad[1]} is not")


def translate(cells: Iterable[Point], v: Sequence[int]) -> frozenset:
    return frozenset(tuple(a + b for a, b in zip(c, v)) for c in cells)


def first_non_downward_closed(cells) -> tuple[Point, Point] | None:
    """Return a witness ``(p, p - e_i)`` of failure of downward closure."""
    for p in cells:
        for i, x in enumerate(p):
            if x:
                q = p[:i] + (x - 1,) + p[i + 1:]
                if q not in cells:
                    return p, q
    return None


def is_downward_closed(cells) -> bool:
    return first_non_downward_closed(cells) is None


def meet(cells: Iterable[Point]) -> Point:
    """Componentwise minimum of a nonempty cell set."""
    cells = list(cells)
    if not cells:
        raise ShapeError("empty shape has no meet")
    return tuple(map(min, zip(*cells)))


def normalize(cells: Iterable[Point]) -> SkewShape:
    """Translate a nonempty skew shape so that its meet is the origin."""
    cells = _as_cells(cells)
    m = meet(cells)
    return SkewShape(translate(cells, [-x for x in m]), len(m))


def closure_leq(cells: Iterable[Point], n: int | None = None) -> StandardShape:
    """Smallest downward-closed superset of ``cells``."""
    cells = _as_cells(cells)
    n = _infer_dim(cells, n)
    seen = set(cells)
    stack = list(cells)
    while stack:
        p = stack.pop()
        for i, x in enumerate(p):
            if x:
                q = p[:i] + (x - 1,) + p[i + 1:]
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
    return StandardShape.__new__(StandardShape, frozenset(seen), n)


def _closure_set(cells) -> set:
    seen = set(cells)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for i, x in enumerate(p):
            if x:
                q = p[:i] + (x - 1,) + p[i + 1:]
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
    return seen


def is_skew_shape(cells: Iterable[Point]) -> bool:
    """True iff ``closure(cells) - cells`` is downward closed."""
    cells = _as_cells(cells)
    inner = _closure_set(cells) - cells
    return is_downward_closed(inner)


def neighbours(p: Point):
    for i, x in enumerate(p):
        yield p[:i] + (x + 1,) + p[i + 1:]
        if x:
            yield p[:i] + (x - 1,) + p[i + 1:]


def _component_cells(cells) -> list[frozenset]:
    cells = set(cells)
    comps = []
    while cells:
        start = cells.pop()
        comp = {start}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for q in neighbours(p):
                if q in cells:
                    cells.remove(q)
                    comp.add(q)
                    queue.append(q)
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (meet(c), sorted(c)))
    return comps


def connected_components(cells: Iterable[Point]) -> list[SkewShape]:
    """Components under unit steps, sorted lexicographically by meet."""
    cells = _as_cells(cells)
    n = getattr(cells, "n", None)
    return [SkewShape(c, n) for c in _component_cells(cells)]


def is_connected(cells: Iterable[Point]) -> bool:
    return len(_component_cells(cells)) == 1


def is_abstract(cells: Iterable[Point]) -> bool:
    cells = _as_cells(cells)
    return bool(cells) and not any(meet(cells)) and is_skew_shape(cells)


def translation_equivalent(sigma: Iterable[Point], tau: Iterable[Point]) -> bool:
    sigma, tau = _as_cells(sigma), _as_cells(tau)
    if not sigma or not tau:
        return not sigma and not tau
    return normalize(sigma) == normalize(tau)


# -- height functions (n = 3) ------------------------------------------------


def _heights(table: Mapping[Point, int]) -> dict:
    return {a: h for a, h in table.items() if h}


@dataclass(frozen=True, eq=False)
class HeightPair:
    """Upper and lower height functions N^2 -> N, zeros omitted."""

    upper: Mapping[Point, int] = field(default_factory=dict)
    lower: Mapping[Point, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "upper", _heights(dict(self.upper)))
        object.__setattr__(self, "lower", _heights(dict(self.lower)))

    def __eq__(self, other):
        if not isinstance(other, HeightPair):
            return NotImplemented
        return self.upper == other.upper and self.lower == other.lower

    def __hash__(self):
        return hash((frozenset(self.upper.items()), frozenset(self.lower.items())))

    def up(self, a: Point) -> int:
        return self.upper.get(tuple(a), 0)

    def low(self, a: Point) -> int:
        return self.lower.get(tuple(a), 0)

    def support(self) -> frozenset:
        return frozenset(self.upper)


def _column_counts(cells) -> dict:
    counts: dict = {}
    for a1, a2, _ in cells:
        counts[(a1, a2)] = counts.get((a1, a2), 0) + 1
    return counts


def height_functions(sigma: Iterable[Point]) -> HeightPair:
    sigma = _as_cells(sigma)
    for c in sigma:
        if len(c) != 3:
            raise ShapeError(f"height functions need n = 3, got a cell of dimension {len(c)}")
    outer = _closure_set(sigma)
    return HeightPair(_column_counts(outer), _column_counts(outer - sigma))


def height_pair_violation(hp: HeightPair, allow_empty: bool = True) -> str | None:
    """Name the first failed condition among (i)-(v), or None."""
    if not hp.upper and not allow_empty:
        return "(i) upper height function is identically zero"
    for a, h in hp.lower.items():
        if h > hp.up(a):
            return f"(iii) lower({a}) = {h} exceeds upper({a}) = {hp.up(a)}"
    for table, name in ((hp.upper, "upper"), (hp.lower, "lower")):
        for (a1, a2), h in table.items():
            for b in ((a1 - 1, a2), (a1, a2 - 1)):
                if min(b) >= 0 and table.get(b, 0) < h:
                    return f"(iv) {name} is not nonincreasing: {name}({b}) < {name}({(a1, a2)})"
    for a, h in hp.upper.items():
        if hp.low(a) == h:
            if not any(b != a and b[0] >= a[0] and b[1] >= a[1]
                       and hb == h and hp.low(b) < h
                       for b, hb in hp.upper.items()):
                return f"(v) upper({a}) = lower({a}) = {h} with no larger cell of the same upper height"
    return None


def shape_from_heights(hp: HeightPair) -> SkewShape:
    """Inverse of :func:`height_functions` on abstract skew shapes and the empty shape."""
    bad = height_pair_violation(hp)
    if bad:
        raise ShapeError(f"invalid height pair: {bad}")
    cells = frozenset((a1, a2, z) for (a1, a2), h in hp.upper.items()
                      for z in range(hp.low((a1, a2)), h))
    if cells and any(meet(cells)):
        raise ShapeError(f"invalid height pair: shape is not abstract, its meet is {meet(cells)}")
    return SkewShape(cells, 3)


def contains_cell(hp: HeightPair, a: Point, a3: int) -> bool:
    return hp.low(a) <= a3 < hp.up(a)


# -- rectangles and paths in N^2 ---------------------------------------------


def rectangle(r: Point, s: Point) -> frozenset:
    xs = range(min(r[0], s[0]), max(r[0], s[0]) + 1)
    ys = range(min(r[1], s[1]), max(r[1], s[1]) + 1)
    return frozenset(product(xs, ys))


def find_unidirectional_path(sigma: Iterable[Point], r: Point, s: Point) -> list[Point]:
    """A monotone unit-step path from ``r`` to ``s`` inside ``sigma``.

    Steps all point in the quadrant of ``s - r``, so the path stays in the
    rectangle spanned by ``r`` and ``s``.
    """
    sigma = _as_cells(sigma)
    r, s = tuple(r), tuple(s)
    for p in (r, s):
        if p not in sigma:
            raise ShapeError(f"{p} is not a cell of the shape")
    if not is_connected(sigma):
        raise ShapeError("shape is not connected")
    dx = 1 if s[0] >= r[0] else -1
    dy = 1 if s[1] >= r[1] else -1
    steps = [(dx, 0), (0, dy)]
    prev = {r: None}
    queue = deque([r])
    while queue:
        p = queue.popleft()
        if p == s:
            break
        for sx, sy in steps:
            q = (p[0] + sx, p[1] + sy)
            if q in sigma and q not in prev and (q[0] - s[0]) * dx <= 0 and (q[1] - s[1]) * dy <= 0:
                prev[q] = p
                queue.append(q)
    if s not in prev:
        raise ShapeError(f"no unidirectional path from {r} to {s}")
    path = [s]
    while path[-1] != r:
        path.append(prev[path[-1]])
    return path[::-1]


# -- monomial ideals ----------------------------------------------------------


def ideal_to_shape(generators: Iterable[Sequence[int]], n: int) -> StandardShape:
    """Standard monomials of a finite-colength monomial ideal."""
    gens = [tuple(int(x) for x in g) for g in generators]
    for g in gens:
        if len(g) != n:
            raise ShapeError(f"generator {g} has dimension {len(g)}, expected {n}")
    bounds = []
    for i in range(n):
        powers = [g[i] for g in gens if all(x == 0 for j, x in enumerate(g) if j != i)]
        if not powers:
            raise ShapeError(f"ideal has infinite colength: no pure power of x{i + 1}")
        bounds.append(min(powers))
    cells = [p for p in product(*(range(b) for b in bounds))
             if not any(all(x >= y for x, y in zip(p, g)) for g in gens)]
    return StandardShape(cells, n)


def shape_to_ideal(shape: Iterable[Point], n: int | None = None) -> list[Point]:
    """Minimal generators of the monomial ideal whose standard monomials are ``shape``."""
    cells = _as_cells(shape)
    n = _infer_dim(cells, n)
    if not is_downward_closed(cells):
        raise ShapeError("not a standard shape")
    if not cells:
        return [(0,) * n]
    gens = set()
    for c in cells:
        for i in range(n):
            p = c[:i] + (c[i] + 1,) + c[i + 1:]
            if p in cells:
                continue
            if all(p[:j] + (p[j] - 1,) + p[j + 1:] in cells for j in range(n) if p[j]):
                gens.add(p)
    return sorted(gens)
