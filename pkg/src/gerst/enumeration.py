"""Enumeration of shapes, floor-plan halves and gluing data within bounds."""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .shapes import SkewShape, _closure_set, is_connected, is_skew_shape


def _normalized(cells) -> tuple[frozenset, tuple]:
    m = tuple(map(min, zip(*cells)))
    return frozenset(tuple(a - b for a, b in zip(c, m)) for c in cells), m


def _removal_cell(cells: frozenset):
    """Lexicographically largest cell whose removal keeps ``cells`` connected."""
    for r in sorted(cells, reverse=True):
        rest = cells - {r}
        if not rest or is_connected(rest):
            return r
    raise AssertionError("a finite connected set always has a non-cut cell")


@lru_cache(maxsize=None)
def _connected_sets(dim: int, k: int) -> tuple[frozenset, ...]:
    """All connected k-cell sets in Z^dim up to translation, normalized."""
    if k == 1:
        return (frozenset([(0,) * dim]),)
    out = []
    for parent in _connected_sets(dim, k - 1):
        frontier = set()
        for p in parent:
            for i in range(dim):
                for d in (1, -1):
                    q = p[:i] + (p[i] + d,) + p[i + 1:]
                    if q not in parent:
                        frontier.add(q)
        for q in frontier:
            child, shift = _normalized(parent | {q})
            r = _removal_cell(child)
            if r == tuple(a - b for a, b in zip(q, shift)):
                out.append(child)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_connected_shapes(dim: int, cells: int) -> tuple[SkewShape, ...]:
    """Every connected abstract skew shape in N^dim with ``cells`` cells, sorted."""
    if cells < 1:
        raise ValueError("cells must be at least 1")
    found = [c for c in _connected_sets(dim, cells) if is_skew_shape(c)]
    found.sort(key=sorted)
    return tuple(SkewShape(c, dim) for c in found)


def shape_multisets(sizes: Sequence[int], max_components: int, max_cells: int,
                    min_components: int = 1) -> Iterator[tuple[int, ...]]:
    """Nondecreasing index tuples with at most ``max_components`` entries and
    total size at most ``max_cells``."""

    def rec(start, left, prefix):
        if len(prefix) >= min_components:
            yield tuple(prefix)
        if len(prefix) == max_components:
            return
        for i in range(start, len(sizes)):
            if sizes[i] <= left:
                prefix.append(i)
                yield from rec(i, left - sizes[i], prefix)
                prefix.pop()

    yield from rec(0, max_cells, [])


def _project(cells) -> frozenset:
    return frozenset((v[0], v[1]) for v in cells)


def plan_shapes(max_cells: int, depth: int | None = None) -> list[SkewShape]:
    """Connected abstract 3-D shapes with at most ``max_cells`` cells and
    height below ``depth``."""
    out = []
    for k in range(1, max_cells + 1):
        for s in enumerate_connected_shapes(3, k):
            if depth is None or max(v[2] for v in s) < depth:
                out.append(s)
    return out


def enumerate_half_plans(max_components: int, max_cells: int, box: tuple[int, int],
                         depth: int | None = None,
                         min_components: int = 1) -> Iterator[tuple[tuple, tuple]]:
    """Pairs ``(nu, b)``: pieces with planar anchors whose projections are
    disjoint and lie inside the ``w x h`` box.

    Equal consecutive pieces get strictly increasing anchors so that each
    unordered arrangement appears once.
    """
    w, h = box
    shapes = plan_shapes(max_cells, depth)
    proj = [_project(s) for s in shapes]
    anchors = []
    for p in proj:
        mx = max(v[0] for v in p)
        my = max(v[1] for v in p)
        anchors.append([(x, y) for x in range(w - mx) for y in range(h - my)])
    sizes = [len(s) for s in shapes]
    for combo in shape_multisets(sizes, max_components, max_cells, min_components):
        yield from _place(combo, shapes, proj, anchors)


def _place(combo, shapes, proj, anchors):
    ell = len(combo)
    chosen = []
    used: set = set()

    def rec(k, start):
        if k == ell:
            yield tuple(shapes[i] for i in combo), tuple(a for a, _ in chosen)
            return
        i = combo[k]
        lo = start if k and combo[k] == combo[k - 1] else 0
        opts = anchors[i]
        for idx in range(lo, len(opts)):
            a = opts[idx]
            cells = frozenset((v[0] + a[0], v[1] + a[1]) for v in proj[i])
            if cells & used:
                continue
            chosen.append((a, cells))
            used.update(cells)
            yield from rec(k + 1, idx + 1)
            used.difference_update(cells)
            chosen.pop()

    yield from rec(0, 0)


def placements_in_box(nu: Sequence[SkewShape], box: Sequence[int],
                      max_third_offset: int | None = None,
                      max_closure: int | None = None,
                      ordered: bool = True) -> Iterator[tuple[tuple, int]]:
    """Anchor sequences in N^n placing ``nu`` inside ``box`` as a valid side of
    a scaffolded module.

    Yields ``(anchors, closure size)``. With ``ordered``, equal consecutive
    pieces get increasing anchors.
    """
    n = len(box)
    ranges = []
    for s in nu:
        ext = [max(v[i] for v in s) for i in range(n)]
        axes = [range(box[i] - ext[i]) for i in range(n)]
        if max_third_offset is not None and n >= 3:
            axes[2] = range(min(box[2] - ext[2], max_third_offset + 1))
        ranges.append(sorted(product(*axes)))

    def rec(k, chosen, pieces, start):
        if k == len(nu):
            union = frozenset().union(*pieces)
            closure = _closure_set(union)
            if max_closure is not None and len(closure) > max_closure:
                return
            if _side_ok(pieces, closure):
                yield tuple(chosen), len(closure)
            return
        lo = start if ordered and k and nu[k] == nu[k - 1] else 0
        for idx in range(lo, len(ranges[k])):
            a = ranges[k][idx]
            cells = frozenset(tuple(x + y for x, y in zip(v, a)) for v in nu[k])
            if any(cells & p for p in pieces):
                continue
            if max_closure is not None and len(_closure_set(cells)) > max_closure:
                continue
            yield from rec(k + 1, chosen + [a], pieces + [cells], idx + 1)

    yield from rec(0, [], [], 0)


def _side_ok(pieces, closure) -> bool:
    for p in pieces:
        for v in p:
            for i in range(len(v)):
                u = v[:i] + (v[i] + 1,) + v[i + 1:]
                if u in closure and u not in p:
                    return False
    return True


def enumerate_gluing_data(max_components: int, max_cells: int, box: Sequence[int],
                          max_third_offset: int | None = None,
                          max_dim: int | None = None):
    """Valid scaffolded gluing data ``(nu, b, c)`` inside ``box``.

    Yields ``(nu, b, c)`` tuples; ``max_dim`` bounds ``|lam| + |mu| - |nu|``.
    """
    n = len(box)
    shapes = [s for k in range(1, max_cells + 1) for s in enumerate_connected_shapes(n, k)]
    sizes = [len(s) for s in shapes]
    for combo in shape_multisets(sizes, max_components, max_cells):
        nu = tuple(shapes[i] for i in combo)
        size = sum(sizes[i] for i in combo)
        cap = None if max_dim is None else max_dim
        lefts = list(placements_in_box(nu, box, max_third_offset, cap, ordered=True))
        if not lefts:
            continue
        rights = list(placements_in_box(nu, box, max_third_offset, cap, ordered=False))
        for b, nb in lefts:
            for c, nc in rights:
                if max_dim is not None and nb + nc - size > max_dim:
                    continue
                yield nu, b, c


__all__ = [
    "enumerate_connected_shapes", "enumerate_gluing_data", "enumerate_half_plans",
    "placements_in_box", "plan_shapes", "shape_multisets",
]
