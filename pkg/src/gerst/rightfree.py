"""Two-dimensional right-free configurations and the small-intersection search."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .enumeration import enumerate_connected_shapes, shape_multisets
from .floorplan import FloorPlan, is_right_free
from .reduction import bottom_slice
from .shapes import (
    Point,
    SkewShape,
    closure_leq,
    connected_components,
    is_connected,
    meet,
    normalize,
    translate,
)


class ConfigError(ValueError):
    pass


def _comparable(p: frozenset, q: frozenset) -> bool:
    return any((u[0] <= v[0] and u[1] <= v[1]) or (v[0] <= u[0] and v[1] <= u[1])
               for u in p for v in q)


@dataclass(frozen=True)
class RightFreeConfig:
    nu0: tuple[SkewShape, ...]
    b: tuple[Point, ...]
    c: tuple[Point, ...]

    def __post_init__(self):
        nu0 = tuple(s if isinstance(s, SkewShape) else SkewShape(s, 2) for s in self.nu0)
        object.__setattr__(self, "nu0", nu0)
        object.__setattr__(self, "b", tuple(tuple(int(x) for x in v) for v in self.b))
        object.__setattr__(self, "c", tuple(tuple(int(x) for x in v) for v in self.c))
        if not (len(self.nu0) == len(self.b) == len(self.c)):
            raise ConfigError("nu0, b and c must have the same length")
        for j, s in enumerate(self.nu0):
            if s.n != 2 or not s or any(meet(s)) or not is_connected(s):
                raise ConfigError(f"piece {j + 1} is not a connected abstract skew shape in N^2")
        xs, ys = self.placed_b, self.placed_c
        for i in range(self.ell):
            for j in range(i + 1, self.ell):
                if _comparable(xs[i], xs[j]):
                    raise ConfigError(f"pieces {i + 1} and {j + 1} are comparable under <=_b")
                if ys[i] & ys[j]:
                    raise ConfigError(f"pieces {i + 1} and {j + 1} overlap on the c side")

    @property
    def ell(self) -> int:
        return len(self.nu0)

    @property
    def nu_size(self) -> int:
        return sum(len(s) for s in self.nu0)

    @cached_property
    def placed_b(self) -> tuple[frozenset, ...]:
        return tuple(translate(s, v) for s, v in zip(self.nu0, self.b))

    @cached_property
    def placed_c(self) -> tuple[frozenset, ...]:
        return tuple(translate(s, v) for s, v in zip(self.nu0, self.c))

    @cached_property
    def X(self) -> frozenset:
        return frozenset().union(*self.placed_b)

    @cached_property
    def Y(self) -> frozenset:
        return frozenset().union(*self.placed_c)

    @cached_property
    def lam0(self) -> frozenset:
        return closure_leq(self.X, 2)

    @cached_property
    def mu0(self) -> frozenset:
        return closure_leq(self.Y, 2)

    @property
    def intersection(self) -> int:
        return len(self.lam0 & self.mu0)

    def canonical_key(self):
        return tuple(sorted((tuple(sorted(s)), b, c) for s, b, c in zip(self.nu0, self.b, self.c)))


def socle(cells: Iterable[Point]) -> frozenset:
    cells = frozenset(cells)
    return frozenset(v for v in cells
                     if all(v[:i] + (v[i] + 1,) + v[i + 1:] not in cells for i in range(len(v))))


def rows(cells: Iterable[Point]) -> dict[int, frozenset]:
    out: dict = {}
    for v in cells:
        out.setdefault(v[1], set()).add(v)
    return {i: frozenset(r) for i, r in out.items()}


def row(cells: Iterable[Point], i: int) -> frozenset:
    return frozenset(v for v in cells if v[1] == i)


def height(cells: Iterable[Point]) -> int:
    ys = [v[1] for v in cells if v[0] == 0]
    if not ys:
        raise ConfigError("height is undefined: no cell in column 0")
    return max(ys)


def row_and_height(cells: Iterable[Point]) -> tuple[dict[int, frozenset], int]:
    cells = frozenset(cells)
    return rows(cells), height(cells)


def has_small_intersection(cfg: RightFreeConfig) -> bool:
    return cfg.intersection < cfg.nu_size


def config_leq(x: RightFreeConfig, y: RightFreeConfig) -> bool:
    return (x.lam0 <= y.lam0 and x.mu0 <= y.mu0
            and x.nu_size <= y.nu_size
            and x.intersection - x.nu_size <= y.intersection - y.nu_size)


def bottom_config(plan: FloorPlan) -> RightFreeConfig:
    """The bottom layer of a right-free plan as a right-free configuration.

    A bottom layer may be disconnected or sit away from the origin, so each
    of its components becomes its own normalized piece, anchored at
    ``b_j + meet`` and ``c_j + meet``.
    """
    if not is_right_free(plan):
        raise ConfigError("floor plan is not right-free")
    nu0, b, c = [], [], []
    for piece, bj, cj in zip(plan.nu, plan.b, plan.c):
        layer = frozenset((v[0], v[1]) for v in bottom_slice(piece)[0])
        for comp in connected_components(SkewShape(layer, 2)):
            m = meet(comp)
            nu0.append(normalize(comp))
            b.append((bj[0] + m[0], bj[1] + m[1]))
            c.append((cj[0] + m[0], cj[1] + m[1]))
    return RightFreeConfig(tuple(nu0), tuple(b), tuple(c))


@dataclass(frozen=True)
class LemmaReport:
    """Structural conclusions for minimal configurations, evaluated on one config.

    ``height_sum`` compares row counts: ``H(lam0) + 1`` against the total
    number of occupied rows of the pieces.
    """

    socle_lambda_mu: bool
    socle_mu_lambda: bool
    rows_x_cover: bool
    rows_y_cover: bool
    height_lambda: int
    height_mu: int
    row_count_sum: int
    height_sum: bool
    height_order: bool
    top_row_containment: bool
    failed: tuple[str, ...] = field(default=())


def check_minimal_config_lemmas(cfg: RightFreeConfig) -> LemmaReport:
    lam, mu = cfg.lam0, cfg.mu0
    h_lam = height(lam) if lam else -1
    h_mu = height(mu) if mu else -1
    xrows, yrows = rows(cfg.X), rows(cfg.Y)
    row_sum = sum(len({v[1] for v in s}) for s in cfg.nu0)
    checks = {
        "(a) Soc(lam0) & mu0 empty": not (socle(lam) & mu),
        "(a) Soc(mu0) & lam0 empty": not (socle(mu) & lam),
        "(b) rows of X cover 0..H(lam0)": all(r in xrows for r in range(h_lam + 1)),
        "(b) rows of Y cover 0..H(mu0)": all(r in yrows for r in range(h_mu + 1)),
        "height sum": h_lam + 1 == row_sum,
        "H(mu0) <= H(lam0)": h_mu <= h_lam,
        "top row containment": row(lam, h_mu) <= row(mu, h_mu),
    }
    vals = list(checks.values())
    return LemmaReport(vals[0], vals[1], vals[2], vals[3], h_lam, h_mu, row_sum,
                       vals[4], vals[5], vals[6],
                       tuple(k for k, ok in checks.items() if not ok))


# -- exhaustive search --------------------------------------------------------


class _Box:
    """Bitmask encoding of the cells of a w x h box."""

    def __init__(self, w: int, h: int):
        self.w, self.h = w, h
        self.down = {}
        for x in range(w):
            for y in range(h):
                mask = 0
                for x2 in range(x + 1):
                    for y2 in range(y + 1):
                        mask |= 1 << (x2 + w * y2)
                self.down[(x, y)] = mask

    def placements(self, shape) -> list[tuple[Point, int, int]]:
        """(anchor, cell mask, closure mask) for every placement inside the box."""
        mx = max(v[0] for v in shape)
        my = max(v[1] for v in shape)
        out = []
        for ay in range(self.h - my):
            for ax in range(self.w - mx):
                cells = down = 0
                for v in shape:
                    p = (v[0] + ax, v[1] + ay)
                    cells |= 1 << (p[0] + self.w * p[1])
                    down |= self.down[p]
                out.append(((ax, ay), cells, down))
        out.sort()
        return out


@dataclass
class SearchResult:
    witnesses: list[RightFreeConfig]
    candidates_examined: int
    complete: int = 0


def search_small_intersection_report(max_components: int, max_cells: int,
                                     box: tuple[int, int], shards: int = 1, shard: int = 0,
                                     prune: bool = True) -> SearchResult:
    """Enumerate right-free configurations within bounds and keep those of
    small intersection.

    With ``prune`` the c-side search stops as soon as the partial
    intersection reaches the total piece size; ``candidates_examined`` then
    counts visited search nodes. ``complete`` counts configurations placed in
    full; without pruning that is every valid configuration, once.
    """
    w, h = box
    grid = _Box(w, h)
    shapes = [s for k in range(1, max_cells + 1) for s in enumerate_connected_shapes(2, k)]
    places = [grid.placements(s) for s in shapes]
    sizes = [len(s) for s in shapes]
    witnesses = []
    examined = complete = 0

    for combo in shape_multisets(sizes, max_components, max_cells):
        if combo[0] % shards != shard:
            continue
        total = sum(sizes[i] for i in combo)
        ell = len(combo)
        c_order = sorted(range(ell), key=lambda k: -sizes[combo[k]])
        chosen_b = [None] * ell

        def place_c(depth, lam, mu, used, chosen_c):
            nonlocal examined, complete
            examined += 1
            if prune and (lam & mu).bit_count() >= total:
                return
            if depth == ell:
                complete += 1
                if (lam & mu).bit_count() < total:
                    witnesses.append(RightFreeConfig(
                        tuple(shapes[i] for i in combo),
                        tuple(chosen_b[k][0] for k in range(ell)),
                        tuple(chosen_c[k] for k in range(ell))))
                return
            k = c_order[depth]
            for anchor, cells, down in places[combo[k]]:
                if cells & used:
                    continue
                chosen_c[k] = anchor
                place_c(depth + 1, lam, mu | down, used | cells, chosen_c)
            chosen_c[k] = None

        def place_b(k, lam, start):
            if k == ell:
                place_c(0, lam, 0, 0, [None] * ell)
                return
            opts = places[combo[k]]
            lo = start if k and combo[k] == combo[k - 1] else 0
            for idx in range(lo, len(opts)):
                anchor, cells, down = opts[idx]
                if any((cells & pd) or (pc & down) for _, pc, pd in chosen_b[:k]):
                    continue
                chosen_b[k] = (anchor, cells, down)
                place_b(k + 1, lam | down, idx + 1)
            chosen_b[k] = None

        place_b(0, 0, 0)

    witnesses.sort(key=RightFreeConfig.canonical_key)
    return SearchResult(witnesses, examined, complete)


def search_small_intersection(max_components: int, max_cells: int, box: tuple[int, int],
                              shards: int = 1, shard: int = 0) -> list[RightFreeConfig]:
    return search_small_intersection_report(max_components, max_cells, box,
                                            shards, shard).witnesses


__all__ = [
    "ConfigError", "LemmaReport", "RightFreeConfig", "SearchResult", "bottom_config",
    "check_minimal_config_lemmas", "config_leq", "has_small_intersection", "height",
    "row", "row_and_height", "rows", "search_small_intersection",
    "search_small_intersection_report", "socle",
]
