from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gerst.enumeration import enumerate_connected_shapes
from gerst.shapes import (
    HeightPair,
    ShapeError,
    SkewShape,
    StandardShape,
    closure_leq,
    connected_components,
    contains_cell,
    find_unidirectional_path,
    height_functions,
    height_pair_violation,
    ideal_to_shape,
    is_connected,
    is_skew_shape,
    meet,
    normalize,
    rectangle,
    shape_from_heights,
    shape_to_ideal,
    translation_equivalent,
)


# -- strategies ---------------------------------------------------------------


@st.composite
def standard_shapes(draw, n=2, side=5, max_gens=4):
    """Downward closure of a few random cells; possibly empty."""
    pts = draw(st.lists(st.tuples(*[st.integers(0, side - 1)] * n), max_size=max_gens))
    return closure_leq(pts, n)


@st.composite
def skew_shapes(draw, n=2, side=5):
    outer = draw(standard_shapes(n, side))
    inner_pts = draw(st.lists(st.sampled_from(sorted(outer)), max_size=3)) if outer else []
    inner = closure_leq(inner_pts, n)
    return SkewShape(outer - inner, n)


@st.composite
def nonempty_skew(draw, n=2, side=5):
    s = draw(skew_shapes(n, side))
    if not s:
        s = SkewShape({(0,) * n}, n)
    return s


# -- basics ---------------------------------------------------------------------


def test_standard_shape_rejects_holes():
    with pytest.raises(ShapeError):
        StandardShape({(0, 0), (1, 1)}, 2)


def test_skew_shape_rejects_non_convex():
    # (0,0) and (2,0) without (1,0)
    with pytest.raises(ShapeError):
        SkewShape({(0, 0), (2, 0)}, 2)


def test_negative_coordinates_rejected():
    with pytest.raises(ShapeError):
        SkewShape({(-1, 0)}, 2)


def test_normalize_and_translation_equivalence():
    s = SkewShape({(2, 3), (3, 3)}, 2)
    assert normalize(s) == {(0, 0), (1, 0)}
    assert translation_equivalent(s, {(0, 5), (1, 5)})
    assert not translation_equivalent(s, {(0, 0), (0, 1)})


@given(skew_shapes(n=3, side=4))
def test_closure_idempotent(s):
    once = closure_leq(s, 3)
    assert closure_leq(once, 3) == once
    assert s <= once


@given(skew_shapes(n=2, side=6))
def test_closure_idempotent_plane(s):
    once = closure_leq(s, 2)
    assert closure_leq(once, 2) == once


@given(skew_shapes(n=3, side=4))
def test_outer_minus_inner(s):
    assert SkewShape(s.outer - s.inner, 3) == s


# -- components -----------------------------------------------------------------


@given(skew_shapes(n=3, side=4), st.randoms(use_true_random=False))
def test_components_deterministic_under_shuffle(s, rnd):
    cells = list(s)
    rnd.shuffle(cells)
    assert connected_components(cells) == connected_components(s)


@given(skew_shapes(n=2, side=6))
def test_components_partition_and_order(s):
    comps = connected_components(s)
    assert frozenset().union(*comps) == s if comps else not s
    assert sum(len(c) for c in comps) == len(s)
    assert all(is_connected(c) for c in comps)
    meets = [meet(c) for c in comps]
    assert meets == sorted(meets)


def test_two_components_example():
    s = SkewShape({(0, 1), (1, 0)}, 2)
    comps = connected_components(s)
    assert [sorted(c) for c in comps] == [[(0, 1)], [(1, 0)]]


# -- rectangles and paths ---------------------------------------------------------


@settings(max_examples=1000)
@given(nonempty_skew(n=2, side=7), st.data())
def test_rectangle_containment(s, data):
    cells = sorted(s)
    r = data.draw(st.sampled_from(cells))
    above = [v for v in cells if v[0] >= r[0] and v[1] >= r[1]]
    t = data.draw(st.sampled_from(above))
    assert rectangle(r, t) <= s


@settings(max_examples=200)
@given(nonempty_skew(n=3, side=4), st.data())
def test_rectangle_containment_3d(s, data):
    cells = sorted(s)
    r = data.draw(st.sampled_from(cells))
    t = data.draw(st.sampled_from([v for v in cells if all(a >= b for a, b in zip(v, r))]))
    box = product(*(range(a, b + 1) for a, b in zip(r, t)))
    assert all(v in s for v in box)


def _assert_unidirectional(path, sigma, r, s):
    assert path[0] == r and path[-1] == s
    assert set(path) <= sigma
    assert set(path) <= rectangle(r, s)
    dx = 1 if s[0] >= r[0] else -1
    dy = 1 if s[1] >= r[1] else -1
    for p, q in zip(path, path[1:]):
        assert (q[0] - p[0], q[1] - p[1]) in {(dx, 0), (0, dy)}


@settings(max_examples=500)
@given(nonempty_skew(n=2, side=7), st.data())
def test_unidirectional_path(s, data):
    comp = data.draw(st.sampled_from(connected_components(s)))
    cells = sorted(comp)
    r = data.draw(st.sampled_from(cells))
    t = data.draw(st.sampled_from(cells))
    _assert_unidirectional(find_unidirectional_path(comp, r, t), comp, r, t)


def test_unidirectional_path_rectangle():
    sigma = SkewShape(product(range(3), range(2)), 2)
    path = find_unidirectional_path(sigma, (0, 0), (2, 1))
    assert len(path) == 4
    _assert_unidirectional(path, sigma, (0, 0), (2, 1))


def test_unidirectional_path_errors():
    with pytest.raises(ShapeError):
        find_unidirectional_path({(0, 0), (1, 0)}, (0, 0), (3, 3))
    with pytest.raises(ShapeError):
        find_unidirectional_path({(0, 1), (1, 0)}, (0, 1), (1, 0))


def _random_walk_up(rng, x0, x1, y0, y1, x):
    """A unit-step path from row y0 to row y1 that wanders inside the box."""
    path = [(x, y0)]
    y = y0
    while y < y1:
        move = rng.choice(["up", "left", "right", "up"])
        if move == "left" and x > x0:
            x -= 1
        elif move == "right" and x < x1:
            x += 1
        else:
            y += 1
        path.append((x, y))
    return path


@settings(max_examples=1000)
@given(nonempty_skew(n=2, side=7), st.data(), st.randoms(use_true_random=False))
def test_path_crossing(s, data, rng):
    comp = data.draw(st.sampled_from(connected_components(s)))
    cells = sorted(comp)
    r = data.draw(st.sampled_from(cells))
    t = data.draw(st.sampled_from([v for v in cells if v[0] >= r[0] and v[1] >= r[1]]))
    (x0, y0), (x1, y1) = r, t
    # rectangle R lies in the shape; the NE path spans it from left to right
    horizontal = find_unidirectional_path(comp, (x0, y0), (x1, y1))
    assert horizontal[0][0] == x0 and horizontal[-1][0] == x1
    # any path spanning R from bottom to top meets it
    x = data.draw(st.integers(x0, x1))
    vertical = _random_walk_up(rng, x0, x1, y0, y1, x)
    assert set(vertical) <= rectangle(r, t) <= comp
    assert set(horizontal) & set(vertical)
    # also with a second unidirectional path, which may run north-west
    xa, xb = data.draw(st.integers(x0, x1)), data.draw(st.integers(x0, x1))
    other = find_unidirectional_path(comp, (xa, y0), (xb, y1))
    assert set(horizontal) & set(other)


# -- height functions ---------------------------------------------------------------


def _round_trip(shape):
    hp = height_functions(shape)
    assert height_pair_violation(hp, allow_empty=False) is None
    assert shape_from_heights(hp) == shape
    for v in product(*(range(m + 2) for m in map(max, zip(*shape)))):
        assert contains_cell(hp, v[:2], v[2]) == (v in shape)


def height_round_trip_connected(max_cells=8):
    total = 0
    for k in range(1, max_cells + 1):
        for shape in enumerate_connected_shapes(3, k):
            _round_trip(shape)
            total += 1
    return total


@pytest.mark.slow
def test_height_round_trip_exhaustive():
    assert height_round_trip_connected(8) == 1 + 3 + 9 + 32 + 117 + 454 + 1793 + 7231


@given(nonempty_skew(n=3, side=4))
def test_height_round_trip_random(s):
    _round_trip(normalize(s))


def test_height_round_trip_empty():
    assert shape_from_heights(HeightPair()) == frozenset()
    assert height_functions(frozenset()) == HeightPair()


def _tables(points, top):
    for values in product(range(top + 1), repeat=len(points)):
        yield dict(zip(points, values))


def height_pairs_bijective(side=2, top=2):
    """Every height pair on a small grid either round-trips through a shape
    or is rejected; every rejected pair differs from the heights of its cells."""
    grid = list(product(range(side), repeat=2))
    accepted = 0
    for up in _tables(grid, top):
        for low in _tables(grid, top):
            hp = HeightPair(up, low)
            try:
                shape = shape_from_heights(hp)
            except ShapeError:
                cells = {(a1, a2, z) for (a1, a2), h in hp.upper.items()
                         for z in range(hp.low((a1, a2)), h)}
                ok = (is_skew_shape(cells) and (not cells or not any(meet(cells)))
                      and height_functions(cells) == hp)
                assert not ok, hp
                continue
            assert height_functions(shape) == hp
            accepted += 1
    return accepted


def _box_shapes(side=2):
    """Abstract skew shapes (and the empty shape) inside a cube, as outer minus inner."""
    box = list(product(range(side), repeat=3))
    found = set()
    for outer_mask in range(1 << len(box)):
        outer = closure_leq([v for k, v in enumerate(box) if outer_mask >> k & 1], 3)
        for inner_mask in range(1 << len(box)):
            pts = [v for k, v in enumerate(box) if inner_mask >> k & 1]
            if set(pts) <= outer:
                cells = outer - closure_leq(pts, 3)
                if not cells or not any(meet(cells)):
                    found.add(frozenset(cells))
    return found


def test_height_pairs_enumerated():
    # accepted pairs on the 2 x 2 grid with values <= 2 are exactly the
    # abstract skew shapes inside the 2 x 2 x 2 cube
    assert height_pairs_bijective() == len(_box_shapes()) == 73


def test_non_abstract_height_pair_rejected():
    # a single cell at (1, 0, 0) satisfies the pointwise conditions
    with pytest.raises(ShapeError, match="abstract"):
        shape_from_heights(HeightPair({(0, 0): 1, (1, 0): 1}, {(0, 0): 1}))


def test_height_violations_named():
    assert height_pair_violation(HeightPair({(0, 0): 1}, {(0, 0): 2})).startswith("(iii)")
    assert height_pair_violation(HeightPair({(1, 0): 1})).startswith("(iv)")
    assert height_pair_violation(HeightPair(), allow_empty=False).startswith("(i)")


def test_height_functions_need_three_dims():
    with pytest.raises(ShapeError):
        height_functions({(0, 0)})


# -- ideals -------------------------------------------------------------------------


def test_ideal_to_shape_example():
    lam = ideal_to_shape([(4, 0), (3, 1), (2, 2), (0, 4)], 2)
    assert len(lam) == 4 + 3 + 2 + 2
    assert sorted(shape_to_ideal(lam, 2)) == [(0, 4), (2, 2), (3, 1), (4, 0)]


def test_ideal_infinite_colength():
    with pytest.raises(ShapeError):
        ideal_to_shape([(1, 1)], 2)


@given(standard_shapes(n=3, side=4))
def test_ideal_round_trip(lam):
    gens = shape_to_ideal(lam, 3)
    assert ideal_to_shape(gens, 3) == lam

