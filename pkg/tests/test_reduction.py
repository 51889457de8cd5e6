import random

from worked import s3, slice_plan, three_piece_plan

from gerst.enumeration import enumerate_half_plans, plan_shapes
from gerst.floorplan import FloorPlan, PlanError, canonical_realization, heights
from gerst.reduction import (
    bottom_intersection,
    bottom_size,
    bottom_slice,
    bottom_slice_reduction,
    canonical_intersection,
    prop_main_condition,
    reduce_to_fixpoint,
    verify_height_drop,
)


def _plans(k, seed):
    halves = list(enumerate_half_plans(3, 5, (4, 4), 4))
    for nu, b in random.Random(seed).sample(halves, k):
        plan = FloorPlan(nu, b, b)
        try:
            heights(plan, "b")
        except PlanError:
            continue
        yield plan


def test_slice_example():
    red = bottom_slice_reduction(slice_plan())
    assert red.star_plan.ell == 2
    assert red.eta == (1, 1)
    assert red.star_plan.b == ((1, 0), (0, 1))
    assert red.star_plan.c == ((1, 0), (0, 1))
    assert red.anchors == ((1, 0, 1), (0, 1, 1))


def test_slice_example_fixpoint():
    chain = reduce_to_fixpoint(slice_plan())
    assert [p.size for p in chain] == [9, 4, 0]
    assert chain[-1].ell == 0


def test_bottom_slice_of_column():
    column = s3({(0, 0, 0), (0, 0, 1), (0, 0, 2)})
    bottom, rest = bottom_slice(column)
    assert bottom == {(0, 0, 0)}
    assert rest == [({(0, 0, 0), (0, 0, 1)}, (0, 0, 1))]


def test_three_piece_reduction():
    plan = three_piece_plan()
    red = bottom_slice_reduction(plan)
    assert bottom_size(plan) == 3
    assert red.star_plan.size == plan.size - 3
    assert verify_height_drop(plan)


def test_canonical_intersection_matches_closures():
    for plan in _plans(300, 7):
        real = canonical_realization(plan)
        assert canonical_intersection(plan) == len(real.lam & real.mu)
        lam0 = {v[:2] for v in real.lam if v[2] == 0}
        mu0 = {v[:2] for v in real.mu if v[2] == 0}
        assert bottom_intersection(plan) == len(lam0 & mu0)


def test_height_drop_and_size_on_samples():
    for plan in _plans(300, 8):
        star = bottom_slice_reduction(plan).star_plan
        assert star.size == plan.size - bottom_size(plan)
        assert verify_height_drop(plan)
        assert (canonical_intersection(star)
                <= canonical_intersection(plan) - bottom_intersection(plan))


def test_main_condition_on_half_plans():
    # with c = b both sides coincide, so the bottom layers meet in all of lam0
    for plan in _plans(100, 9):
        assert prop_main_condition(plan)


def test_empty_plan_is_fixpoint():
    empty = FloorPlan((), (), ())
    assert reduce_to_fixpoint(empty) == [empty]
    assert canonical_intersection(empty) == 0


def test_bottom_slice_never_empty():
    for shape in plan_shapes(6):
        bottom, rest = bottom_slice(shape)
        assert bottom
        assert len(bottom) + sum(len(s) for s, _ in rest) == len(shape)


def test_flat_shape_slice():
    flat = s3({(0, 0, 0), (1, 0, 0), (0, 1, 0)})
    assert bottom_slice(flat) == (flat, [])
