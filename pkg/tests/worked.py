"""Small hand-checked instances shared by several test modules."""

from gerst.floorplan import FloorPlan
from gerst.gluing import GluingData
from gerst.rightfree import RightFreeConfig
from gerst.shapes import SkewShape, StandardShape

IDEALS = dict(
    I=[(4, 0), (3, 1), (2, 2), (0, 4)],
    J=[(4, 0), (3, 1), (1, 3), (0, 4)],
    K=[(3, 0), (2, 1), (1, 2), (0, 3)],
    L=[(3, 0), (2, 1), (1, 2), (0, 3)],
)


def s3(cells):
    return SkewShape(cells, 3)


def three_piece_plan() -> FloorPlan:
    """An L-shaped piece under two single cells, stacked along a2."""
    nu = (s3({(0, 0, 2), (1, 0, 0), (1, 0, 1), (1, 0, 2)}), s3({(0, 0, 0)}), s3({(0, 0, 0)}))
    b = ((0, 0), (0, 2), (0, 3))
    return FloorPlan(nu, b, b)


def slice_plan() -> FloorPlan:
    """A single cell beside four columns of height two; the second piece is disconnected."""
    col_cells = {(1, 0), (2, 0), (0, 1), (0, 2)}
    nu2 = s3({(x, y, z) for x, y in col_cells for z in (0, 1)})
    nu = (s3({(0, 0, 0)}), nu2)
    b = ((2, 2), (0, 0))
    return FloorPlan(nu, b, b, require_connected=False)


def small_config(c1=(0, 2)) -> RightFreeConfig:
    nu0 = (SkewShape({(0, 1), (1, 1), (1, 0)}, 2),
           SkewShape({(0, 0), (1, 0), (0, 1)}, 2),
           SkewShape({(0, 0)}, 2))
    return RightFreeConfig(nu0, ((0, 4), (2, 2), (4, 0)), (c1, (0, 1), (0, 0)))


def n4_module() -> GluingData:
    """S/I and S/J glued along x1 ~ x3 and x2 ~ x4 with I = (x1,x2)^2 + (x3,x4),
    J = (x1,x2) + (x3,x4)^2."""

    def e(i):
        return tuple(int(k == i) for k in range(4))

    origin = (0,) * 4
    lam = StandardShape({origin, e(0), e(1)}, 4)
    mu = StandardShape({origin, e(2), e(3)}, 4)
    one = SkewShape({origin}, 4)
    return GluingData(lam, mu, (one, one), (e(0), e(1)), (e(2), e(3)))
