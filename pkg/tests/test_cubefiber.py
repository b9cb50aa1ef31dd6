import pytest

from src.domain import cubefiber
from src.domain.freeprod import AbelianFactor, FiniteFactor, FreeFactor
from src.infrastructure.cubes.point_model import PointModel
from src.infrastructure.cubes.product_model import ProductOfLinesModel
from src.infrastructure.cubes.tree_model import TreeModel
from src.utils.constants import GEOMETRY_GRID, GEOMETRY_LINE
from src.utils.exceptions import IncompleteError, InputError


@pytest.fixture
def line():
    return ProductOfLinesModel(AbelianFactor(0, "a", 1))


@pytest.fixture
def plane():
    return ProductOfLinesModel(AbelianFactor(0, "g", 2))


def test_model_geometry(line, plane) -> None:
    assert line.geometry == GEOMETRY_LINE
    assert plane.geometry == GEOMETRY_GRID
    assert plane.max_dimension == 2


def test_grid_balls(plane) -> None:
    small = cubefiber.ball(plane, 1)
    assert len(small.vertices) == 5
    assert len(small.edges) == 4
    assert small.squares == []
    b = cubefiber.ball(plane, 2)
    assert len(b.vertices) == 13
    assert len(b.edges) == 16
    assert len(b.squares) == 4
    assert len(cubefiber.hyperplanes(b)) == 8


def test_line_and_tree_balls(line) -> None:
    b = cubefiber.ball(line, 2)
    assert len(b.vertices) == 5
    assert len(cubefiber.hyperplanes(b)) == 4
    tree = cubefiber.ball(TreeModel(FreeFactor(0, "x", 2)), 2)
    assert len(tree.vertices) == 17
    assert len(tree.edges) == 16


def test_point_model_is_a_single_vertex() -> None:
    b = cubefiber.ball(PointModel(FiniteFactor.cyclic_group(0, "a", 3)), 4)
    assert b.vertices == [0]
    assert b.edges == []


def test_geodesics_follow_direction_order(line, plane) -> None:
    assert cubefiber.geodesic(plane, (0, 0), (1, 1)) == [(0, 0), (1, 0), (1, 1)]
    assert cubefiber.geodesic(line, (0,), (3,)) == [(0,), (1,), (2,), (3,)]
    assert cubefiber.geodesic(line, (2,), (2,)) == [(2,)]


def test_hyperplane_sides(line) -> None:
    b = cubefiber.ball(line, 3)
    h = cubefiber.hyperplane_of(b, ((0,), (1,)))
    assert h.side((2,)) == "+"
    assert h.side((-1,)) == "-"
    assert cubefiber.separates(h, (0,), (1,))
    assert cubefiber.crosses_path(h, cubefiber.geodesic(line, (-2,), (3,))) == 1
    assert h.complete


def test_hyperplane_of_non_edge(line) -> None:
    b = cubefiber.ball(line, 2)
    with pytest.raises(InputError):
        cubefiber.hyperplane_of(b, ((0,), (2,)))


def test_act(line) -> None:
    assert cubefiber.act(line, (2,), (1,)) == (3,)
    with pytest.raises(InputError):
        cubefiber.act(line, (1, 1), (0,))


def test_vertex_outside_ball(line) -> None:
    b = cubefiber.ball(line, 1)
    with pytest.raises(IncompleteError):
        b.vertex_index((5,))


def test_flag_links_and_helly(plane) -> None:
    b = cubefiber.ball(plane, 2)
    assert cubefiber.check_flag_links(b)
    assert cubefiber.check_helly(cubefiber.ball(plane, 1), cubefiber.hyperplanes(cubefiber.ball(plane, 1))) is None


def test_negative_radius_rejected(line) -> None:
    with pytest.raises(InputError):
        cubefiber.ball(line, -1)
