import pytest

from src.domain import cubefiber
from src.domain import walls as wall_module
from src.domain.devball import build_x_ball, cell_at, cell_position, edge_cell
from src.domain.dualcc import crossing_configurations, dual, restrict
from src.domain.freeprod import AbelianFactor
from src.domain.groupcalc import GroupCalculator
from src.domain.walls import (
    Gallery,
    GalleryVerdict,
    PolygonWithDoors,
    canonical_decomposition,
    check_gallery,
    core_nodes,
    crosses,
    door_tree,
    edge_kind,
    eg_edge_class,
    eg_walls,
    fibre_walls,
    glued_boundaries,
    hypercarrier,
    opposite_class_x,
    two_piece_audit,
    wall_inventory,
    wall_side,
    with_doors,
    x_classes,
)
from src.infrastructure.cubes.product_model import ProductOfLinesModel
from src.utils.constants import EDGE_HORIZONTAL, WALL_FIRST_TYPE, WALL_LIFTED_X
from src.utils.exceptions import IncompleteError, InputError, VerificationError


@pytest.fixture
def view(dihedral_balanced):
    return dihedral_balanced.x_view()


def test_opposition_classes_of_the_fourteen_gon(view) -> None:
    classes = x_classes(view)
    assert len(classes) == 7
    for cls in classes:
        assert len(cls.cells) == 2
        assert len(cls.gallery.polygons) == 1
        assert check_gallery(view, cls.gallery).passed


def test_opposition_needs_an_edge_cell(view) -> None:
    polygon = view.polygons[0]
    with pytest.raises(InputError):
        opposite_class_x(view, ("v", polygon.vertices[0]))


def test_adjacent_doors_are_not_a_gallery(view) -> None:
    polygon = view.polygons[0]
    pwd = PolygonWithDoors(0, (edge_cell(view, polygon, 0), edge_cell(view, polygon, 1)))
    verdict = check_gallery(view, Gallery([pwd]))
    assert not verdict.passed
    assert verdict.violation == "far_apart"


def test_hypercarrier_of_a_single_polygon(view) -> None:
    polygon = view.polygons[0]
    cls = opposite_class_x(view, edge_cell(view, polygon, 0))
    carrier = hypercarrier(view, cls.gallery)
    assert carrier.polygons == (0,)
    assert carrier.euler_characteristic == 1
    assert len(carrier.vertices) == 14
    assert carrier.glued_cells == 28


def test_canonical_decomposition_without_pieces(view) -> None:
    polygon = view.polygons[0]
    pwd = with_doors(view, 0, edge_cell(view, polygon, 7), edge_cell(view, polygon, 0))
    dec = canonical_decomposition(view, pwd)
    assert dec.door1 == (0,)
    assert dec.door2 == (7,)
    assert dec.p1 == dec.p2 == dec.p1_prime == dec.p2_prime == ()
    assert dec.a == (1, 2, 3, 4, 5, 6)
    assert dec.a_prime == (8, 9, 10, 11, 12, 13)


def test_door_tree_and_two_piece_audit(view) -> None:
    polygon = view.polygons[0]
    door = edge_cell(view, polygon, 0)
    cls = opposite_class_x(view, door)
    tree = door_tree(view, cls.gallery, door)
    assert tree.is_tree
    assert tree.graph.number_of_edges() == 1
    audit = two_piece_audit(view, cls.gallery)
    assert audit.passed
    assert audit.checked == 0


def test_walls_of_the_balanced_fourteen_gon(dihedral_balanced) -> None:
    bal = dihedral_balanced
    core = core_nodes(bal, 1)
    assert len(core) == 3
    walls = eg_walls(bal, core)
    assert len(walls) == 4
    assert all(w.variant == WALL_LIFTED_X for w in walls)
    assert all(w.separates for w in walls)
    assert wall_inventory(walls)[WALL_LIFTED_X]["total"] == 4
    nodes = list(bal.graph.nodes)
    assert crosses(walls[0], walls[1], nodes)
    for w in walls:
        u, v = tuple(next(iter(w.edges)))
        assert wall_side(w, u) != wall_side(w, v)
        assert edge_kind(bal, frozenset((u, v))) == EDGE_HORIZONTAL


def test_edge_class_of_a_lifted_edge(dihedral_balanced) -> None:
    bal = dihedral_balanced
    u, v = next(iter(bal.graph.edges))
    cls = eg_edge_class(bal, (u, v))
    assert len(cls.edges) == 2
    assert len(cls.hops) == 1
    with pytest.raises(InputError):
        eg_edge_class(bal, (u, u))


def test_unlabelled_vertex(dihedral_balanced) -> None:
    bal = dihedral_balanced
    wall = eg_walls(bal, core_nodes(bal, 1))[0]
    with pytest.raises(IncompleteError):
        wall_side(wall, ("f", "elsewhere", 0))


def test_fibre_walls_of_a_line() -> None:
    cb = cubefiber.ball(ProductOfLinesModel(AbelianFactor(0, "a", 1)), 2)
    walls = fibre_walls(cb)
    assert len(walls) == 4
    assert all(w.labels(cb.vertices) for w in walls)
    assert not crosses(walls[0], walls[1])
    inventory = wall_inventory(walls)
    assert inventory[WALL_FIRST_TYPE] == {"total": 4, "complete": 4, "incomplete": 0}


def test_hypercarrier_rejects_polygons_meeting_away_from_doors(surface2, monkeypatch) -> None:
    b = build_x_ball(surface2, 1, GroupCalculator(surface2))
    shared = sorted((e for e, pids in b.edge_polygons.items() if len(pids) >= 2), key=lambda e: b.edges[e].id)
    edge = shared[0]
    door = ("v", b.edges[edge].ends[0])
    pwds = []
    for pid in b.edge_polygons[edge][:2]:
        polygon = b.polygons[pid]
        opposite = cell_at(b, polygon, cell_position(b, polygon, door) + b.sides(polygon))
        pwds.append(with_doors(b, pid, door, opposite))
    gallery = Gallery(pwds)
    preimages = glued_boundaries(b, gallery)
    assert len(preimages[("e", edge, 0)]) == 2
    assert len(preimages[door]) == 1
    monkeypatch.setattr(wall_module, "check_gallery", lambda *_: GalleryVerdict(True))
    with pytest.raises(VerificationError, match="away from their doors"):
        hypercarrier(b, gallery)


def test_fibre_walls_project_to_their_vertex() -> None:
    cb = cubefiber.ball(ProductOfLinesModel(AbelianFactor(0, "a", 2)), 2)
    vertex = (0, ())
    walls = fibre_walls(cb, vertex)
    assert all(w.projection == frozenset({vertex}) for w in walls)
    found = crossing_configurations(dual(restrict(walls, cb.vertices)))
    assert found
    assert all(conf.certificate == vertex and conf.certificate_kind == "fibre" for conf in found)
