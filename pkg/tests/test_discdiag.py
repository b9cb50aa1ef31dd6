from dataclasses import dataclass
from fractions import Fraction
from types import SimpleNamespace
from typing import Tuple

import pytest

from src.domain import discdiag
from src.domain.devball import build_x_ball
from src.domain.discdiag import (
    DiscDiagram,
    appendix_angles,
    boundary_cycle,
    check_gauss_bonnet,
    classify,
    curvatures,
    diagram_from_polygons,
    find_diagram,
    gauss_bonnet,
    greendlinger_witness,
    is_ladder,
    sample_polygon_diagrams,
    shells,
    spurs,
    verify_reduced,
)
from src.domain.groupcalc import GroupCalculator
from src.utils.constants import BRANCH_LADDER, BRANCH_SHELLS_OR_SPURS, BRANCH_SINGLE_CELL
from src.utils.exceptions import InputError, ResourceBoundError, VerificationError


def _diagram(faces, polygons=None, tree_edges=()):
    vertices = {v for f in faces for v in f} | {v for e in tree_edges for v in e}
    return DiscDiagram(
        {v: v for v in sorted(vertices)},
        [tuple(f) for f in faces],
        list(polygons) if polygons is not None else list(range(len(faces))),
        {frozenset(e) for e in tree_edges},
    )


def test_single_square() -> None:
    d = _diagram([(0, 1, 2, 3)])
    assert verify_reduced(d)
    assert classify(d).branch == BRANCH_SINGLE_CELL
    angles = appendix_angles(d)
    assert set(angles.values()) == {Fraction(1, 2)}
    vertex_curvature, face_curvature = curvatures(d, angles)
    assert vertex_curvature == {v: Fraction(1, 2) for v in range(4)}
    assert face_curvature == [0]
    assert gauss_bonnet(d, angles) == 2
    assert greendlinger_witness(d) == 0
    assert boundary_cycle(d) == [0, 1, 2, 3]


def test_two_squares_form_a_ladder() -> None:
    d = _diagram([(0, 1, 2, 3), (2, 1, 4, 5)])
    result = classify(d)
    assert result.branch == BRANCH_LADDER
    assert result.ladder == [("face", 0), ("face", 1)]
    check_gauss_bonnet(d, appendix_angles(d))
    assert boundary_cycle(d) == [0, 1, 4, 5, 2, 3]


def test_mirror_faces_are_not_reduced() -> None:
    d = _diagram([(0, 1, 2, 3), (2, 1, 4, 5)], polygons=[7, 7])
    assert not verify_reduced(d)
    with pytest.raises(VerificationError):
        classify(d)


def test_gauss_bonnet_holds_for_any_angles() -> None:
    d = _diagram([(0, 1, 2, 3), (2, 1, 4, 5)])
    angles = {corner: Fraction(1, 3) for corner in appendix_angles(d)}
    assert gauss_bonnet(d, angles) == 2


def test_missing_angle_rejected() -> None:
    d = _diagram([(0, 1, 2, 3)])
    with pytest.raises(InputError):
        curvatures(d, {})


def test_sphere_is_rejected() -> None:
    with pytest.raises(VerificationError):
        _diagram([(0, 1, 2), (0, 2, 1)]).validate()


def test_dart_conflict_is_rejected() -> None:
    with pytest.raises(VerificationError):
        _diagram([(0, 1, 2), (0, 1, 3)]).validate()


def test_spur_on_a_square() -> None:
    d = _diagram([(0, 1, 2, 3)], tree_edges=[(3, 4)])
    assert spurs(d) == [4]
    assert is_ladder(d) == [("face", 0), ("edge", (3, 4))]
    check_gauss_bonnet(d, appendix_angles(d))


def test_tree_with_three_spurs() -> None:
    d = _diagram([], tree_edges=[(0, 1), (0, 2), (0, 3)])
    result = classify(d)
    assert result.branch == BRANCH_SHELLS_OR_SPURS
    assert result.spurs == [1, 2, 3]
    assert shells(d) == []
    assert gauss_bonnet(d, {}) == 2


def test_polygon_of_the_ball_as_a_diagram(dihedral_ball) -> None:
    d = diagram_from_polygons(dihedral_ball, [0])
    assert d.area == 1
    assert len(d.vertices) == 14
    assert gauss_bonnet(d, appendix_angles(d)) == 2
    assert classify(d).branch == BRANCH_SINGLE_CELL


def test_find_diagram_fills_the_polygon(dihedral_ball) -> None:
    loop = list(dihedral_ball.polygons[0].vertices)
    d = find_diagram(dihedral_ball, loop, max_area=2)
    assert d is not None
    assert d.area == 1
    assert d.face_polygons == [0]
    assert greendlinger_witness(d) == 0


def test_find_diagram_degenerate_loops(dihedral_ball) -> None:
    polygon = dihedral_ball.polygons[0]
    backtrack = [polygon.vertices[0], polygon.vertices[1]]
    d = find_diagram(dihedral_ball, backtrack, max_area=1)
    assert d.area == 0
    assert len(d.tree_edges) == 1
    assert find_diagram(dihedral_ball, [], max_area=1).area == 0
    with pytest.raises(InputError):
        find_diagram(dihedral_ball, [polygon.vertices[0]])
    with pytest.raises(InputError):
        find_diagram(dihedral_ball, [polygon.vertices[0], polygon.vertices[2]])


def test_find_diagram_respects_state_bound(dihedral_ball) -> None:
    loop = list(dihedral_ball.polygons[0].vertices)
    with pytest.raises(ResourceBoundError):
        find_diagram(dihedral_ball, loop, max_area=2, max_states=1)


@dataclass
class _Square:
    vertices: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.vertices)


def _twin_squares():
    """Two polygons on the same square a b c d."""
    cycle = ("a", "b", "c", "d")
    edges = {frozenset((cycle[i], cycle[(i + 1) % 4])) for i in range(4)}
    return SimpleNamespace(
        vertices={v: SimpleNamespace(id=i) for i, v in enumerate(cycle)},
        edges=edges,
        edge_polygons={e: [0, 1] for e in edges},
        polygons=[_Square(cycle), _Square(cycle)],
        base="a",
    )


def test_find_diagram_backtracks_past_refused_fillings(monkeypatch) -> None:
    refused = []

    def refuse_first(d):
        if not refused:
            refused.append(d.face_polygons)
            return False
        return verify_reduced(d)

    monkeypatch.setattr(discdiag, "verify_reduced", refuse_first)
    d = find_diagram(_twin_squares(), ["a", "b", "c", "d"], max_area=1)
    assert refused == [[0]]
    assert d is not None
    assert d.area == 1
    assert d.face_polygons == [1]


def test_find_diagram_gives_up_when_every_filling_is_refused(monkeypatch) -> None:
    monkeypatch.setattr(discdiag, "verify_reduced", lambda d: False)
    assert find_diagram(_twin_squares(), ["a", "b", "c", "d"], max_area=1) is None


def test_gauss_bonnet_on_sampled_surface_diagrams(surface2, rng) -> None:
    b = build_x_ball(surface2, 2, GroupCalculator(surface2))
    closed = [p.id for p in b.polygons if b.is_closed(p)]
    diagrams, _ = sample_polygon_diagrams(b, 200, rng, closed)
    assert len(diagrams) == 200
    for d in diagrams:
        assert verify_reduced(d)
        assert gauss_bonnet(d, appendix_angles(d)) == 2
        assert classify(d).branch in (BRANCH_SINGLE_CELL, BRANCH_LADDER, BRANCH_SHELLS_OR_SPURS)
    assert any(d.area >= 3 for d in diagrams)


def test_sampling_a_single_polygon_ball(dihedral_ball, rng) -> None:
    diagrams, skipped = sample_polygon_diagrams(dihedral_ball, 10, rng)
    assert [d.face_polygons for d in diagrams] == [[0]]
    assert skipped == 0
