import pytest

from src.domain import dualcc
from src.domain.dualcc import (
    ProfileReport,
    check_distances,
    check_flag_links,
    check_median,
    configuration_types,
    crossing_configurations,
    dimension,
    dual,
    max_crossing_family,
    properness_profile,
    restrict,
    restrict_ball,
    stabilization,
    word_length,
)
from src.domain.walls import Wall, core_nodes, eg_walls
from src.utils.constants import (
    PROFILE_IN_CORE,
    PROFILE_OUTSIDE,
    PROFILE_UNDECIDED,
    WALL_FIRST_TYPE,
    WALL_LIFTED_X,
)
from src.utils.exceptions import InputError, ResourceBoundError, UndecidedError, VerificationError

PATH = ["a", "b", "c", "d"]


def _wall(wall_id, plus, vertices, projection=()):
    return Wall(wall_id, WALL_LIFTED_X, frozenset(), {v: v in plus for v in vertices}, True,
                projection=frozenset(projection))


def _path_walls():
    return [_wall(0, {"a"}, PATH), _wall(1, {"a", "b"}, PATH), _wall(2, {"a", "b", "c"}, PATH)]


def _tripod_walls(projections=((), (), ())):
    plus = [{"a", "b"}, {"a", "c"}, {"a", "d"}]
    return [_wall(i, p, PATH, projections[i]) for i, p in enumerate(plus)]


def test_crossing_pair_gives_a_square() -> None:
    vertices = ["p", "q", "r", "s"]
    fw = restrict([_wall(0, {"p", "q"}, vertices), _wall(1, {"p", "s"}, vertices)], vertices)
    c = dual(fw)
    assert len(c.vertices) == 4
    assert c.graph.number_of_edges() == 4
    assert dimension(c) == 2
    assert max_crossing_family(c) == 2
    assert check_median(c)
    assert check_distances(c)
    assert check_flag_links(c)


def test_nested_walls_give_a_path() -> None:
    fw = restrict(_path_walls(), PATH)
    assert fw.distance("a", "d") == 3
    assert fw.distance("b", "c") == 1
    c = dual(fw)
    assert len(c.vertices) == 4
    assert c.graph.number_of_edges() == 3
    assert dimension(c) == 1
    assert max_crossing_family(c) == 1
    assert crossing_configurations(c) == []


def test_restrict_merges_and_drops() -> None:
    walls = _path_walls()
    duplicate = _wall(3, {"b", "c", "d"}, PATH)
    constant = _wall(4, set(PATH), PATH)
    unlabelled = Wall(5, WALL_LIFTED_X, frozenset(), {"a": True, "b": False}, True)
    fw = restrict([walls[0], duplicate, walls[1], walls[2], constant, unlabelled], PATH)
    assert [w.id for w in fw.walls] == [0, 1, 2]
    assert fw.multiplicity == [2, 1, 1]
    with pytest.raises(InputError):
        restrict(walls, [])


def test_three_crossing_walls_fill_a_cube() -> None:
    fw = restrict(_tripod_walls(), PATH)
    c = dual(fw)
    assert len(c.vertices) == 8
    assert dimension(c) == 3
    assert max_crossing_family(c) == 3
    assert check_flag_links(c)
    assert check_median(c)
    with pytest.raises(ResourceBoundError):
        dual(fw, max_vertices=5)


def test_configurations_and_certificates() -> None:
    with pytest.raises(VerificationError, match="no common projection vertex"):
        crossing_configurations(dual(restrict(_tripod_walls(), PATH)))
    pair = crossing_configurations(dual(restrict(_tripod_walls()[:2], PATH)))
    assert [conf.walls for conf in pair] == [(0, 1)]
    assert pair[0].certificate is None
    projected = _tripod_walls(({"x", "y"}, {"y", "z"}, {"y"}))
    conf = crossing_configurations(dual(restrict(projected, PATH)))[0]
    assert conf.certificate == "y"
    assert conf.certificate_kind == "polygon"
    types = configuration_types([conf])
    assert types == {(3, (WALL_LIFTED_X,) * 3, "polygon"): 1}
    assert stabilization(1, types, types).stable
    assert not stabilization(1, types, {}).stable


def test_configuration_errors() -> None:
    disjoint = _tripod_walls(({"x"}, {"y"}, {"z"}))
    c = dual(restrict(disjoint, PATH))
    with pytest.raises(VerificationError):
        crossing_configurations(c)
    with pytest.raises(ResourceBoundError):
        crossing_configurations(dual(restrict(_tripod_walls(), PATH)), max_clique=2)


def test_profile_monotonicity() -> None:
    assert ProfileReport([], {0: 0, 1: 1, 2: 1}).monotone
    assert not ProfileReport([], {1: 2, 2: 1}).monotone


def test_dual_over_the_balanced_fourteen_gon(dihedral_balanced) -> None:
    bal = dihedral_balanced
    walls = eg_walls(bal, core_nodes(bal, 1))
    fw = restrict_ball(bal, walls, 1)
    assert len(fw.vertices) == 3
    assert len(fw.walls) == 2
    c = dual(fw)
    assert len(c.vertices) == 3
    assert c.graph.number_of_edges() == 2
    assert dimension(c) == 1
    assert check_median(c)
    assert check_distances(c)
    assert check_flag_links(c)


def test_whole_fourteen_gon_dual_is_a_cube(dihedral_balanced) -> None:
    bal = dihedral_balanced
    walls = eg_walls(bal, core_nodes(bal, 7))
    assert len(walls) == 7
    fw = restrict_ball(bal, walls, 7)
    assert len(fw.vertices) == 14
    c = dual(fw)
    assert len(c.vertices) == 128
    assert dimension(c) == 7
    assert max_crossing_family(c) == 7


def test_profile_of_the_identity(dihedral_balanced) -> None:
    bal = dihedral_balanced
    fw = restrict_ball(bal, eg_walls(bal, core_nodes(bal, 7)), 7)
    x = fw.vertices[0]
    report = properness_profile(bal, fw, x, [()])
    assert report.rows[0].distance == 0
    assert report.rows[0].in_core
    assert list(report.to_frame().columns) == ["element", "length", "wall_distance", "status"]
    assert word_length(bal, ((0, 1), (1, 1))) == 2
    with pytest.raises(InputError):
        properness_profile(bal, fw, ("f", "elsewhere", 0), [])


def test_profile_keeps_undecided_rows_apart(dihedral_balanced, monkeypatch) -> None:
    bal = dihedral_balanced
    fw = restrict_ball(bal, eg_walls(bal, core_nodes(bal, 7)), 7)
    x = fw.vertices[0]

    def undecided_for_long_words(b, g, node):
        if len(g) > 1:
            raise UndecidedError("search bound hit")
        return None if g else node

    monkeypatch.setattr(dualcc, "translate", undecided_for_long_words)
    report = properness_profile(bal, fw, x, [(), ((0, 1),), ((0, 1), (1, 1))])
    assert [r.status for r in report.rows] == [PROFILE_IN_CORE, PROFILE_OUTSIDE, PROFILE_UNDECIDED]
    assert report.undecided == 1
    assert report.outside == 1
    assert report.shell_minima == {0: 0}


def test_fibre_families_are_certified_by_their_vertex() -> None:
    plus = [{"a", "b"}, {"a", "c"}, {"a", "d"}]
    walls = [Wall(i, WALL_FIRST_TYPE, frozenset(), {v: v in p for v in PATH}, True, projection=frozenset({"v"}))
             for i, p in enumerate(plus)]
    conf = crossing_configurations(dual(restrict(walls, PATH)))[0]
    assert conf.walls == (0, 1, 2)
    assert conf.certificate == "v"
    assert conf.certificate_kind == "fibre"
