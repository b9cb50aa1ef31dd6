import pytest

from src.domain import catalog
from src.domain.blowup import (
    attaching_paths,
    balance,
    balanced_at,
    build_eg_ball,
    check_no_turns,
    check_projection,
    classify_edge,
    fibre_anchor,
)
from src.domain.devball import build_x_ball, cell_position
from src.domain.freeprod import check_small_cancellation
from src.domain.groupcalc import GroupCalculator
from src.infrastructure.cubes.cube_list import build_models
from src.utils.constants import EDGE_HORIZONTAL, EDGE_VERTICAL
from src.utils.exceptions import FibreTruncationError, InputError


def test_point_fibres_reproduce_the_base(dihedral_balanced) -> None:
    bal = dihedral_balanced
    assert bal.k == 0
    assert bal.graph.number_of_nodes() == 14
    assert bal.graph.number_of_edges() == 14
    assert all(path.length == 0 for path in bal.paths.values())
    assert check_projection(bal)
    assert check_no_turns(bal)
    assert balanced_at(bal)


def test_opposite_pairs_of_the_lifted_polygon(dihedral_balanced) -> None:
    bal = dihedral_balanced
    polygon = bal.base.polygons[0]
    pairs = bal.opposite_pairs(polygon)
    assert len(pairs) == 7
    assert all(s1.kind == EDGE_HORIZONTAL and s2.kind == EDGE_HORIZONTAL for s1, s2 in pairs)


def test_forced_subdivision(dihedral_balanced) -> None:
    finer = dihedral_balanced.with_subdivision(2)
    assert finer.graph.number_of_nodes() == 14 + 2 * 14
    assert check_projection(finer)
    extra, again = balance(finer, 4)
    assert extra == 0
    assert again.k == 2
    edge = next(iter(finer.base.edges))
    assert classify_edge(finer, tuple(finer.horizontal_chain(edge)[:2])) == EDGE_HORIZONTAL


def test_attaching_paths_per_vertex(dihedral_balanced) -> None:
    bal = dihedral_balanced
    assert len(attaching_paths(bal, bal.base.base)) == 1
    with pytest.raises(InputError):
        attaching_paths(bal, (5, ()))


def test_surface_attaching_paths_are_geodesic_segments(surface2) -> None:
    base = build_x_ball(surface2, 1, GroupCalculator(surface2))
    eg = build_eg_ball(surface2, build_models(surface2), 1, fibre_radius=4, base=base)
    assert all(path.length == 1 for path in eg.paths.values())
    assert check_no_turns(eg)
    assert check_projection(eg)
    polygon = next(p for p in base.polygons if base.is_closed(p))
    assert len(eg.polygon_sides(polygon)) == 16
    vertex = polygon.vertices[0]
    fibre = eg.fibre(vertex)
    for u, v in eg.graph.edges:
        if u[0] == "f" and v[0] == "f" and u[1] == v[1]:
            assert classify_edge(eg, (u, v)) == EDGE_VERTICAL
            break
    assert fibre.contains(fibre_anchor(eg, vertex, polygon.edges[0]))


def test_fibre_radius_zero_truncates_paths(surface2) -> None:
    base = build_x_ball(surface2, 1, GroupCalculator(surface2))
    with pytest.raises(FibreTruncationError):
        build_eg_ball(surface2, build_models(surface2), 1, fibre_radius=0, base=base)


def test_missing_model_rejected(dihedral) -> None:
    with pytest.raises(InputError):
        build_eg_ball(dihedral, {}, 1)


def _piece_reach(view, polygon):
    """For each X_k sub-edge of the polygon, the longest run starting there lying in another polygon or one X edge."""
    step = view.k + 1
    total = len(polygon) * step
    reach = []
    for i in range(total):
        edges = {polygon.edges[i // step]}
        size = 1
        while size < total - 1:
            candidate = edges | {polygon.edges[((i + size) % total) // step]}
            holders = set.intersection(*(set(view.edge_polygons[e]) for e in candidate))
            if len(candidate) > 1 and len(holders) < 2:
                break
            edges = candidate
            size += 1
        reach.append(size)
    return reach


def _oracle_far_apart(view, polygon, reach, t1, t2):
    if t1 == t2:
        return False
    total = len(polygon) * (view.k + 1)
    a, c = cell_position(view, polygon, t1), cell_position(view, polygon, t2)
    for start, end in ((a, c), (c, a)):
        edge_positions = [p for p in ((start + i) % (2 * total) for i in range((end - start) % (2 * total) + 1)) if p % 2]
        if len(edge_positions) > total - 1:
            continue
        if not edge_positions:
            return False
        first, count, covered = (edge_positions[0] - 1) // 2, 0, 0
        while covered < len(edge_positions):
            covered += reach[(first + covered) % total]
            count += 1
        if count < 4:
            return False
    return True


def _oracle_balance_k(eg, max_k=20):
    closed = [p for p in eg.base.polygons if eg.base.is_closed(p)]
    for k in range(0, max_k + 1, 2):
        candidate = eg.with_subdivision(k)
        view = candidate.x_view()
        if all(
            _oracle_far_apart(view, polygon, reach, s1.projection(), s2.projection())
            for polygon in closed
            for reach in [_piece_reach(view, polygon)]
            for s1, s2 in candidate.opposite_pairs(polygon)
        ):
            return k
    return None


def _eg_ball(p, fibre_radius=4):
    base = build_x_ball(p, 1, GroupCalculator(p))
    return build_eg_ball(p, build_models(p), 1, fibre_radius=fibre_radius, base=base)


def test_balance_matches_far_apart_scan_on_the_surface(surface2) -> None:
    eg = _eg_ball(surface2)
    k, bal = balance(eg, 20)
    assert k == _oracle_balance_k(eg)
    assert bal.k == k
    assert balance(bal, 20)[0] == 0


def test_balance_matches_far_apart_scan_on_random_presentations(rng) -> None:
    checked = 0
    for _ in range(5000):
        p = catalog.random_presentation(rng, relator_count=1, max_length=14, factor_count=4)
        if not p.relators or not check_small_cancellation(p).passed:
            continue
        eg = _eg_ball(p, fibre_radius=8)
        k, bal = balance(eg, 20)
        assert k == _oracle_balance_k(eg), p.fingerprint
        assert balance(bal, 20)[0] == 0
        checked += 1
        if checked == 20:
            break
    assert checked == 20
