import networkx as nx
import orjson
import pytest

from src.domain.discdiag import DiscDiagram, appendix_angles
from src.domain.dualcc import dual, restrict
from src.domain.walls import Wall
from src.infrastructure.exporters.csv_exporter import configurations_frame, inventory_frame, write_frame
from src.infrastructure.exporters.dot_exporter import dual_dot, graph_to_dot, walls_dot, write_dot, x_ball_dot
from src.infrastructure.exporters.json_exporter import (
    diagram_from_payload,
    diagram_payload,
    dual_payload,
    to_bytes,
    write_json,
    x_ball_payload,
)
from src.infrastructure.exporters.svg_exporter import render_diagram, render_graph
from src.utils.constants import WALL_LIFTED_X
from src.utils.exceptions import InputError


@pytest.fixture
def square():
    return DiscDiagram({v: v for v in range(4)}, [(0, 1, 2, 3)], [0], set())


@pytest.fixture
def square_dual():
    vertices = ["p", "q", "r", "s"]
    walls = [
        Wall(0, WALL_LIFTED_X, frozenset(), {v: v in {"p", "q"} for v in vertices}, True),
        Wall(1, WALL_LIFTED_X, frozenset(), {v: v in {"p", "s"} for v in vertices}, True),
    ]
    return dual(restrict(walls, vertices))


def test_json_bytes_are_sorted_and_indented() -> None:
    assert to_bytes({"b": 1, "a": [1, 2]}) == b'{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}'


def test_write_json(tmp_path) -> None:
    path = write_json(tmp_path / "nested" / "out.json", {"x": 1})
    assert orjson.loads(path.read_bytes()) == {"x": 1}
    assert path.read_bytes().endswith(b"\n")


def test_x_ball_payload(dihedral_ball) -> None:
    payload = x_ball_payload(dihedral_ball)
    assert payload["radius"] == 1
    assert len(payload["vertices"]) == 14
    assert payload["polygons"][0]["closed"]
    assert len(payload["polygons"][0]["edges"]) == 14


def test_diagram_payload_round_trip(square) -> None:
    payload = orjson.loads(to_bytes(diagram_payload(square)))
    rebuilt = diagram_from_payload(payload)
    assert rebuilt.faces == [(0, 1, 2, 3)]
    assert rebuilt.face_polygons == [0]


def test_malformed_diagram_payload() -> None:
    with pytest.raises(InputError):
        diagram_from_payload({"faces": []})
    with pytest.raises(InputError):
        diagram_from_payload({"vertices": ["x"], "faces": []})


def test_graph_to_dot() -> None:
    text = graph_to_dot(nx.path_graph(3), "g", str)
    assert text.startswith('graph "g" {\n')
    assert '  "0" -- "1";' in text
    assert text.endswith("}\n")


def test_ball_and_dual_dot(dihedral_ball, square_dual, tmp_path) -> None:
    text = x_ball_dot(dihedral_ball)
    assert 'subgraph "polygon_0"' in text
    assert text.count(" -- ") == 28
    path = write_dot(tmp_path / "dual.dot", dual_dot(square_dual))
    assert '"o000000"' in path.read_text()


def test_walls_dot_colours_wall_edges() -> None:
    g = nx.path_graph(3)
    wall = Wall(0, WALL_LIFTED_X, frozenset({frozenset((0, 1))}), {0: False, 1: True, 2: True}, True)
    text = walls_dot(g, [wall], str)
    assert 'color="blue"' in text


def test_dual_payload(square_dual) -> None:
    payload = dual_payload(square_dual, str)
    assert payload["walls"] == 2
    assert sorted(payload["vertices"]) == ["00", "01", "10", "11"]
    assert len(payload["edges"]) == 4
    assert set(payload["principal"]) == {"p", "q", "r", "s"}


def test_csv_frames(tmp_path) -> None:
    inventory = {WALL_LIFTED_X: {"total": 2, "complete": 2, "incomplete": 0}}
    path = write_frame(inventory_frame(inventory), tmp_path / "inventory.csv")
    assert path.read_text().splitlines() == ["variant,total,complete,incomplete", f"{WALL_LIFTED_X},2,2,0"]
    assert list(configurations_frame([]).columns) == ["walls", "size", "variants", "certificate",
                                                      "certificate_kind"]


def test_svg_renderings(square, tmp_path) -> None:
    path = render_diagram(square, tmp_path / "square.svg", appendix_angles(square))
    assert "<svg" in path.read_text()
    other = render_graph(nx.cycle_graph(5), tmp_path / "cycle.svg", str, seed=7)
    assert other.exists()
