"""
DOT text for 1-skeleta, wall overlays and dual complexes.
"""
import logging
from pathlib import Path
from typing import Callable, Dict, Iterable, Optional, Sequence

import networkx as nx

from src.domain.devball import ComplexBall
from src.domain.dualcc import DualCubeComplex
from src.domain.walls import Wall
from src.utils.constants import WALL_FIRST_TYPE, WALL_LIFTED_X, WALL_SECOND_TYPE

logger = logging.getLogger(__name__)

WALL_COLOURS = {
    WALL_LIFTED_X: "blue",
    WALL_FIRST_TYPE: "darkgreen",
    WALL_SECOND_TYPE: "red",
}


def _quote(value) -> str:
    return '"' + str(value).replace('"', '\\"') + '"'


def _attrs(attrs: Dict[str, object]) -> str:
    if not attrs:
        return ""
    return " [" + ", ".join(f"{k}={_quote(v)}" for k, v in sorted(attrs.items())) + "]"


def graph_to_dot(g: nx.Graph, name: str, label: Callable, subgraphs: Optional[Dict[str, Iterable]] = None) -> str:
    """
    Render an undirected graph; node and edge attributes become DOT attributes.

    Args:
        g: Graph to render
        name: Graph name
        label: Node -> identifier string
        subgraphs: Named groups of edges emitted as subgraphs (nodes may be shared)
    """
    lines = [f"graph {_quote(name)} {{"]
    for node in sorted(g.nodes, key=label):
        lines.append(f"  {_quote(label(node))}{_attrs(g.nodes[node])};")
    edges = sorted(((sorted((label(u), label(v))), data) for u, v, data in g.edges(data=True)),
                   key=lambda item: item[0])
    for (a, c), data in edges:
        lines.append(f"  {_quote(a)} -- {_quote(c)}{_attrs(data)};")
    for sub, members in sorted((subgraphs or {}).items()):
        lines.append(f"  subgraph {_quote(sub)} {{")
        for a, c in sorted(sorted((label(u), label(v))) for u, v in members):
            lines.append(f"    {_quote(a)} -- {_quote(c)};")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def x_ball_dot(b: ComplexBall) -> str:
    """1-skeleton of the X ball with one subgraph per polygon."""
    g = b.graph()
    for key in g.nodes:
        g.nodes[key]["factor"] = key[0]
    polygons = {f"polygon_{p.id}": [b.edges[e].ends for e in p.edges] for p in b.polygons}
    return graph_to_dot(g, "X", lambda key: f"v{b.vertices[key].id}", polygons)


def walls_dot(g: nx.Graph, walls: Sequence[Wall], label: Callable) -> str:
    """The balanced complex with wall edges coloured by variant."""
    overlay = nx.Graph()
    overlay.add_nodes_from(g.nodes)
    for u, v, data in g.edges(data=True):
        overlay.add_edge(u, v, kind=data.get("kind", ""))
    for w in walls:
        for key in w.edges:
            u, v = tuple(key)
            if overlay.has_edge(u, v):
                overlay.edges[u, v]["color"] = WALL_COLOURS[w.variant]
                overlay.edges[u, v]["wall"] = w.id
    return graph_to_dot(overlay, "walls", label)


def dual_dot(c: DualCubeComplex) -> str:
    g = nx.Graph()
    principal = set(c.principal)
    for v in range(len(c.vertices)):
        g.add_node(v, principal=v in principal)
    for u, v, data in c.graph.edges(data=True):
        g.add_edge(u, v, wall=data["wall"])
    return graph_to_dot(g, "dual", lambda v: f"o{v:06d}")
