"""
SVG renderings: disc diagrams coloured by curvature, and plain 1-skeleta.
"""
import logging
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402
from matplotlib.patches import Polygon as PolygonPatch  # noqa: E402

from src.domain.discdiag import Corner, DiscDiagram, curvatures  # noqa: E402

logger = logging.getLogger(__name__)

# Fixed metadata keeps SVG bytes identical across runs.
SVG_METADATA = {"Date": None, "Creator": None}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    plt.rcParams["svg.hashsalt"] = "toolkit"
    fig.savefig(path, format="svg", metadata=SVG_METADATA)
    plt.close(fig)
    logger.debug(f"Wrote {path}")
    return path


def render_diagram(d: DiscDiagram, path: Path, angles: Optional[Dict[Corner, Fraction]] = None) -> Path:
    """
    Draw a planar diagram; faces are shaded by curvature when angles are given.

    The layout is networkx's planar embedding, so it is deterministic.
    """
    positions = nx.planar_layout(d.graph)
    fig, ax = plt.subplots(figsize=(6, 6))
    face_curvature = None
    vertex_curvature = None
    if angles is not None:
        vertex_curvature, face_curvature = curvatures(d, angles)
    cmap = plt.colormaps["coolwarm"]
    for index, face in enumerate(d.faces):
        value = float(face_curvature[index]) if face_curvature is not None else 0.0
        colour = cmap(0.5 + max(min(value, 1.0), -1.0) / 2)
        ax.add_patch(PolygonPatch([positions[v] for v in face], closed=True, facecolor=colour,
                                  edgecolor="black", alpha=0.8))
    nx.draw_networkx_edges(d.graph, positions, ax=ax, width=1.0)
    node_colours = [
        cmap(0.5 + max(min(float(vertex_curvature[v]), 1.0), -1.0) / 2) if vertex_curvature else "black"
        for v in d.graph.nodes
    ]
    nx.draw_networkx_nodes(d.graph, positions, ax=ax, node_size=30, node_color=node_colours)
    ax.set_aspect("equal")
    ax.axis("off")
    return _save(fig, path)


def render_graph(g: nx.Graph, path: Path, label: Callable, seed: int, colour_attr: Optional[str] = None) -> Path:
    """Spring-layout drawing of a graph with a seeded layout."""
    relabelled = nx.relabel_nodes(g, {n: label(n) for n in g.nodes})
    ordered = nx.Graph()
    ordered.add_nodes_from(sorted(relabelled.nodes(data=True)))
    ordered.add_edges_from(sorted((tuple(sorted((u, v))) + (data,) for u, v, data in relabelled.edges(data=True)),
                                  key=lambda item: item[:2]))
    positions = nx.spring_layout(ordered, seed=seed)
    fig, ax = plt.subplots(figsize=(8, 8))
    colours = [data.get(colour_attr, "grey") if colour_attr else "grey" for _, _, data in ordered.edges(data=True)]
    nx.draw_networkx_edges(ordered, positions, ax=ax, edge_color=colours, width=0.8)
    nx.draw_networkx_nodes(ordered, positions, ax=ax, node_size=12, node_color="black")
    ax.axis("off")
    return _save(fig, path)
