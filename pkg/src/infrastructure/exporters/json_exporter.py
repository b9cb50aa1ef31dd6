"""
Deterministic JSON payloads for balls, walls, dual complexes and diagrams.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

import orjson

from src.domain.blowup import BlowupBall
from src.domain.cubefiber import CubeBall
from src.domain.devball import ComplexBall
from src.domain.discdiag import DiscDiagram
from src.domain.dualcc import DualCubeComplex
from src.domain.walls import Wall
from src.infrastructure.cubes.cube_list import MODEL_DESCRIPTIONS
from src.utils.exceptions import InputError

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_NON_STR_KEYS


def to_bytes(payload: Any) -> bytes:
    return orjson.dumps(payload, option=JSON_OPTIONS)


def write_json(path: Path, payload: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(to_bytes(payload) + b"\n")
    logger.debug(f"Wrote {path}")
    return path


def _vertex_label(b: ComplexBall, key) -> Dict[str, Any]:
    v = b.vertices[key]
    return {
        "id": v.id,
        "factor": v.factor,
        "rep": b.calc.fp.format_word(v.rep),
        "distance": v.distance,
        "confirmed": v.confirmed,
    }


def x_ball_payload(b: ComplexBall) -> Dict[str, Any]:
    """Cells of the X ball with incidences by id."""
    return {
        "presentation": b.presentation.fingerprint,
        "radius": b.radius,
        "k": b.k,
        "vertices": [_vertex_label(b, key) for key in b.vertices],
        "edges": [
            {"id": e.id, "ends": [b.vertices[end].id for end in e.ends], "complete": e.complete}
            for e in b.edges.values()
        ],
        "polygons": [
            {
                "id": p.id,
                "relator": p.relator,
                "vertices": [b.vertices[v].id for v in p.vertices],
                "edges": [b.edges[e].id for e in p.edges],
                "closed": b.is_closed(p),
            }
            for p in b.polygons
        ],
    }


def cube_ball_payload(cb: CubeBall) -> Dict[str, Any]:
    return {
        "geometry": cb.model.geometry,
        "description": MODEL_DESCRIPTIONS[cb.model.geometry],
        "radius": cb.radius,
        "vertices": [repr(v) for v in cb.vertices],
        "edges": [list(e) for e in cb.edges],
        "cubes": {str(dim): sorted(sorted(c) for c in cubes) for dim, cubes in cb.cubes.items()},
    }


def eg_node_label(bb: BlowupBall, node) -> str:
    if node[0] == "f":
        return f"f{bb.base.vertices[node[1]].id}:{node[2]!r}"
    return f"h{bb.base.edges[node[1]].id}:{node[2]}"


def eg_ball_payload(bb: BlowupBall) -> Dict[str, Any]:
    """Vertices and edges of the balanced complex with provenance, plus attaching paths."""
    nodes = sorted(bb.graph.nodes, key=bb.node_id)
    return {
        "k": bb.k,
        "fibre_radius": bb.fibre_radius,
        "vertices": [eg_node_label(bb, n) for n in nodes],
        "edges": sorted(
            [sorted([eg_node_label(bb, u), eg_node_label(bb, v)]) + [data["kind"]]
             for u, v, data in bb.graph.edges(data=True)]
        ),
        "attaching_paths": [
            {
                "polygon": polygon,
                "corner": corner,
                "vertex": bb.base.vertices[path.vertex].id,
                "points": [repr(p) for p in path.points],
            }
            for (polygon, corner), path in sorted(bb.paths.items())
        ],
    }


def cell_label(b: ComplexBall, cell) -> str:
    if cell[0] == "v":
        return f"v{b.vertices[cell[1]].id}"
    return f"{cell[0]}{b.edges[cell[1]].id}.{cell[2]}"


def walls_payload(walls: Sequence[Wall], label, base: ComplexBall) -> List[Dict[str, Any]]:
    """Walls with their edge classes rendered through `label` (a node -> str function)."""
    payload = []
    for w in walls:
        payload.append({
            "id": w.id,
            "variant": w.variant,
            "complete": w.complete,
            "separates": w.separates,
            "edges": sorted(sorted(label(n) for n in key) for key in w.edges),
            "gallery": [
                {"polygon": pwd.polygon, "doors": [cell_label(base, d) for d in pwd.doors]}
                for pwd in (w.gallery.polygons if w.gallery else [])
            ],
        })
    return payload


def dual_payload(c: DualCubeComplex, label) -> Dict[str, Any]:
    return {
        "walls": len(c.wallspace.walls),
        "multiplicity": list(c.wallspace.multiplicity),
        "vertices": ["".join("1" if bit else "0" for bit in v) for v in c.vertices],
        "edges": sorted([min(u, v), max(u, v), data["wall"]] for u, v, data in c.graph.edges(data=True)),
        "principal": {label(x): c.principal[i] for i, x in enumerate(c.wallspace.vertices)},
    }


def diagram_payload(d: DiscDiagram) -> Dict[str, Any]:
    return {
        "vertices": d.vertices,
        "faces": [list(f) for f in d.faces],
        "face_polygons": list(d.face_polygons),
        "tree_edges": sorted(sorted(e) for e in d.tree_edges),
    }


def diagram_from_payload(payload: Dict[str, Any]) -> DiscDiagram:
    """
    Rebuild an abstract diagram (vertex labels are the vertex numbers) and validate it.

    Raises:
        InputError: If the payload is malformed
        VerificationError: If the diagram is not a planar disc
    """
    try:
        vertices = [int(v) for v in payload["vertices"]]
        faces = [tuple(int(v) for v in f) for f in payload["faces"]]
        polygons = list(payload.get("face_polygons") or [None] * len(faces))
        tree = {frozenset(int(v) for v in e) for e in payload.get("tree_edges", [])}
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed diagram payload: {e}", {}) from None
    d = DiscDiagram({v: v for v in vertices}, faces, polygons, tree)
    d.validate()
    return d
