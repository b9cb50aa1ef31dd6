"""
Artifact writers for each pipeline stage, honouring the configured formats.
"""
import logging
from pathlib import Path
from typing import List

from src.domain.discdiag import appendix_angles, diagram_from_polygons
from src.domain.dualcc import crossing_configurations, properness_profile
from src.domain.walls import wall_inventory
from src.infrastructure.exporters import csv_exporter, dot_exporter, json_exporter, svg_exporter
from src.use_cases.pipeline import PipelineContext
from src.utils.exceptions import VerificationError

logger = logging.getLogger(__name__)


def _out(ctx: PipelineContext) -> Path:
    return Path(ctx.config.out_dir)


def export_balls(ctx: PipelineContext) -> List[Path]:
    formats = ctx.config.formats
    out = _out(ctx)
    written: List[Path] = []
    if "json" in formats:
        written.append(json_exporter.write_json(out / "x_ball.json", json_exporter.x_ball_payload(ctx.x_ball)))
        written.append(json_exporter.write_json(out / "eg_ball.json", json_exporter.eg_ball_payload(ctx.eg_ball)))
        written.append(json_exporter.write_json(out / "balanced_ball.json",
                                                json_exporter.eg_ball_payload(ctx.balanced)))
        for factor_id, cb in sorted(ctx.balanced.fibre_balls.items()):
            written.append(json_exporter.write_json(out / f"fibre_{factor_id}.json",
                                                    json_exporter.cube_ball_payload(cb)))
    if "dot" in formats:
        written.append(dot_exporter.write_dot(out / "x_ball.dot", dot_exporter.x_ball_dot(ctx.x_ball)))
    if "svg" in formats:
        b = ctx.x_ball
        written.append(svg_exporter.render_graph(b.graph(), out / "x_ball.svg",
                                                 lambda key: f"v{b.vertices[key].id}", ctx.config.seed))
    if "json" in formats or "svg" in formats:
        written.extend(_export_polygon_diagram(ctx, out))
    return written


def _export_polygon_diagram(ctx: PipelineContext, out: Path) -> List[Path]:
    b = ctx.x_ball
    closed = [p.id for p in b.polygons if b.is_closed(p)]
    if not closed:
        return []
    try:
        d = diagram_from_polygons(b, closed[:1])
    except VerificationError as e:
        logger.warning(f"Skipping polygon diagram: {e.message}")
        return []
    written = []
    if "json" in ctx.config.formats:
        written.append(json_exporter.write_json(out / "polygon_diagram.json", json_exporter.diagram_payload(d)))
    if "svg" in ctx.config.formats:
        written.append(svg_exporter.render_diagram(d, out / "polygon_diagram.svg", appendix_angles(d)))
    return written


def export_walls(ctx: PipelineContext) -> List[Path]:
    formats = ctx.config.formats
    out = _out(ctx)
    walls = ctx.walls
    written: List[Path] = []
    if "json" in formats:
        payload = json_exporter.walls_payload(walls, ctx.label, ctx.balanced.base)
        written.append(json_exporter.write_json(out / "walls.json", payload))
    if "dot" in formats:
        text = dot_exporter.walls_dot(ctx.balanced.graph, walls, ctx.label)
        written.append(dot_exporter.write_dot(out / "walls.dot", text))
    if "svg" in formats:
        g = ctx.balanced.graph.copy()
        for w in walls:
            for key in w.edges:
                u, v = tuple(key)
                if g.has_edge(u, v):
                    g.edges[u, v]["color"] = dot_exporter.WALL_COLOURS[w.variant]
        written.append(svg_exporter.render_graph(g, out / "walls.svg", ctx.label, ctx.config.seed, "color"))
    if "csv" in formats:
        written.append(csv_exporter.write_frame(csv_exporter.inventory_frame(wall_inventory(walls)),
                                                out / "walls_inventory.csv"))
    return written


def export_dual(ctx: PipelineContext) -> List[Path]:
    formats = ctx.config.formats
    out = _out(ctx)
    c = ctx.dual_complex
    written: List[Path] = []
    if "json" in formats:
        written.append(json_exporter.write_json(out / "dual.json", json_exporter.dual_payload(c, ctx.label)))
    if "dot" in formats:
        written.append(dot_exporter.write_dot(out / "dual.dot", dot_exporter.dual_dot(c)))
    if "svg" in formats:
        written.append(svg_exporter.render_graph(c.graph, out / "dual.svg", lambda v: f"o{v:06d}", ctx.config.seed))
    if "csv" in formats:
        profile = properness_profile(ctx.balanced, ctx.wallspace, ctx.basepoint, ctx.profile_elements())
        written.append(csv_exporter.write_frame(csv_exporter.profile_frame(profile), out / "properness.csv"))
        configurations = crossing_configurations(c, ctx.balanced, ctx.config.max_clique)
        frame = csv_exporter.configurations_frame(configurations, lambda v: f"v{ctx.balanced.base.vertices[v].id}")
        written.append(csv_exporter.write_frame(frame, out / "configurations.csv"))
    return written


def run_export(ctx: PipelineContext) -> List[Path]:
    """Write every stage's artifacts; returns the written paths in order."""
    written = export_balls(ctx) + export_walls(ctx) + export_dual(ctx)
    logger.info(f"Exported {len(written)} files to {_out(ctx)}")
    return written
