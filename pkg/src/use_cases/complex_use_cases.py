import logging
from typing import Tuple

from src.domain.dualcc import check_distances, check_flag_links, check_median, dimension, max_crossing_family
from src.domain.models.run_models import BuildReport, DualReport, RunConfig, WallsReport
from src.domain.walls import wall_inventory
from src.use_cases.export_use_cases import export_balls, export_dual, export_walls
from src.use_cases.pipeline import PipelineContext

logger = logging.getLogger(__name__)


def run_build(config: RunConfig, export: bool = True) -> Tuple[BuildReport, PipelineContext]:
    """Build the X ball, the blow-up and its balanced subdivision."""
    ctx = PipelineContext.from_config(config)
    x, eg, bal = ctx.x_ball, ctx.eg_ball, ctx.balanced
    files = [str(path) for path in export_balls(ctx)] if export else []
    report = BuildReport(
        header=config.header(),
        x_vertices=len(x.vertices),
        x_edges=len(x.edges),
        x_polygons=len(x.polygons),
        closed_polygons=sum(1 for p in x.polygons if x.is_closed(p)),
        unconfirmed_cosets=x.unconfirmed,
        eg_vertices=eg.graph.number_of_nodes(),
        eg_edges=eg.graph.number_of_edges(),
        longest_attaching_path=max((path.length for path in bal.paths.values()), default=0),
        balance_k=bal.k,
        files=files,
    )
    return report, ctx


def run_walls(config: RunConfig, export: bool = True) -> Tuple[WallsReport, PipelineContext]:
    """Walls of the balanced complex through the core, with their separation status."""
    ctx = PipelineContext.from_config(config)
    walls = ctx.walls
    if export:
        export_walls(ctx)
    report = WallsReport(
        header=config.header(),
        inventory=wall_inventory(walls),
        core_vertices=len(ctx.core()),
        separating=sum(1 for w in walls if w.separates),
        not_separating=sum(1 for w in walls if w.separates is False),
    )
    return report, ctx


def run_dual(config: RunConfig, export: bool = True) -> Tuple[DualReport, PipelineContext]:
    """Dual cube complex of the walls restricted to the core."""
    ctx = PipelineContext.from_config(config)
    c = ctx.dual_complex
    if export:
        export_dual(ctx)
    report = DualReport(
        header=config.header(),
        wallspace_vertices=len(ctx.wallspace.vertices),
        walls=len(ctx.wallspace.walls),
        dual_vertices=len(c.vertices),
        dual_edges=c.graph.number_of_edges(),
        dimension=dimension(c),
        max_crossing_family=max_crossing_family(c),
        median=check_median(c),
        flag_links=check_flag_links(c),
        distances=check_distances(c),
    )
    logger.info(f"Dual complex: {report.dual_vertices} vertices, dimension {report.dimension}")
    return report, ctx
