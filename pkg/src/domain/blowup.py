"""
Finite portions of the blown-up complex and its balanced subdivision.

Each vertex v = rep·G_f of X carries a fibre: a ball in the cube model of G_f,
with fibre point x standing for rep·x. A horizontal edge with witness g meets the
fibre over v at rep^-1·g; the polygon P(y, r) meets it along the attaching path
h·gamma(s_j) with h = rep^-1·y·p_j and gamma(s) the pinned geodesic from the
basepoint to s. Horizontal edges are subdivided k times, vertical edges never.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx

from src.config import DEFAULT_FACTOR_WINDOW, DEFAULT_FIBRE_RADIUS, DEFAULT_MAX_K
from src.domain import cubefiber
from src.domain.cubefiber import CubeBall
from src.domain.devball import Cell, ComplexBall, EdgeKey, VertexKey, XPolygon, build_x_ball, far_apart
from src.domain.freeprod import Presentation
from src.domain.groupcalc import GroupCalculator
from src.infrastructure.cubes.cube_interface import CubeModel
from src.utils.constants import EDGE_HORIZONTAL, EDGE_VERTICAL
from src.utils.exceptions import (
    FibreTruncationError,
    IncompleteError,
    InputError,
    ResourceBoundError,
    VerificationError,
)
from src.utils.validation import validate_radius, validate_subdivision

logger = logging.getLogger(__name__)

# ("f", vertex, fibre point) | ("h", edge, t) for the t-th subdivision vertex from the edge's first end
EGNode = Tuple


@dataclass(frozen=True)
class AttachingPath:
    vertex: VertexKey
    polygon: int
    corner: int
    points: Tuple[Any, ...]

    @property
    def length(self) -> int:
        return len(self.points) - 1


@dataclass(frozen=True)
class EGSide:
    """
    One side of a polygon of the balanced complex, in boundary order from `start` to `end`.

    Vertical sides lie in the fibre over `vertex`; horizontal sides are the sub-edge `sub`
    (counted from the edge's first end) of the lift of `edge`.
    """

    kind: str
    start: EGNode
    end: EGNode
    vertex: Optional[VertexKey] = None
    edge: Optional[EdgeKey] = None
    sub: int = 0

    @property
    def key(self) -> frozenset:
        return frozenset((self.start, self.end))

    def projection(self) -> Cell:
        if self.kind == EDGE_VERTICAL:
            return ("v", self.vertex)
        return ("e", self.edge, self.sub)


@dataclass
class BlowupBall:
    base: ComplexBall
    models: Dict[int, CubeModel]
    fibre_radius: int
    k: int = 0
    fibre_balls: Dict[int, CubeBall] = field(default_factory=dict)
    anchors: Dict[Tuple[VertexKey, EdgeKey], Any] = field(default_factory=dict)
    paths: Dict[Tuple[int, int], AttachingPath] = field(default_factory=dict)

    @property
    def calc(self) -> GroupCalculator:
        return self.base.calc

    def fibre(self, vertex: VertexKey) -> CubeBall:
        return self.fibre_balls[vertex[0]]

    def model(self, vertex: VertexKey) -> CubeModel:
        return self.models[vertex[0]]

    def with_subdivision(self, k: int) -> "BlowupBall":
        validate_subdivision(k)
        return BlowupBall(self.base, self.models, self.fibre_radius, k,
                          self.fibre_balls, self.anchors, self.paths)

    def x_view(self) -> ComplexBall:
        """The base ball as a portion of X_k."""
        return self.base.subdivide(self.k)

    # --- Cells ---

    def horizontal_chain(self, edge: EdgeKey) -> List[EGNode]:
        """Vertices of the lifted edge from its first end to its second."""
        a, c = self.base.edges[edge].ends
        return ([("f", a, self.anchors[(a, edge)])]
                + [("h", edge, t) for t in range(1, self.k + 1)]
                + [("f", c, self.anchors[(c, edge)])])

    def polygon_sides(self, polygon: XPolygon) -> List[EGSide]:
        """Boundary sides of the lifted polygon: attaching path at corner j, then the lift of edge j."""
        sides: List[EGSide] = []
        for j, vertex in enumerate(polygon.vertices):
            points = self.paths[(polygon.id, j)].points
            for p, q in zip(points, points[1:]):
                sides.append(EGSide(EDGE_VERTICAL, ("f", vertex, p), ("f", vertex, q), vertex=vertex))
            edge = polygon.edges[j]
            chain = self.horizontal_chain(edge)
            forward = self.base.edges[edge].ends[0] == vertex
            if not forward:
                chain = chain[::-1]
            for s in range(self.k + 1):
                sub = s if forward else self.k - s
                sides.append(EGSide(EDGE_HORIZONTAL, chain[s], chain[s + 1], edge=edge, sub=sub))
        return sides

    def opposite_pairs(self, polygon: XPolygon) -> List[Tuple[EGSide, EGSide]]:
        """
        Diametrically opposed sides of the lifted polygon.

        Raises:
            VerificationError: If the side count is odd
        """
        sides = self.polygon_sides(polygon)
        n = len(sides)
        if n % 2:
            raise VerificationError(
                f"Lifted polygon {polygon.id} has an odd number of sides ({n}); opposite sides are undefined",
                {"polygon": polygon.id, "sides": n},
            )
        return [(sides[i], sides[i + n // 2]) for i in range(n // 2)]

    def node_id(self, node: EGNode) -> Tuple[int, int, int]:
        """Integer sort key of a vertex of the balanced complex."""
        if node[0] == "f":
            return (0, self.base.vertices[node[1]].id, self.fibre(node[1]).vertex_index(node[2]))
        return (1, self.base.edges[node[1]].id, node[2])

    @cached_property
    def lifted_sides(self) -> Dict[int, List[EGSide]]:
        return {polygon.id: self.polygon_sides(polygon) for polygon in self.base.polygons}

    @cached_property
    def side_index(self) -> Dict[frozenset, List[Tuple[int, int]]]:
        """Edge of the balanced complex -> (polygon id, side position) for every lifted polygon through it."""
        index: Dict[frozenset, List[Tuple[int, int]]] = {}
        for pid, sides in self.lifted_sides.items():
            for position, side in enumerate(sides):
                index.setdefault(side.key, []).append((pid, position))
        return index

    @cached_property
    def graph(self) -> nx.Graph:
        """1-skeleton of the balanced complex over the base ball, with edge kinds."""
        g = nx.Graph()
        for vertex in self.base.vertices:
            fibre = self.fibre(vertex)
            for i, j in fibre.edges:
                g.add_edge(("f", vertex, fibre.vertices[i]), ("f", vertex, fibre.vertices[j]), kind=EDGE_VERTICAL)
            g.add_node(("f", vertex, fibre.vertices[0]))
        for edge in self.base.edges:
            if all((end, edge) in self.anchors for end in self.base.edges[edge].ends):
                nx.add_path(g, self.horizontal_chain(edge), kind=EDGE_HORIZONTAL)
        return g

    def vertical_complete(self, vertex: VertexKey, p: Any, q: Any) -> bool:
        """
        Every polygon whose attaching path over `vertex` uses the fibre edge p -- q is in the ball.

        Requires the vertex to be expanded and every anchor h with h·gamma(s) through the edge
        to lie in the expansion window.
        """
        v = self.base.vertices[vertex]
        fibre = self.fibre(vertex)
        if not v.expanded:
            return False
        if fibre.is_boundary(fibre.vertex_index(p)) or fibre.is_boundary(fibre.vertex_index(q)):
            return False
        model = self.model(vertex)
        factor = model.factor
        for relator in self.base.presentation.relators:
            for f, s in relator.word:
                if f != vertex[0]:
                    continue
                gamma = cubefiber.geodesic(model, model.basepoint, s)
                for g0, g1 in zip(gamma, gamma[1:]):
                    for a, c in ((p, q), (q, p)):
                        h = factor.multiply(a, factor.inverse(g0))
                        if model.act(h, g1) == c and factor.norm(h) > self.base.factor_window:
                            return False
        return True

    def edge_complete(self, side: EGSide) -> bool:
        if side.kind == EDGE_HORIZONTAL:
            return self.base.edges[side.edge].complete
        return self.vertical_complete(side.vertex, side.start[2], side.end[2])


def classify_edge(b: BlowupBall, e: Tuple[EGNode, EGNode]) -> str:
    """Horizontal or vertical, by provenance of the edge's endpoints."""
    u, v = e
    if u[0] == "f" and v[0] == "f" and u[1] == v[1]:
        if not b.graph.has_edge(u, v):
            raise InputError("Not an edge of the blow-up ball", {"edge": repr(e)})
        return EDGE_VERTICAL
    return EDGE_HORIZONTAL


def fibre_anchor(b: BlowupBall, vertex: VertexKey, edge: EdgeKey) -> Any:
    """The fibre point over `vertex` at which the lift of `edge` meets the fibre."""
    key = (vertex, edge)
    if key in b.anchors:
        return b.anchors[key]
    calc = b.calc
    fp = calc.fp
    v = b.base.vertices[vertex]
    h = calc.factor_element(fp.multiply(fp.invert(v.rep), b.base.edges[edge].witness), vertex[0])
    model = b.model(vertex)
    point = model.act(h, model.basepoint)
    if not b.fibre(vertex).contains(point):
        raise FibreTruncationError(
            f"Anchor of edge {b.base.edges[edge].id} at vertex {v.id} lies outside the fibre ball",
            {"vertex": v.id, "edge": b.base.edges[edge].id, "fibre_radius": b.fibre_radius},
        )
    b.anchors[key] = point
    return point


def _attach(b: BlowupBall, polygon: XPolygon) -> None:
    word = b.base.presentation.relators[polygon.relator].word
    for j, vertex in enumerate(polygon.vertices):
        start = fibre_anchor(b, vertex, polygon.edges[j - 1])
        end = fibre_anchor(b, vertex, polygon.edges[j])
        model = b.model(vertex)
        gamma = cubefiber.geodesic(model, model.basepoint, word[j][1])
        points = tuple(model.act(start, x) for x in gamma)
        if points[-1] != end:
            raise VerificationError(
                f"Attaching path of polygon {polygon.id} at corner {j} ends at {points[-1]!r}, "
                f"expected the next anchor {end!r}",
                {"polygon": polygon.id, "corner": j},
            )
        fibre = b.fibre(vertex)
        for x in points:
            if not fibre.contains(x):
                raise FibreTruncationError(
                    f"Attaching path of polygon {polygon.id} at vertex {b.base.vertices[vertex].id} "
                    f"leaves the fibre ball of radius {b.fibre_radius}",
                    {"polygon": polygon.id, "corner": j, "fibre_radius": b.fibre_radius},
                )
        b.paths[(polygon.id, j)] = AttachingPath(vertex, polygon.id, j, points)


def build_eg_ball(p: Presentation, models: Dict[int, CubeModel], radius: int,
                  fibre_radius: int = DEFAULT_FIBRE_RADIUS, base: Optional[ComplexBall] = None,
                  calc: Optional[GroupCalculator] = None,
                  factor_window: int = DEFAULT_FACTOR_WINDOW) -> BlowupBall:
    """
    Build the blow-up over a ball of X.

    Args:
        p: A C'(1/6) presentation
        models: Cube model per factor id
        radius: Base ball radius (ignored when `base` is given)
        fibre_radius: Radius of every fibre ball
        base: Prebuilt X ball

    Returns:
        BlowupBall with anchors and attaching paths for every polygon of the base

    Raises:
        FibreTruncationError: If an anchor or attaching path leaves its fibre ball
    """
    validate_radius(fibre_radius, "fibre_radius")
    missing = [f.factor_id for f in p.factors if f.factor_id not in models]
    if missing:
        raise InputError(f"No cube model for factors {missing}", {"factors": missing})
    base = base or build_x_ball(p, radius, calc, factor_window)
    result = BlowupBall(base, models, fibre_radius)
    for factor_id, model in sorted(models.items()):
        result.fibre_balls[factor_id] = cubefiber.ball(model, fibre_radius)
    for polygon in base.polygons:
        _attach(result, polygon)
    longest = max((path.length for path in result.paths.values()), default=0)
    logger.info(
        f"Blow-up over {len(base.vertices)} vertices: {len(result.paths)} attaching paths, longest {longest}"
    )
    return result


def attaching_paths(b: BlowupBall, vertex: VertexKey) -> List[AttachingPath]:
    if vertex not in b.base.vertices:
        raise InputError("Vertex is not in the base ball", {})
    return [path for key, path in sorted(b.paths.items()) if path.vertex == vertex]


# --- Balancing ---

def balanced_at(b: BlowupBall, polygons: Optional[List[XPolygon]] = None) -> bool:
    """Every opposite pair of sides of the given lifted polygons projects to far-apart cells of X_k."""
    view = b.x_view()
    for polygon in polygons if polygons is not None else b.base.polygons:
        for s1, s2 in b.opposite_pairs(polygon):
            if not far_apart(view, polygon, s1.projection(), s2.projection()):
                return False
    return True


def balance(b: BlowupBall, max_k: int = DEFAULT_MAX_K) -> Tuple[int, BlowupBall]:
    """
    Smallest additional even subdivision making the ball balanced.

    Only closed polygons of the base are evaluated, since far-apart needs every polygon
    through the arc edges.

    Returns:
        (k, balanced ball); k = 0 when b is already balanced

    Raises:
        IncompleteError: If the base has no closed polygon
        ResourceBoundError: If no even k <= max_k balances the ball
    """
    validate_subdivision(max_k)
    closed = [polygon for polygon in b.base.polygons if b.base.is_closed(polygon)]
    if not closed:
        raise IncompleteError("No polygon of the base ball is closed; enlarge the radius",
                              {"radius": b.base.radius})
    for extra in range(0, max_k + 1, 2):
        candidate = b.with_subdivision(b.k + extra)
        if balanced_at(candidate, closed):
            logger.info(f"Balanced with k={b.k + extra} over {len(closed)} closed polygons")
            return extra, candidate
    raise ResourceBoundError(f"No even k <= {max_k} balances the ball", {"max_k": max_k})


# --- Audits ---

def check_no_turns(b: BlowupBall) -> bool:
    """Each fibre hyperplane crosses every attaching path at most once."""
    for path in b.paths.values():
        if path.length < 2:
            continue
        fibre = b.fibre(path.vertex)
        for p, q in zip(path.points, path.points[1:]):
            hyperplane = cubefiber.hyperplane_of(fibre, (p, q))
            if cubefiber.crosses_path(hyperplane, path.points) != 1:
                logger.info(f"Attaching path of polygon {path.polygon} turns at corner {path.corner}")
                return False
    return True


def check_projection(b: BlowupBall) -> bool:
    """Lifted polygons project onto their base polygons: k+1 sub-edges per edge, vertical sides onto corners."""
    for polygon in b.base.polygons:
        horizontal: Dict[EdgeKey, int] = {}
        for side in b.polygon_sides(polygon):
            if side.kind == EDGE_HORIZONTAL:
                horizontal[side.edge] = horizontal.get(side.edge, 0) + 1
            elif side.vertex not in polygon.vertices:
                return False
        if set(horizontal) != set(polygon.edges) or any(n != b.k + 1 for n in horizontal.values()):
            return False
    return True
