"""
Finite balls in the fibre cube complexes, deterministic geodesics and hyperplanes.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from src.config import MAX_BALL_CELLS
from src.infrastructure.cubes.cube_interface import CubeModel
from src.utils.exceptions import IncompleteError, InputError, ResourceBoundError, VerificationError
from src.utils.validation import validate_radius

logger = logging.getLogger(__name__)

EdgeKey = Tuple[int, int]


@dataclass
class CubeBall:
    """Edge-metric ball in a cube model with explicit cells; boundary cells are flagged."""

    model: CubeModel
    center: Any
    radius: int
    vertices: List[Any] = field(default_factory=list)
    index: Dict[Any, int] = field(default_factory=dict)
    distance: List[int] = field(default_factory=list)
    edges: List[EdgeKey] = field(default_factory=list)
    cubes: Dict[int, List[FrozenSet[int]]] = field(default_factory=dict)

    @property
    def squares(self) -> List[FrozenSet[int]]:
        return self.cubes.get(2, [])

    def is_boundary(self, i: int) -> bool:
        return self.distance[i] >= self.radius

    def contains(self, v: Any) -> bool:
        return v in self.index

    def vertex_index(self, v: Any) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise IncompleteError(
                f"Vertex {v!r} lies outside the fibre ball of radius {self.radius}",
                {"vertex": repr(v), "radius": self.radius},
            ) from None

    def edge_key(self, u: Any, v: Any) -> EdgeKey:
        i, j = self.vertex_index(u), self.vertex_index(v)
        return (i, j) if i < j else (j, i)

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def _opposites(self) -> Dict[EdgeKey, List[EdgeKey]]:
        opposite: Dict[EdgeKey, List[EdgeKey]] = {e: [] for e in self.edges}
        for square in self.squares_ordered:
            c0, c1, c2, c3 = square
            for e1, e2 in (((c0, c1), (c2, c3)), ((c0, c2), (c1, c3))):
                k1, k2 = tuple(sorted(e1)), tuple(sorted(e2))
                opposite[k1].append(k2)
                opposite[k2].append(k1)
        return opposite

    squares_ordered: List[Tuple[int, int, int, int]] = field(default_factory=list)

    @cached_property
    def hyperplane_classes(self) -> Tuple[Dict[EdgeKey, int], List[FrozenSet[EdgeKey]]]:
        """Square-opposition classes of edges: (edge -> class id, classes sorted by least edge)."""
        g = nx.Graph()
        g.add_nodes_from(self.edges)
        for e, others in self._opposites.items():
            for o in others:
                g.add_edge(e, o)
        classes = sorted((frozenset(c) for c in nx.connected_components(g)), key=min)
        lookup = {e: n for n, c in enumerate(classes) for e in c}
        return lookup, classes


@dataclass(frozen=True)
class Hyperplane:
    """
    Edge class of a hyperplane within a ball, oriented by its seed edge a -> b.
    Side '+' is the half containing b.
    """

    ball: CubeBall
    edges: FrozenSet[EdgeKey]
    seed: Tuple[Any, Any]

    @property
    def complete(self) -> bool:
        return not any(self.ball.is_boundary(i) or self.ball.is_boundary(j) for i, j in self.edges)

    def side(self, v: Any) -> str:
        self.ball.vertex_index(v)
        model = self.ball.model
        a, b = self.seed
        return "+" if model.distance(v, b) < model.distance(v, a) else "-"


def ball(m: CubeModel, radius: int, center: Any = None, max_cells: int = MAX_BALL_CELLS) -> CubeBall:
    """
    Build the complete edge-metric ball of a cube model.

    Args:
        m: Cube model
        radius: Edge-metric radius (>= 0)
        center: Center vertex, defaults to the basepoint
        max_cells: Resource bound on vertices plus edges

    Returns:
        CubeBall with BFS-ordered vertices and all cubes whose corners lie in the ball
    """
    validate_radius(radius)
    center = m.basepoint if center is None else center
    result = CubeBall(model=m, center=center, radius=radius)
    result.vertices.append(center)
    result.index[center] = 0
    result.distance.append(0)
    layer = [center]
    for depth in range(1, radius + 1):
        next_layer = []
        for v in layer:
            for w in m.neighbours(v):
                if w not in result.index:
                    result.index[w] = len(result.vertices)
                    result.vertices.append(w)
                    result.distance.append(depth)
                    next_layer.append(w)
        layer = next_layer
        if len(result.vertices) > max_cells:
            raise ResourceBoundError(
                f"Fibre ball of radius {radius} exceeds {max_cells} cells",
                {"radius": radius, "max_cells": max_cells},
            )
    edges = set()
    for i, v in enumerate(result.vertices):
        for w in m.neighbours(v):
            j = result.index.get(w)
            if j is not None and i != j:
                edges.add((min(i, j), max(i, j)))
    result.edges = sorted(edges)
    for dim in range(2, m.max_dimension + 1):
        found = []
        for v in result.vertices:
            for corners in m.cubes_at(v, dim):
                if all(c in result.index for c in corners):
                    indices = tuple(result.index[c] for c in corners)
                    found.append(frozenset(indices))
                    if dim == 2:
                        result.squares_ordered.append(indices)
        result.cubes[dim] = found
    if len(result.vertices) + len(result.edges) > max_cells:
        raise ResourceBoundError(
            f"Fibre ball of radius {radius} exceeds {max_cells} cells",
            {"radius": radius, "max_cells": max_cells},
        )
    logger.debug(
        f"{m.geometry} ball r={radius}: {len(result.vertices)} vertices, {len(result.edges)} edges, "
        f"{len(result.squares)} squares"
    )
    return result


def geodesic(m: CubeModel, start: Any, end: Any) -> List[Any]:
    """
    Lexicographically least shortest path under the model's direction order.

    Returns:
        Vertex sequence from start to end (a single vertex when start == end)
    """
    path = [start]
    current = start
    remaining = m.distance(current, end)
    while remaining:
        for s in m.directions():
            candidate = m.factor.multiply(current, s)
            if m.distance(candidate, end) < remaining:
                current = candidate
                remaining -= 1
                path.append(current)
                break
        else:
            raise VerificationError("Cube model distance admits no decreasing step",
                                    {"geometry": m.geometry})
    return path


def act(m: CubeModel, g: Any, v: Any) -> Any:
    """Left action of a factor element on a model vertex."""
    try:
        g = m.factor.parse(list(g) if isinstance(g, tuple) else g)
    except InputError:
        raise InputError(f"Element {g!r} is not in factor {m.factor.name}", {"factor": m.factor_id}) from None
    return m.act(g, v)


def hyperplane_of(b: CubeBall, e: Tuple[Any, Any]) -> Hyperplane:
    """
    Hyperplane dual to an edge, as the square-opposition closure within the ball.

    Args:
        b: Cube ball
        e: Edge given by its two endpoint vertices (a, b); side '+' contains b
    """
    key = b.edge_key(*e)
    lookup, classes = b.hyperplane_classes
    if key not in lookup:
        raise InputError(f"{e!r} is not an edge of the ball", {"edge": repr(e)})
    return Hyperplane(ball=b, edges=classes[lookup[key]], seed=tuple(e))


def hyperplanes(b: CubeBall) -> List[Hyperplane]:
    """One hyperplane per edge class, seeded at the class's least edge oriented away from the center."""
    _, classes = b.hyperplane_classes
    found = []
    for cls in classes:
        i, j = min(cls)
        if b.distance[i] > b.distance[j]:
            i, j = j, i
        found.append(Hyperplane(ball=b, edges=cls, seed=(b.vertices[i], b.vertices[j])))
    return found


def separates(h: Hyperplane, v1: Any, v2: Any) -> bool:
    return h.side(v1) != h.side(v2)


def crosses_path(h: Hyperplane, path: Sequence[Any]) -> int:
    """Number of path edges dual to h; every path vertex must lie in the ball."""
    sides = [h.side(v) for v in path]
    return sum(1 for x, y in zip(sides, sides[1:]) if x != y)


def check_flag_links(b: CubeBall) -> bool:
    """
    Flag condition on the links of vertices whose cubes all lie in the ball.

    Returns:
        True when every clique in every checked link spans a cube
    """
    max_dim = b.model.max_dimension
    cubes_by_vertex: Dict[int, List[FrozenSet[int]]] = {}
    for dim, cubes in b.cubes.items():
        for cube in cubes:
            for v in cube:
                cubes_by_vertex.setdefault(v, []).append(cube)
    for v in range(len(b.vertices)):
        if b.distance[v] > b.radius - max_dim:
            continue
        link = nx.Graph()
        link.add_nodes_from(b.graph.neighbors(v))
        for cube in cubes_by_vertex.get(v, []):
            if len(cube) == 4:
                ends = [w for w in cube if b.graph.has_edge(v, w)]
                if len(ends) == 2:
                    link.add_edge(*ends)
        for clique in nx.find_cliques(link):
            if len(clique) < 3:
                continue
            target = set(clique) | {v}
            if not any(target <= cube and len(cube) == 2 ** len(clique) for cube in cubes_by_vertex.get(v, [])):
                logger.info(f"Link of vertex {b.vertices[v]!r} is not flag")
                return False
    return True


def check_helly(b: CubeBall, family: Sequence[Hyperplane]) -> Optional[List[Any]]:
    """
    Helly property for hyperplane carriers restricted to the ball.

    Returns:
        None when every pairwise-intersecting subfamily has a common carrier vertex,
        otherwise the offending subfamily's seed edges
    """
    carriers = []
    for h in family:
        carriers.append({v for edge in h.edges for v in edge})
    for size in range(3, len(family) + 1):
        for combo in itertools.combinations(range(len(family)), size):
            if all(carriers[i] & carriers[j] for i, j in itertools.combinations(combo, 2)):
                if not set.intersection(*(carriers[i] for i in combo)):
                    return [family[i].seed for i in combo]
    return None
