"""
Finite balls of the polygonal complex X and its subdivisions X_k.

Vertices are cosets g·G_i (keyed through the group calculator), an edge is the
unique element in the intersection of its two endpoint cosets, and the polygon
P(y, r) has vertices y·p_j·G_{f_j} where p_j is the length-j prefix of the
relator r and f_j the factor of its j-th syllable.
"""
import copy
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from src.config import DEFAULT_FACTOR_WINDOW, MAX_BALL_CELLS
from src.domain.freeprod import Presentation, Word
from src.domain.groupcalc import GroupCalculator
from src.utils.constants import DEFAULT_LAMBDA, FAR_APART_MIN_PIECES
from src.utils.exceptions import IncompleteError, InputError, ResourceBoundError, VerificationError
from src.utils.validation import validate_radius, validate_subdivision

logger = logging.getLogger(__name__)

VertexKey = Tuple[int, Word]
EdgeKey = FrozenSet[VertexKey]
PolygonKey = FrozenSet[EdgeKey]
# ("v", vertex) | ("s", edge, t) with 1 <= t <= k | ("e", edge, s) with 0 <= s <= k;
# t and s are counted from the edge's first end.
Cell = Tuple


@dataclass
class XVertex:
    id: int
    key: VertexKey
    rep: Word
    confirmed: bool = True
    distance: Optional[int] = None
    expanded: bool = False

    @property
    def factor(self) -> int:
        return self.key[0]


@dataclass
class XEdge:
    id: int
    key: EdgeKey
    ends: Tuple[VertexKey, VertexKey]
    witness: Word
    complete: bool = False


@dataclass
class XPolygon:
    """
    A polygon P(anchor, relator); edges[j] joins vertices[j] and vertices[j + 1].
    """

    id: int
    key: PolygonKey
    relator: int
    anchor: Word
    vertices: Tuple[VertexKey, ...]
    edges: Tuple[EdgeKey, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class XPiece:
    """A maximal run of edges of `polygon` (cyclic indices from `start`) shared with `other`."""

    polygon: int
    other: int
    start: int
    length: int


@dataclass
class ComplexBall:
    presentation: Presentation
    calc: GroupCalculator
    radius: int
    factor_window: int
    base: VertexKey = None
    k: int = 0
    vertices: Dict[VertexKey, XVertex] = field(default_factory=dict)
    edges: Dict[EdgeKey, XEdge] = field(default_factory=dict)
    polygons: List[XPolygon] = field(default_factory=list)
    polygon_index: Dict[PolygonKey, int] = field(default_factory=dict)
    edge_polygons: Dict[EdgeKey, List[int]] = field(default_factory=dict)
    max_cells: int = MAX_BALL_CELLS

    # --- Queries ---

    @property
    def unconfirmed(self) -> bool:
        return any(not v.confirmed for v in self.vertices.values())

    def cell_count(self) -> int:
        return len(self.vertices) + len(self.edges) + len(self.polygons)

    def polygon(self, polygon_id: int) -> XPolygon:
        try:
            return self.polygons[polygon_id]
        except IndexError:
            raise InputError(f"Unknown polygon id {polygon_id}", {"polygon": polygon_id}) from None

    def vertex_by_id(self, vertex_id: int) -> XVertex:
        return self._vertex_list[vertex_id]

    def edge_by_id(self, edge_id: int) -> XEdge:
        return self._edge_list[edge_id]

    @cached_property
    def _vertex_list(self) -> List[XVertex]:
        return list(self.vertices.values())

    @cached_property
    def _edge_list(self) -> List[XEdge]:
        return list(self.edges.values())

    def is_closed(self, polygon: XPolygon) -> bool:
        """Every polygon through an edge of `polygon` is in the ball."""
        return all(self.edges[e].complete for e in polygon.edges)

    def polygons_at(self, vertex: VertexKey) -> List[int]:
        return sorted({pid for e in self.edges.values() if vertex in e.key for pid in self.edge_polygons[e.key]})

    def sides(self, polygon: XPolygon) -> int:
        """Side count of the polygon in X_k."""
        return len(polygon) * (self.k + 1)

    def graph(self) -> nx.Graph:
        """1-skeleton of X on vertex keys."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(e.ends for e in self.edges.values())
        return g

    def subdivided_graph(self) -> nx.Graph:
        """1-skeleton of X_k on cells ("v", vertex) and ("s", edge, t)."""
        if not self.k:
            return nx.relabel_nodes(self.graph(), {v: ("v", v) for v in self.vertices})
        g = nx.Graph()
        g.add_nodes_from(("v", v) for v in self.vertices)
        for e in self.edges.values():
            chain = [("v", e.ends[0])] + [("s", e.key, t) for t in range(1, self.k + 1)] + [("v", e.ends[1])]
            nx.add_path(g, chain)
        return g

    def incidence_graph(self) -> nx.Graph:
        """Vertex/edge/polygon incidence graph with kind and factor labels."""
        g = nx.Graph()
        for v in self.vertices.values():
            g.add_node(("v", v.id), kind="vertex", factor=v.factor)
        for e in self.edges.values():
            g.add_node(("e", e.id), kind="edge", factor=None)
            for end in e.ends:
                g.add_edge(("e", e.id), ("v", self.vertices[end].id))
        for polygon in self.polygons:
            g.add_node(("p", polygon.id), kind="polygon", factor=polygon.relator)
            for key in polygon.edges:
                g.add_edge(("p", polygon.id), ("e", self.edges[key].id))
        return g

    # --- Construction ---

    def vertex_key(self, g: Word, factor_id: int) -> Tuple[VertexKey, bool]:
        coset = self.calc.coset_id(self.calc.fp.invert(g), factor_id)
        return (factor_id, coset.key), coset.confirmed

    def _reduce(self, *words: Word) -> Word:
        return self.calc.dehn_reduce(self.calc.fp.product(*words))

    def _add_vertex(self, rep: Word, factor_id: int) -> VertexKey:
        key, confirmed = self.vertex_key(rep, factor_id)
        if key not in self.vertices:
            self.vertices[key] = XVertex(len(self.vertices), key, rep, confirmed)
            if not confirmed:
                logger.warning(f"Coset of {self.calc.fp.format_word(rep)} in factor {factor_id} is unconfirmed")
        return key

    def add_polygon(self, anchor: Word, relator_index: int) -> int:
        """Add P(anchor, relator) if new; returns its polygon id."""
        word = self.presentation.relators[relator_index].word
        length = len(word)
        anchor = self._reduce(anchor)
        corners = []
        for j in range(length):
            rep = self._reduce(anchor, word[:j])
            corners.append((rep, word[j][0]))
        keys = [self.vertex_key(rep, f)[0] for rep, f in corners]
        edge_keys = tuple(frozenset((keys[j], keys[(j + 1) % length])) for j in range(length))
        polygon_key = frozenset(edge_keys)
        if polygon_key in self.polygon_index:
            return self.polygon_index[polygon_key]
        if len(set(keys)) != length or len(polygon_key) != length:
            raise VerificationError(
                f"Polygon boundary of relator {relator_index} is not embedded",
                {"anchor": self.calc.fp.format_word(anchor)},
            )
        for rep, f in corners:
            self._add_vertex(rep, f)
        for j, key in enumerate(edge_keys):
            if key not in self.edges:
                witness = corners[(j + 1) % length][0] if j + 1 < length else anchor
                self.edges[key] = XEdge(len(self.edges), key, (keys[j], keys[(j + 1) % length]), witness)
                self.edge_polygons[key] = []
        polygon = XPolygon(len(self.polygons), polygon_key, relator_index, anchor, tuple(keys), edge_keys)
        self.polygons.append(polygon)
        self.polygon_index[polygon_key] = polygon.id
        for key in edge_keys:
            self.edge_polygons[key].append(polygon.id)
        if self.cell_count() > self.max_cells:
            raise ResourceBoundError(
                f"X ball exceeds {self.max_cells} cells",
                {"radius": self.radius, "max_cells": self.max_cells},
            )
        return polygon.id

    def expand(self, vertex: VertexKey) -> List[int]:
        """Add every polygon through `vertex` whose anchor lies in the factor window."""
        v = self.vertices[vertex]
        fp = self.calc.fp
        factor = fp.factor(v.factor)
        added = []
        for index, relator in enumerate(self.presentation.relators):
            for j, (f, _) in enumerate(relator.word):
                if f != v.factor:
                    continue
                prefix_inverse = fp.invert(relator.word[:j])
                for h in factor.elements_within(self.factor_window):
                    middle = () if factor.is_identity(h) else ((f, h),)
                    added.append(self.add_polygon(fp.product(v.rep, middle, prefix_inverse), index))
        v.expanded = True
        return sorted(set(added))

    def close_edge(self, edge: EdgeKey) -> List[int]:
        """Add every polygon through `edge`; afterwards the edge is complete."""
        e = self.edges[edge]
        if e.complete:
            return list(self.edge_polygons[edge])
        fp = self.calc.fp
        pair = {e.ends[0][0], e.ends[1][0]}
        for index, relator in enumerate(self.presentation.relators):
            word = relator.word
            length = len(word)
            for m in range(length):
                if {word[m][0], word[(m + 1) % length][0]} == pair:
                    self.add_polygon(fp.multiply(e.witness, fp.invert(word[:m + 1])), index)
        e.complete = True
        return list(self.edge_polygons[edge])

    def recompute_distances(self) -> None:
        lengths = nx.single_source_shortest_path_length(self.graph(), self.base)
        for key, v in self.vertices.items():
            v.distance = lengths.get(key)

    def subdivide(self, k: int) -> "ComplexBall":
        """
        The same ball viewed as a portion of X_k.

        Args:
            k: Even number of new vertices per edge

        Returns:
            A shallow copy sharing cells with this ball
        """
        validate_subdivision(k)
        result = copy.copy(self)
        result.k = k
        return result


def build_x_ball(p: Presentation, radius: int, calc: Optional[GroupCalculator] = None,
                 factor_window: int = DEFAULT_FACTOR_WINDOW, base: Optional[Tuple[Word, int]] = None,
                 max_cells: int = MAX_BALL_CELLS) -> ComplexBall:
    """
    Build the ball of radius `radius` about a base vertex of X.

    Vertices at distance < radius are expanded through the factor window and
    the polygons found by expansion are closed.

    Args:
        p: A C'(1/6) presentation
        radius: 1-skeleton radius in the unsubdivided metric
        calc: Group calculator for p, built when omitted
        factor_window: Norm bound on stabiliser elements used when expanding a vertex
        base: (representative word, factor id) of the base vertex; defaults to the
            identity coset of the first relator's first factor

    Returns:
        ComplexBall with distances and completeness flags
    """
    validate_radius(radius)
    calc = calc or GroupCalculator(p)
    if not p.relators:
        raise InputError("Presentation has no relators", {"name": p.name})
    rep, factor_id = base if base is not None else ((), p.relators[0].word[0][0])
    ball = ComplexBall(p, calc, radius, factor_window, max_cells=max_cells)
    ball.base = ball._add_vertex(calc.dehn_reduce(rep), factor_id)
    ball.vertices[ball.base].distance = 0
    while True:
        pending = [v.key for v in ball.vertices.values()
                   if not v.expanded and v.distance is not None and v.distance < radius]
        if not pending:
            break
        for key in pending:
            for pid in ball.expand(key):
                for edge in ball.polygons[pid].edges:
                    ball.close_edge(edge)
        ball.recompute_distances()
    logger.info(
        f"X ball r={radius}: {len(ball.vertices)} vertices, {len(ball.edges)} edges, {len(ball.polygons)} polygons"
    )
    if ball.unconfirmed:
        logger.warning("X ball has unconfirmed coset identifications beyond the search bound")
    return ball


# --- Pieces ---

def cyclic_runs(indices: Iterable[int], length: int) -> List[Tuple[int, int]]:
    """Maximal cyclic runs (start, size) of a set of indices in Z/length."""
    present = set(indices)
    if len(present) == length:
        return [(0, length)]
    runs = []
    for j in sorted(present):
        if (j - 1) % length in present:
            continue
        size = 1
        while (j + size) % length in present:
            size += 1
        runs.append((j, size))
    return runs


def shared_runs(b: ComplexBall, polygon: XPolygon) -> List[XPiece]:
    """Maximal runs of the polygon's boundary shared with each other polygon in the ball."""
    by_other: Dict[int, List[int]] = {}
    for j, edge in enumerate(polygon.edges):
        for other in b.edge_polygons[edge]:
            if other != polygon.id:
                by_other.setdefault(other, []).append(j)
    pieces = []
    for other in sorted(by_other):
        for start, size in cyclic_runs(by_other[other], len(polygon)):
            pieces.append(XPiece(polygon.id, other, start, size))
    return pieces


def maximal_pieces(b: ComplexBall) -> List[XPiece]:
    """Shared runs of every closed polygon; lengths are in X (multiply by k+1 for X_k)."""
    found = []
    for polygon in b.polygons:
        if b.is_closed(polygon):
            found.extend(shared_runs(b, polygon))
    return found


def require_complete(b: ComplexBall, edges: Iterable[EdgeKey]) -> None:
    for edge in edges:
        if not b.edges[edge].complete:
            raise IncompleteError(
                "Polygon incidences at an edge near the ball boundary may be missing",
                {"edge": b.edges[edge].id, "radius": b.radius},
            )


def is_piece(b: ComplexBall, path: Sequence[EdgeKey]) -> bool:
    """
    Decide whether an edge path of X is a piece.

    Single edges are pieces; longer paths must lie in the boundaries of two distinct polygons.
    """
    if not path:
        raise InputError("A piece needs at least one edge", {})
    for edge in path:
        if edge not in b.edges:
            raise InputError("Path edge is not in the ball", {})
    if len(path) == 1:
        return True
    require_complete(b, path)
    common = set(b.edge_polygons[path[0]])
    for edge in path[1:]:
        common &= set(b.edge_polygons[edge])
    return len(common) >= 2


# --- Far-apart ---

def cell_position(b: ComplexBall, polygon: XPolygon, cell: Cell) -> int:
    """Position of an X_k cell on the polygon's boundary: vertex q -> 2q, edge q -> 2q + 1."""
    step = b.k + 1
    kind = cell[0]
    if kind == "v":
        try:
            return 2 * step * polygon.vertices.index(cell[1])
        except ValueError:
            raise InputError("Vertex is not on the polygon boundary", {"polygon": polygon.id}) from None
    try:
        j = polygon.edges.index(cell[1])
    except ValueError:
        raise InputError("Edge is not on the polygon boundary", {"polygon": polygon.id}) from None
    forward = b.edges[cell[1]].ends[0] == polygon.vertices[j]
    offset = cell[2]
    if kind == "s":
        if not 1 <= offset <= b.k:
            raise InputError(f"Subdivision vertex {offset} out of range for k={b.k}", {"k": b.k})
        return 2 * (j * step + (offset if forward else step - offset))
    if kind == "e":
        if not 0 <= offset <= b.k:
            raise InputError(f"Sub-edge {offset} out of range for k={b.k}", {"k": b.k})
        return 2 * (j * step + (offset if forward else b.k - offset)) + 1
    raise InputError(f"Unknown cell kind {kind!r}", {"cell": repr(cell)})


def cell_at(b: ComplexBall, polygon: XPolygon, position: int) -> Cell:
    """The X_k cell at a boundary position (inverse of cell_position, taken cyclically)."""
    step = b.k + 1
    position %= 2 * len(polygon) * step
    j, offset = divmod(position // 2, step)
    edge = polygon.edges[j]
    forward = b.edges[edge].ends[0] == polygon.vertices[j]
    if position % 2:
        return ("e", edge, offset if forward else b.k - offset)
    if offset == 0:
        return ("v", polygon.vertices[j])
    return ("s", edge, offset if forward else step - offset)


def cover_count(b: ComplexBall, polygon: XPolygon, first_edge: int, edge_count: int,
                 runs: List[XPiece]) -> int:
    """Greedy minimal number of X_k pieces covering `edge_count` boundary edges from `first_edge`."""
    step = b.k + 1
    total = len(polygon) * step
    length = len(polygon)
    covered = 0
    count = 0
    while covered < edge_count:
        q = (first_edge + covered) % total
        j = q // step
        furthest = j
        for run in runs:
            offset = (j - run.start) % length
            if offset < run.length:
                furthest = max(furthest, j + run.length - 1 - offset)
        reach = (furthest - j) * step + (step - q % step)
        covered += reach
        count += 1
    return count


def piece_cover_counts(b: ComplexBall, polygon: XPolygon, t1: Cell, t2: Cell) -> List[int]:
    """Minimal piece counts of the valid boundary arcs containing both cells."""
    total = len(polygon) * (b.k + 1)
    a, c = cell_position(b, polygon, t1), cell_position(b, polygon, t2)
    runs = shared_runs(b, polygon)
    counts = []
    for start, end in ((a, c), (c, a)):
        span = (end - start) % (2 * total)
        positions = [(start + i) % (2 * total) for i in range(span + 1)]
        edge_positions = [pos for pos in positions if pos % 2]
        if len(edge_positions) > total - 1:
            continue
        if not edge_positions:
            counts.append(1)
            continue
        first_edge = (edge_positions[0] - 1) // 2
        arc_edges = {polygon.edges[((first_edge + i) % total) // (b.k + 1)] for i in range(len(edge_positions))}
        require_complete(b, arc_edges)
        counts.append(cover_count(b, polygon, first_edge, len(edge_positions), runs))
    return counts


def far_apart(b: ComplexBall, polygon: XPolygon, t1: Cell, t2: Cell) -> bool:
    """
    No boundary path of the polygon containing both cells is a concatenation of fewer than four pieces.

    Raises:
        IncompleteError: If an arc edge may miss polygon incidences
    """
    if t1 == t2:
        return False
    counts = piece_cover_counts(b, polygon, t1, t2)
    return all(count >= FAR_APART_MIN_PIECES for count in counts)


def edge_cell(b: ComplexBall, polygon: XPolygon, j: int, s: int = 0) -> Cell:
    """The s-th X_k sub-edge of the polygon's j-th edge, counted along the polygon's orientation."""
    edge = polygon.edges[j]
    forward = b.edges[edge].ends[0] == polygon.vertices[j]
    return ("e", edge, s if forward else b.k - s)


def vertex_cell(polygon: XPolygon, j: int) -> Cell:
    return ("v", polygon.vertices[j])


# --- Audits ---

@dataclass
class XSmallCancellationReport:
    passed: bool
    checked_polygons: int
    max_ratio: Fraction
    violation: Optional[XPiece] = None


def check_small_cancellation_x(b: ComplexBall, lam: Fraction = DEFAULT_LAMBDA) -> XSmallCancellationReport:
    """|P| < lam·|∂R| for every shared run P of every closed polygon R."""
    report = XSmallCancellationReport(True, 0, Fraction(0))
    for polygon in b.polygons:
        if not b.is_closed(polygon):
            continue
        report.checked_polygons += 1
        for piece in shared_runs(b, polygon):
            ratio = Fraction(piece.length, len(polygon))
            report.max_ratio = max(report.max_ratio, ratio)
            if not ratio < lam and report.passed:
                report.passed = False
                report.violation = piece
    if not report.passed:
        logger.info(f"C'(1/6) fails in X at polygon {report.violation.polygon}")
    return report


def check_embedded(b: ComplexBall) -> bool:
    return all(
        len(set(p.vertices)) == len(p) and len(set(p.edges)) == len(p) for p in b.polygons
    )


def is_convex_set(b: ComplexBall, vertices: Iterable[VertexKey],
                  distances: Optional[Dict[VertexKey, Dict[VertexKey, int]]] = None) -> Optional[VertexKey]:
    """
    Geodesic convexity of a vertex set in the ball's 1-skeleton.

    Returns:
        None when convex, otherwise a vertex outside the set on a geodesic between two members
    """
    g = b.graph()
    distances = {} if distances is None else distances
    inside = set(vertices)

    def from_vertex(v):
        if v not in distances:
            distances[v] = nx.single_source_shortest_path_length(g, v)
        return distances[v]

    for u, v in itertools.combinations(sorted(inside, key=lambda x: b.vertices[x].id), 2):
        du, dv = from_vertex(u), from_vertex(v)
        d = du.get(v)
        if d is None:
            return u
        for w, dw in du.items():
            if dw <= d and w not in inside and dw + dv.get(w, d + 1) == d:
                return w
    return None


def check_convex(b: ComplexBall, polygons: Optional[Iterable[int]] = None) -> bool:
    """Every geodesic of the ball's 1-skeleton between two vertices of a polygon stays in it."""
    distances: Dict[VertexKey, Dict[VertexKey, int]] = {}
    for pid in polygons if polygons is not None else range(len(b.polygons)):
        escape = is_convex_set(b, b.polygons[pid].vertices, distances)
        if escape is not None:
            logger.info(f"Polygon {pid} is not convex: geodesic leaves through vertex {b.vertices[escape].id}")
            return False
    return True


def check_rebuild_isomorphic(b: ComplexBall, vertex: VertexKey) -> bool:
    """
    Rebuild the ball from another base vertex and compare labelled incidence graphs.

    Only meaningful when every factor is finite and the ball is the whole complex.
    """
    if not all(f.is_finite for f in b.presentation.factors):
        raise InputError("Rebuild comparison needs every factor to be finite", {"name": b.presentation.name})
    v = b.vertices[vertex]
    rebuilt = build_x_ball(b.presentation, b.radius, b.calc, b.factor_window, (v.rep, v.factor))

    def match(n1, n2):
        return n1["kind"] == n2["kind"] and n1["factor"] == n2["factor"]

    return nx.is_isomorphic(b.incidence_graph(), rebuilt.incidence_graph(), node_match=match)
