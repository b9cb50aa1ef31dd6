"""
Finite wallspaces and the principal component of their dual cube complex.
"""
import itertools
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import pandas as pd

from src.config import DEFAULT_MAX_CLIQUE, MAX_DUAL_VERTICES
from src.domain.blowup import BlowupBall, EGNode
from src.domain.freeprod import Word
from src.domain.walls import Wall, core_nodes
from src.utils.constants import PROFILE_IN_CORE, PROFILE_OUTSIDE, PROFILE_UNDECIDED, WALL_FIRST_TYPE
from src.utils.exceptions import InputError, ResourceBoundError, UndecidedError, VerificationError

logger = logging.getLogger(__name__)

Orientation = Tuple[bool, ...]


@dataclass
class FiniteWallspace:
    """
    Distinct walls on a finite vertex set.

    matrix[w, i] is True when vertex i lies on the '+' side of wall w; walls inducing the
    same partition are merged and counted in multiplicity.
    """

    vertices: List[Any]
    walls: List[Wall]
    multiplicity: List[int]
    matrix: np.ndarray

    @cached_property
    def index(self) -> Dict[Any, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def distance(self, x: Any, y: Any) -> int:
        """Number of distinct walls separating x and y."""
        i, j = self.index[x], self.index[y]
        return int(np.count_nonzero(self.matrix[:, i] != self.matrix[:, j]))


def restrict(walls: Sequence[Wall], vertices: Sequence[Any]) -> FiniteWallspace:
    """
    Keep the walls that label every vertex and split the set, merging identical partitions.

    Raises:
        InputError: If the vertex set is empty
    """
    vertices = list(vertices)
    if not vertices:
        raise InputError("Cannot restrict a wallspace to an empty vertex set", {})
    kept: List[Wall] = []
    multiplicity: List[int] = []
    rows: List[np.ndarray] = []
    seen: Dict[bytes, int] = {}
    skipped = 0
    for wall in walls:
        if not wall.labels(vertices):
            skipped += 1
            continue
        row = np.fromiter((wall.sides[v] for v in vertices), dtype=bool, count=len(vertices))
        if row.all() or not row.any():
            continue
        canonical = (row if not row[0] else ~row).tobytes()
        if canonical in seen:
            multiplicity[seen[canonical]] += 1
            continue
        seen[canonical] = len(kept)
        kept.append(wall)
        multiplicity.append(1)
        rows.append(row)
    if skipped:
        logger.debug(f"{skipped} walls leave some vertex of the region unlabelled")
    matrix = np.vstack(rows) if rows else np.zeros((0, len(vertices)), dtype=bool)
    logger.info(f"Wallspace on {len(vertices)} vertices: {len(kept)} distinct walls from {len(walls)}")
    return FiniteWallspace(vertices, kept, multiplicity, matrix)


def restrict_ball(b: BlowupBall, walls: Sequence[Wall], core_radius: int,
                  fibre_core_radius: Optional[int] = None) -> FiniteWallspace:
    nodes = sorted(core_nodes(b, core_radius, fibre_core_radius), key=b.node_id)
    return restrict(walls, nodes)


# --- Dual complex ---

@dataclass
class DualCubeComplex:
    wallspace: FiniteWallspace
    vertices: List[Orientation]
    index: Dict[Orientation, int]
    principal: List[int]
    graph: nx.Graph
    crossing: np.ndarray

    def principal_vertex(self, x: Any) -> int:
        return self.principal[self.wallspace.index[x]]

    def flip(self, vertex: int, walls: Iterable[int]) -> Optional[int]:
        orientation = list(self.vertices[vertex])
        for w in walls:
            orientation[w] = not orientation[w]
        return self.index.get(tuple(orientation))

    @cached_property
    def links(self) -> List[nx.Graph]:
        """Link of each vertex: walls flippable there, joined when both flips span a square."""
        result = []
        for v in range(len(self.vertices)):
            link = nx.Graph()
            link.add_nodes_from(self.graph.edges[v, u]["wall"] for u in self.graph.neighbors(v))
            for w1, w2 in itertools.combinations(sorted(link.nodes), 2):
                if self.flip(v, (w1, w2)) is not None:
                    link.add_edge(w1, w2)
            result.append(link)
        return result


def _intersections(fw: FiniteWallspace) -> np.ndarray:
    """(2W x 2W) table of non-empty halfspace intersections; halfspace w is '+', W + w is '-'."""
    halves = np.vstack([fw.matrix, ~fw.matrix]).astype(np.int64)
    return (halves @ halves.T) > 0


def dual(fw: FiniteWallspace, max_vertices: int = MAX_DUAL_VERTICES) -> DualCubeComplex:
    """
    Consistent orientations reachable from principal ones by single flips.

    Raises:
        ResourceBoundError: If more than max_vertices orientations are reached
    """
    n = len(fw.walls)
    meets = _intersections(fw)
    walls = np.arange(n)

    def halfspace_ids(orientation: np.ndarray) -> np.ndarray:
        return np.where(orientation, walls, walls + n)

    vertices: List[Orientation] = []
    index: Dict[Orientation, int] = {}
    principal = []
    queue = deque()
    for i in range(len(fw.vertices)):
        orientation = tuple(bool(x) for x in fw.matrix[:, i])
        if orientation not in index:
            index[orientation] = len(vertices)
            vertices.append(orientation)
            queue.append(orientation)
        principal.append(index[orientation])
    graph = nx.Graph()
    graph.add_nodes_from(range(len(vertices)))
    while queue:
        orientation = queue.popleft()
        current = np.array(orientation, dtype=bool)
        chosen = halfspace_ids(current)
        for w in range(n):
            flipped = w + n if current[w] else w
            others = np.delete(chosen, w)
            if not meets[flipped, others].all():
                continue
            nxt = orientation[:w] + (not orientation[w],) + orientation[w + 1:]
            if nxt not in index:
                if len(vertices) >= max_vertices:
                    raise ResourceBoundError(
                        f"Dual complex exceeds {max_vertices} vertices", {"max_vertices": max_vertices}
                    )
                index[nxt] = len(vertices)
                vertices.append(nxt)
                queue.append(nxt)
            graph.add_edge(index[orientation], index[nxt], wall=w)
    crossing = np.zeros((n, n), dtype=bool)
    for w1, w2 in itertools.combinations(range(n), 2):
        crossing[w1, w2] = crossing[w2, w1] = bool(
            meets[w1, w2] and meets[w1, w2 + n] and meets[w1 + n, w2] and meets[w1 + n, w2 + n]
        )
    logger.info(f"Dual complex: {len(vertices)} vertices, {graph.number_of_edges()} edges, {n} walls")
    return DualCubeComplex(fw, vertices, index, principal, graph, crossing)


def check_median(c: DualCubeComplex) -> bool:
    """The majority vote of every triple of principal vertices is a vertex."""
    principal = sorted(set(c.principal))
    for a, b, d in itertools.combinations(principal, 3):
        votes = np.array([c.vertices[a], c.vertices[b], c.vertices[d]], dtype=np.int8).sum(axis=0)
        if tuple(bool(x) for x in votes >= 2) not in c.index:
            logger.info(f"Median of dual vertices {a}, {b}, {d} is missing")
            return False
    return True


def check_distances(c: DualCubeComplex) -> bool:
    """Graph distance between principal vertices equals the number of separating walls."""
    principal = sorted(set(c.principal))
    for a in principal:
        lengths = nx.single_source_shortest_path_length(c.graph, a)
        for b in principal:
            hamming = sum(x != y for x, y in zip(c.vertices[a], c.vertices[b]))
            if lengths.get(b) != hamming:
                return False
    return True


def check_flag_links(c: DualCubeComplex) -> bool:
    """Every clique of every link spans a cube at that vertex."""
    for v, link in enumerate(c.links):
        for clique in nx.find_cliques(link):
            if len(clique) < 3:
                continue
            for size in range(3, len(clique) + 1):
                for subset in itertools.combinations(clique, size):
                    if c.flip(v, subset) is None:
                        logger.info(f"Link of dual vertex {v} is not flag")
                        return False
    return True


def dimension(c: DualCubeComplex) -> int:
    """Largest cube dimension, read off the link cliques."""
    best = 0
    for link in c.links:
        for clique in nx.find_cliques(link):
            best = max(best, len(clique))
    return best


def crossing_graph(c: DualCubeComplex) -> nx.Graph:
    g = nx.Graph()
    n = len(c.wallspace.walls)
    g.add_nodes_from(range(n))
    g.add_edges_from((int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(c.crossing))))
    return g


def max_crossing_family(c: DualCubeComplex) -> int:
    g = crossing_graph(c)
    return max((len(clique) for clique in nx.find_cliques(g)), default=0)


def fibre_embedding_check(c: DualCubeComplex, nodes: Sequence[Any], edges: Iterable[Tuple[Any, Any]]) -> bool:
    """The principal map is injective on `nodes` and sends the given edges to dual edges."""
    images = [c.principal_vertex(x) for x in nodes]
    if len(set(images)) != len(images):
        return False
    return all(c.graph.has_edge(c.principal_vertex(x), c.principal_vertex(y)) for x, y in edges)


def fibre_edges(b: BlowupBall, fw: FiniteWallspace, vertex) -> Tuple[List[EGNode], List[Tuple[EGNode, EGNode]]]:
    """Region vertices over a base vertex and the fibre edges between them."""
    nodes = [x for x in fw.vertices if x[0] == "f" and x[1] == vertex]
    inside = set(nodes)
    edges = [(x, y) for x, y in b.graph.subgraph(inside).edges]
    return nodes, edges


# --- Properness ---

@dataclass
class ProfileRow:
    element: str
    length: int
    distance: Optional[int]
    status: str

    @property
    def in_core(self) -> bool:
        return self.status == PROFILE_IN_CORE


@dataclass
class ProfileReport:
    rows: List[ProfileRow]
    shell_minima: Dict[int, int] = field(default_factory=dict)

    @property
    def undecided(self) -> int:
        return sum(1 for r in self.rows if r.status == PROFILE_UNDECIDED)

    @property
    def outside(self) -> int:
        return sum(1 for r in self.rows if r.status == PROFILE_OUTSIDE)

    @property
    def monotone(self) -> bool:
        minima = [self.shell_minima[n] for n in sorted(self.shell_minima)]
        return all(x <= y for x, y in zip(minima, minima[1:]))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [[r.element, r.length, r.distance, r.status] for r in self.rows],
            columns=["element", "length", "wall_distance", "status"],
        )


def word_length(b: BlowupBall, g: Word) -> int:
    """Word length over the union of the factors' generating sets."""
    fp = b.calc.fp
    return sum(fp.factor(f).norm(x) for f, x in g)


def translate(b: BlowupBall, g: Word, node: EGNode) -> Optional[EGNode]:
    """
    g·x for a fibre vertex x = ("f", v, p) of the ball, or None when g·v is not in the ball.

    Raises:
        UndecidedError: If the fibre coordinate cannot be computed within the search bounds
    """
    if node[0] != "f":
        raise InputError("Only fibre vertices are translated", {"node": repr(node)})
    fp = b.calc.fp
    v = b.base.vertices[node[1]]
    target = b.calc.dehn_reduce(fp.multiply(tuple(g), v.rep))
    key, _ = b.base.vertex_key(target, v.factor)
    if key not in b.base.vertices:
        return None
    rep = b.base.vertices[key].rep
    h = b.calc.factor_element(fp.product(fp.invert(rep), tuple(g), v.rep), v.factor)
    model = b.model(key)
    return ("f", key, model.act(h, node[2]))


def properness_profile(b: BlowupBall, fw: FiniteWallspace, x: EGNode, elements: Sequence[Word]) -> ProfileReport:
    """
    Wall distance from x to g·x for each listed g.

    Rows whose g·x leaves the region are marked outside; rows whose translate cannot be
    computed within the search bounds are marked undecided and kept out of the shell minima.
    """
    if x not in fw.index:
        raise InputError("Basepoint is not in the wallspace region", {"node": repr(x)})
    fp = b.calc.fp
    report = ProfileReport([])
    for g in elements:
        length = word_length(b, g)
        try:
            image = translate(b, g, x)
        except UndecidedError as exc:
            logger.debug(f"Translate by {fp.format_word(g)} undecided: {exc.message}")
            report.rows.append(ProfileRow(fp.format_word(g), length, None, PROFILE_UNDECIDED))
            continue
        if image is None or image not in fw.index:
            report.rows.append(ProfileRow(fp.format_word(g), length, None, PROFILE_OUTSIDE))
            continue
        distance = fw.distance(x, image)
        report.rows.append(ProfileRow(fp.format_word(g), length, distance, PROFILE_IN_CORE))
        report.shell_minima[length] = min(report.shell_minima.get(length, distance), distance)
    if report.outside:
        logger.warning(f"{report.outside} profile rows fall outside the core")
    if report.undecided:
        logger.warning(f"{report.undecided} profile rows undecided")
    return report


# --- Crossing configurations ---

@dataclass(frozen=True)
class Configuration:
    walls: Tuple[int, ...]
    variants: Tuple[str, ...]
    certificate: Optional[Any]
    certificate_kind: Optional[str]

    @property
    def signature(self) -> Tuple:
        return len(self.walls), self.variants, self.certificate_kind


def crossing_configurations(c: DualCubeComplex, b: Optional[BlowupBall] = None,
                            max_clique: int = DEFAULT_MAX_CLIQUE) -> List[Configuration]:
    """
    Maximal pairwise-crossing families of at least two walls, each certified by a common
    vertex of the walls' projections to X. A family of first-type walls is certified by
    its fibre vertex, any other family by a vertex of a common polygon.

    Raises:
        ResourceBoundError: If a family exceeds max_clique walls
        VerificationError: If a family of three or more walls has no certificate
    """
    walls = c.wallspace.walls
    order = (lambda v: b.base.vertices[v].id) if b is not None else repr
    found = []
    for clique in nx.find_cliques(crossing_graph(c)):
        if len(clique) > max_clique:
            raise ResourceBoundError(f"Crossing family of {len(clique)} walls exceeds {max_clique}",
                                     {"max_clique": max_clique})
        if len(clique) < 2:
            continue
        members = tuple(sorted(clique))
        variants = tuple(sorted(walls[w].variant for w in members))
        projections = [walls[w].projection for w in members]
        common = frozenset.intersection(*projections) if all(projections) else frozenset()
        certificate, kind = None, None
        if common:
            certificate = min(common, key=order)
            kind = "fibre" if all(v == WALL_FIRST_TYPE for v in variants) else "polygon"
        elif len(members) >= 3:
            raise VerificationError(
                "Pairwise crossing walls have no common projection vertex",
                {"walls": list(members), "projected": sum(1 for p in projections if p)},
            )
        else:
            logger.warning(f"Crossing pair {list(members)} has no certificate")
        found.append(Configuration(members, variants, certificate, kind))
    found.sort(key=lambda conf: conf.walls)
    logger.info(f"{len(found)} maximal crossing configurations")
    return found


def configuration_types(configurations: Iterable[Configuration]) -> Dict[Tuple, int]:
    counts = Counter(conf.signature for conf in configurations)
    return dict(sorted(counts.items(), key=lambda item: repr(item[0])))


@dataclass
class StabilizationReport:
    radius: int
    types_at_radius: int
    types_at_next: int
    stable: bool


def stabilization(radius: int, types_r: Dict[Tuple, int], types_next: Dict[Tuple, int]) -> StabilizationReport:
    """Configuration types at core radius r and r + 1 coincide."""
    return StabilizationReport(radius, len(types_r), len(types_next), set(types_r) == set(types_next))
