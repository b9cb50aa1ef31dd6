"""
Disc diagrams over X: reducedness, classification, combinatorial Gauss-Bonnet and bounded search.

A diagram is a contractible planar complex given by its 2-cells as counter-clockwise
vertex cycles plus the edges lying on no 2-cell. Angles and curvatures are exact
rationals in units of pi.
"""
import logging
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from src.config import DEFAULT_MAX_AREA, DIAGRAM_MAX_STATES
from src.domain.devball import ComplexBall, VertexKey, cyclic_runs
from src.utils.constants import BRANCH_LADDER, BRANCH_SHELLS_OR_SPURS, BRANCH_SINGLE_CELL
from src.utils.exceptions import (
    ClassificationError,
    InputError,
    ResourceBoundError,
    VerificationError,
)

logger = logging.getLogger(__name__)

Corner = Tuple[int, int]
DEdge = FrozenSet[int]


@dataclass
class DiscDiagram:
    """
    Attributes:
        vertex_map: D-vertex -> X vertex key (or any label when the diagram is abstract)
        faces: Counter-clockwise D-vertex cycles of the 2-cells
        face_polygons: X polygon id of each 2-cell
        tree_edges: Edges lying on no 2-cell
    """

    vertex_map: Dict[int, VertexKey]
    faces: List[Tuple[int, ...]] = field(default_factory=list)
    face_polygons: List[Optional[int]] = field(default_factory=list)
    tree_edges: Set[DEdge] = field(default_factory=set)

    @property
    def area(self) -> int:
        return len(self.faces)

    @property
    def vertices(self) -> List[int]:
        return sorted(self.vertex_map)

    @cached_property
    def face_edges(self) -> List[List[DEdge]]:
        return [[frozenset((f[j], f[(j + 1) % len(f)])) for j in range(len(f))] for f in self.faces]

    @cached_property
    def edges(self) -> Set[DEdge]:
        found = set(self.tree_edges)
        for edges in self.face_edges:
            found.update(edges)
        return found

    @cached_property
    def edge_faces(self) -> Dict[DEdge, List[int]]:
        incidence: Dict[DEdge, List[int]] = {e: [] for e in self.edges}
        for index, edges in enumerate(self.face_edges):
            for e in edges:
                incidence[e].append(index)
        return incidence

    @cached_property
    def boundary_edges(self) -> Set[DEdge]:
        return {e for e, faces in self.edge_faces.items() if len(faces) <= 1}

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertex_map)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    def degree(self, v: int) -> int:
        return self.graph.degree(v)

    def corners_at(self, v: int) -> List[Corner]:
        return [(i, j) for i, f in enumerate(self.faces) for j, w in enumerate(f) if w == v]

    def euler_characteristic(self) -> int:
        return len(self.vertex_map) - len(self.edges) + len(self.faces)

    def validate(self) -> None:
        """
        Structural checks of a disc diagram.

        Raises:
            VerificationError: On dart conflicts, Euler characteristic != 1, disconnection or non-planarity
        """
        darts: Dict[Tuple[int, int], int] = {}
        for index, f in enumerate(self.faces):
            if len(set(f)) != len(f):
                raise VerificationError(f"Face {index} boundary is not embedded", {"face": index})
            for j in range(len(f)):
                dart = (f[j], f[(j + 1) % len(f)])
                if dart in darts:
                    raise VerificationError("Two faces traverse an edge in the same direction",
                                            {"faces": [darts[dart], index]})
                darts[dart] = index
        if any(len(faces) > 2 for faces in self.edge_faces.values()):
            raise VerificationError("An edge lies on more than two faces", {})
        if self.tree_edges & {e for e, faces in self.edge_faces.items() if faces}:
            raise VerificationError("A tree edge lies on a face", {})
        if self.vertex_map and not nx.is_connected(self.graph):
            raise VerificationError("Diagram is disconnected", {})
        if self.euler_characteristic() != 1:
            raise VerificationError(
                f"Diagram has Euler characteristic {self.euler_characteristic()}, expected 1",
                {"euler": self.euler_characteristic()},
            )
        if not nx.check_planarity(self.graph)[0]:
            raise VerificationError("Diagram 1-skeleton is not planar", {})


def verify_reduced(d: DiscDiagram) -> bool:
    """No two distinct faces sharing an edge map to the same X polygon."""
    d.validate()
    for faces in d.edge_faces.values():
        if len(faces) == 2:
            a, b = faces
            if d.face_polygons[a] is not None and d.face_polygons[a] == d.face_polygons[b]:
                return False
    return True


# --- Angles and curvature ---

def appendix_angles(d: DiscDiagram) -> Dict[Corner, Fraction]:
    """pi/2 at corners touching a boundary edge, 2pi/3 at the others."""
    angles = {}
    for i, f in enumerate(d.faces):
        edges = d.face_edges[i]
        for j in range(len(f)):
            touching = edges[j] in d.boundary_edges or edges[j - 1] in d.boundary_edges
            angles[(i, j)] = Fraction(1, 2) if touching else Fraction(2, 3)
    return angles


def curvatures(d: DiscDiagram, angles: Dict[Corner, Fraction]) -> Tuple[Dict[int, Fraction], List[Fraction]]:
    """
    Vertex and face curvatures in units of pi.

    kappa(v) = 2 - chi(link v) - sum of angles at v, with chi(link v) = deg v - corners at v;
    kappa(R) = sum of angles of R - |boundary R| + 2.

    Raises:
        InputError: If a corner has no angle
    """
    missing = [(i, j) for i, f in enumerate(d.faces) for j in range(len(f)) if (i, j) not in angles]
    if missing:
        raise InputError(f"{len(missing)} corners have no angle", {"corner": list(missing[0])})
    vertex_curvature = {}
    for v in d.vertices:
        corners = d.corners_at(v)
        link_chi = d.degree(v) - len(corners)
        vertex_curvature[v] = 2 - link_chi - sum((Fraction(angles[c]) for c in corners), Fraction(0))
    face_curvature = [
        sum((Fraction(angles[(i, j)]) for j in range(len(f))), Fraction(0)) - len(f) + 2
        for i, f in enumerate(d.faces)
    ]
    return vertex_curvature, face_curvature


def gauss_bonnet(d: DiscDiagram, angles: Dict[Corner, Fraction]) -> Fraction:
    """Total curvature in units of pi; equals 2 for every disc diagram."""
    vertex_curvature, face_curvature = curvatures(d, angles)
    return sum(vertex_curvature.values(), Fraction(0)) + sum(face_curvature, Fraction(0))


def check_gauss_bonnet(d: DiscDiagram, angles: Dict[Corner, Fraction]) -> None:
    total = gauss_bonnet(d, angles)
    if total != 2:
        raise VerificationError(f"Total curvature is {total}pi, expected 2pi", {"total": str(total)})


# --- Classification ---

@dataclass
class Classification:
    branch: str
    ladder: List[Tuple] = field(default_factory=list)
    shells: List[int] = field(default_factory=list)
    spurs: List[int] = field(default_factory=list)


def outer_runs(d: DiscDiagram, face: int) -> List[Tuple[int, int]]:
    """Maximal runs (start, length) of the face's boundary edges lying on the diagram boundary."""
    edges = d.face_edges[face]
    return cyclic_runs([j for j, e in enumerate(edges) if e in d.boundary_edges], len(edges))


def spurs(d: DiscDiagram) -> List[int]:
    return [v for v in d.vertices if d.degree(v) == 1]


def shells(d: DiscDiagram) -> List[int]:
    """
    Faces whose boundary edges on the diagram boundary form one proper run and whose inner
    path is a concatenation of at most three internal arcs.
    """
    found = []
    if d.area < 2:
        return found
    for i, f in enumerate(d.faces):
        runs = outer_runs(d, i)
        if len(runs) != 1 or runs[0][1] >= len(f):
            continue
        start, length = runs[0]
        inner = [f[(start + length + t) % len(f)] for t in range(len(f) - length + 1)]
        arcs = 1 + sum(1 for v in inner[1:-1] if d.degree(v) >= 3)
        if arcs <= 3:
            found.append(i)
    return found


def _closed_cells(d: DiscDiagram) -> List[Tuple]:
    cells = [("face", i) for i in range(d.area)]
    cells.extend(("edge", tuple(sorted(e))) for e in sorted(d.tree_edges, key=lambda e: sorted(e)))
    return cells


def _cell_vertices(d: DiscDiagram, cell: Tuple) -> Set[int]:
    return set(d.faces[cell[1]]) if cell[0] == "face" else set(cell[1])


def _cell_edges(d: DiscDiagram, cell: Tuple) -> Set[DEdge]:
    return set(d.face_edges[cell[1]]) if cell[0] == "face" else {frozenset(cell[1])}


def _components_without(d: DiscDiagram, cell: Tuple) -> int:
    """Connected components of D minus the closed cell."""
    removed_vertices = _cell_vertices(d, cell)
    removed_edges = _cell_edges(d, cell)
    g = nx.Graph()
    for v in d.vertices:
        if v not in removed_vertices:
            g.add_node(("v", v))
    for e in d.edges:
        if e in removed_edges:
            continue
        g.add_node(("e", e))
        for v in e:
            if v not in removed_vertices:
                g.add_edge(("e", e), ("v", v))
    for i in range(d.area):
        if cell == ("face", i):
            continue
        g.add_node(("f", i))
        for e in d.face_edges[i]:
            if e not in removed_edges:
                g.add_edge(("f", i), ("e", e))
        for v in d.faces[i]:
            if v not in removed_vertices:
                g.add_edge(("f", i), ("v", v))
    return nx.number_connected_components(g) if g.number_of_nodes() else 0


def is_ladder(d: DiscDiagram) -> Optional[List[Tuple]]:
    """
    The ladder decomposition c_1..c_n when D is a ladder, else None.

    Consecutive closed cells meet, non-consecutive ones are disjoint and removing
    any interior cell leaves exactly two components.
    """
    cells = _closed_cells(d)
    if len(cells) < 2:
        return None
    adjacency = nx.Graph()
    adjacency.add_nodes_from(cells)
    vertex_sets = {c: _cell_vertices(d, c) for c in cells}
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            if vertex_sets[a] & vertex_sets[b]:
                adjacency.add_edge(a, b)
    if not nx.is_connected(adjacency) or adjacency.number_of_edges() != len(cells) - 1:
        return None
    if max(deg for _, deg in adjacency.degree()) > 2:
        return None
    start = min((c for c in cells if adjacency.degree(c) == 1), key=cells.index)
    order = [start] + [v for _, v in nx.dfs_edges(adjacency, start)]
    for cell in order[1:-1]:
        if _components_without(d, cell) != 2:
            return None
    return order


def classify(d: DiscDiagram) -> Classification:
    """
    Certified branch of the classification of reduced disc diagrams.

    Raises:
        VerificationError: If d is not reduced
        ClassificationError: If no branch can be certified
    """
    if not verify_reduced(d):
        raise VerificationError("Diagram is not reduced; classification refused", {})
    if len(_closed_cells(d)) <= 1:
        return Classification(BRANCH_SINGLE_CELL)
    ladder = is_ladder(d)
    if ladder is not None:
        return Classification(BRANCH_LADDER, ladder=ladder)
    found_shells, found_spurs = shells(d), spurs(d)
    if len(found_shells) + len(found_spurs) >= 3:
        return Classification(BRANCH_SHELLS_OR_SPURS, shells=found_shells, spurs=found_spurs)
    raise ClassificationError(
        "Diagram is neither a single cell, a ladder, nor has three shells or spurs",
        {"area": d.area, "shells": found_shells, "spurs": found_spurs},
    )


def greendlinger_witness(d: DiscDiagram) -> Optional[int]:
    """A face whose boundary run on the diagram boundary is longer than half its perimeter."""
    for i, f in enumerate(d.faces):
        if any(2 * length > len(f) for _, length in outer_runs(d, i)):
            return i
    return None


def boundary_cycle(d: DiscDiagram) -> List[int]:
    """
    The boundary loop of a diagram without cut vertices, in the faces' orientation.

    Raises:
        InputError: If the boundary does not form a single simple cycle
    """
    successor: Dict[int, int] = {}
    darts = {(f[j], f[(j + 1) % len(f)]) for f in d.faces for j in range(len(f))}
    for u, v in sorted(darts):
        if (v, u) not in darts:
            if u in successor:
                raise InputError("Diagram boundary passes a vertex twice", {"vertex": u})
            successor[u] = v
    if d.tree_edges or not successor:
        raise InputError("Boundary cycle needs a diagram of faces only", {})
    start = min(successor)
    cycle = [start]
    while successor[cycle[-1]] != start:
        cycle.append(successor[cycle[-1]])
        if len(cycle) > len(successor):
            raise InputError("Diagram boundary is not a single cycle", {})
    if len(cycle) != len(successor):
        raise InputError("Diagram boundary is not a single cycle", {})
    return cycle


# --- Constructions ---

def diagram_from_polygons(b: ComplexBall, polygon_ids: Sequence[int]) -> DiscDiagram:
    """
    The disc diagram given by a union of polygons of X, oriented consistently.

    Raises:
        VerificationError: If the union cannot be oriented or is not a disc
    """
    if not polygon_ids:
        raise InputError("Need at least one polygon", {})
    ids = list(dict.fromkeys(polygon_ids))
    polygons = [b.polygon(pid) for pid in ids]
    numbering: Dict[VertexKey, int] = {}
    for polygon in polygons:
        for v in polygon.vertices:
            numbering.setdefault(v, b.vertices[v].id)
    orientation: Dict[int, int] = {0: 1}
    queue = deque([0])
    by_edge: Dict = {}
    for i, polygon in enumerate(polygons):
        for e in polygon.edges:
            by_edge.setdefault(e, []).append(i)

    def dart(i: int, j: int, sign: int) -> Tuple[VertexKey, VertexKey]:
        vs = polygons[i].vertices
        a, c = vs[j], vs[(j + 1) % len(vs)]
        return (a, c) if sign > 0 else (c, a)

    while queue:
        i = queue.popleft()
        for j, e in enumerate(polygons[i].edges):
            mine = dart(i, j, orientation[i])
            for other in by_edge[e]:
                if other == i:
                    continue
                jo = polygons[other].edges.index(e)
                needed = 1 if dart(other, jo, 1) == (mine[1], mine[0]) else -1
                if other in orientation:
                    if orientation[other] != needed:
                        raise VerificationError("Polygon union cannot be oriented", {"polygons": [ids[i], ids[other]]})
                else:
                    orientation[other] = needed
                    queue.append(other)
    if len(orientation) != len(polygons):
        raise VerificationError("Polygon union is not connected through edges", {"polygons": ids})
    faces = []
    for i, polygon in enumerate(polygons):
        cycle = [numbering[v] for v in polygon.vertices]
        faces.append(tuple(cycle if orientation[i] > 0 else [cycle[0]] + cycle[:0:-1]))
    diagram = DiscDiagram({n: v for v, n in numbering.items()}, faces, ids)
    diagram.validate()
    return diagram


def sample_polygon_diagrams(b: ComplexBall, count: int, rng: random.Random,
                            polygons: Optional[Iterable[int]] = None,
                            max_size: int = 5) -> Tuple[List[DiscDiagram], int]:
    """
    Up to `count` distinct diagrams built from edge-connected groups of polygons.

    Singletons and adjacent pairs come first, then groups grown at random across shared
    edges. Groups whose union is not a disc are counted, not returned.

    Returns:
        (diagrams, number of groups that did not assemble into a disc)
    """
    pool = sorted(polygons) if polygons is not None else [p.id for p in b.polygons]
    allowed = set(pool)

    def neighbours(group: Sequence[int]) -> List[int]:
        return sorted({other for pid in group for e in b.polygons[pid].edges
                       for other in b.edge_polygons[e] if other in allowed and other not in group})

    groups: List[List[int]] = [[pid] for pid in pool]
    groups.extend([pid, other] for pid in pool for other in neighbours([pid]) if other > pid)
    seen = {frozenset(g) for g in groups}
    attempts = 0
    while len(seen) < count and pool and attempts < 50 * count:
        attempts += 1
        group = [rng.choice(pool)]
        for _ in range(rng.randint(2, max_size) - 1):
            frontier = neighbours(group)
            if not frontier:
                break
            group.append(rng.choice(frontier))
        if frozenset(group) not in seen:
            seen.add(frozenset(group))
            groups.append(group)
    diagrams: List[DiscDiagram] = []
    skipped = 0
    for group in groups:
        if len(diagrams) == count:
            break
        try:
            diagrams.append(diagram_from_polygons(b, group))
        except VerificationError:
            skipped += 1
    logger.info(f"Sampled {len(diagrams)} polygon diagrams ({skipped} groups not discs)")
    return diagrams, skipped


class _UnionFind:
    def __init__(self):
        self.parent: Dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class _SearchState:
    boundary: List[int]
    labels: Dict[int, VertexKey]
    faces: List[Tuple[int, ...]]
    face_polygons: List[int]
    merges: List[Tuple[int, int]]
    edges: Set[DEdge]
    edge_face: Dict[DEdge, int]
    next_vertex: int


class _DiagramSearch:
    def __init__(self, b: ComplexBall, max_states: int, loop_length: int):
        self.ball = b
        self.max_states = max_states
        self.loop_length = loop_length
        self.states = 0
        self.rejected = 0
        self.failed: Set[Tuple] = set()

    def _canonical(self, boundary: List[int], labels: Dict[int, VertexKey]) -> Tuple:
        ids = [self.ball.vertices[labels[v]].id for v in boundary]
        if not ids:
            return ()
        return min(tuple(ids[i:] + ids[:i]) for i in range(len(ids)))

    @staticmethod
    def _fold(state: _SearchState) -> None:
        """Fold backtracks u v u into spurs until none remain."""
        changed = True
        while changed and len(state.boundary) >= 2:
            changed = False
            n = len(state.boundary)
            for i in range(n):
                a, c = state.boundary[i - 1], state.boundary[(i + 1) % n]
                if state.labels[a] != state.labels[c]:
                    continue
                if a != c:
                    state.merges.append((a, c))
                dropped = {i, (i + 1) % n}
                state.boundary = [a if w == c else w for k, w in enumerate(state.boundary) if k not in dropped]
                changed = True
                break

    def _placements(self, state: _SearchState):
        """Polygons along the maximal run through the first boundary edge, in polygon-id order."""
        n = len(state.boundary)
        labels = [state.labels[v] for v in state.boundary]
        first = frozenset((labels[0], labels[1]))
        if first not in self.ball.edges:
            return
        for pid in sorted(self.ball.edge_polygons[first]):
            polygon = self.ball.polygons[pid]
            length = len(polygon)
            verts = polygon.vertices
            for a in (i for i, v in enumerate(verts) if v == labels[0]):
                for direction in (1, -1):
                    if verts[(a + direction) % length] != labels[1]:
                        continue
                    forward = 1
                    while forward < min(length, n) and labels[(forward + 1) % n] == verts[(a + direction * (forward + 1)) % length]:
                        forward += 1
                    backward = 0
                    while forward + backward < min(length, n) and \
                            labels[(-backward - 1) % n] == verts[(a - direction * (backward + 1)) % length]:
                        backward += 1
                    yield pid, (a - direction * backward) % length, direction, -backward, forward + backward

    def _place(self, state: _SearchState, pid: int, a: int, direction: int, offset: int, run: int) -> Optional[_SearchState]:
        n = len(state.boundary)
        boundary = state.boundary[offset:] + state.boundary[:offset] if offset else list(state.boundary)
        polygon = self.ball.polygons[pid]
        length = len(polygon)
        run_vertices = boundary[:run + 1] if run < n else boundary + [boundary[0]]
        for i in range(run):
            e = frozenset((run_vertices[i], run_vertices[i + 1]))
            if state.edge_face.get(e) is not None and state.face_polygons[state.edge_face[e]] == pid:
                return None
        labels = dict(state.labels)
        next_vertex = state.next_vertex
        fresh = []
        for t in range(1, length - run):
            labels[next_vertex] = polygon.vertices[(a + direction * (run + t)) % length]
            fresh.append(next_vertex)
            next_vertex += 1
        merges = list(state.merges)
        if run == length:
            face = tuple(run_vertices[:length])
            if run_vertices[length] != run_vertices[0]:
                merges.append((run_vertices[0], run_vertices[length]))
        else:
            face = tuple(run_vertices + fresh)
        if run >= n:
            new_boundary = []
        elif run == length:
            new_boundary = [run_vertices[0]] + boundary[run + 1:]
        else:
            new_boundary = [run_vertices[0]] + fresh[::-1] + boundary[run:]
        face_index = len(state.faces)
        edge_face = dict(state.edge_face)
        edges = set(state.edges)
        for j in range(len(face)):
            e = frozenset((face[j], face[(j + 1) % len(face)]))
            edges.add(e)
            if e not in edge_face:
                edge_face[e] = face_index
        result = _SearchState(new_boundary, labels, state.faces + [face], state.face_polygons + [pid],
                              merges, edges, edge_face, next_vertex)
        if run == length and run_vertices[length] != run_vertices[0]:
            drop = run_vertices[length]
            result.boundary = [run_vertices[0] if w == drop else w for w in result.boundary]
        return result

    def _accept(self, state: _SearchState) -> Optional[DiscDiagram]:
        diagram = _assemble(state, list(range(self.loop_length)))
        try:
            if verify_reduced(diagram):
                return diagram
        except VerificationError as exc:
            logger.debug(f"Discarding candidate diagram of area {diagram.area}: {exc.message}")
        self.rejected += 1
        return None

    def search(self, state: _SearchState, budget: int) -> Optional[DiscDiagram]:
        """Depth-first search for a reduced filling; closed leaves that are not reduced are backtracked."""
        self.states += 1
        if self.states > self.max_states:
            raise ResourceBoundError(
                f"Diagram search exceeded {self.max_states} states",
                {"max_states": self.max_states},
            )
        self._fold(state)
        if len(state.boundary) < 2:
            return self._accept(state)
        if budget == 0:
            return None
        key = (self._canonical(state.boundary, state.labels), budget)
        if key in self.failed:
            return None
        rejected_before = self.rejected
        for pid, a, direction, offset, run in self._placements(state):
            placed = self._place(state, pid, a, direction, offset, run)
            if placed is None:
                continue
            found = self.search(placed, budget - 1)
            if found is not None:
                return found
        # cached only when no leaf below was refused for reducedness
        if self.rejected == rejected_before:
            self.failed.add(key)
        return None


def _assemble(state: _SearchState, boundary: List[int]) -> DiscDiagram:
    uf = _UnionFind()
    for a, c in state.merges:
        uf.union(a, c)
    faces = [tuple(uf.find(v) for v in f) for f in state.faces]
    face_edges = {frozenset((f[j], f[(j + 1) % len(f)])) for f in faces for j in range(len(f))}
    all_edges = {frozenset(uf.find(v) for v in e) for e in state.edges}
    n = len(boundary)
    for i in range(n):
        all_edges.add(frozenset((uf.find(boundary[i]), uf.find(boundary[(i + 1) % n]))))
    all_edges = {e for e in all_edges if len(e) == 2}
    vertex_map = {}
    for v, label in state.labels.items():
        vertex_map.setdefault(uf.find(v), label)
    used = {v for e in all_edges for v in e} | {v for f in faces for v in f}
    if not used and boundary:
        used = {uf.find(boundary[0])}
    vertex_map = {v: vertex_map[v] for v in sorted(used)}
    return DiscDiagram(vertex_map, faces, list(state.face_polygons), all_edges - face_edges)


def find_diagram(b: ComplexBall, boundary: Sequence[VertexKey], max_area: int = DEFAULT_MAX_AREA,
                 max_states: int = DIAGRAM_MAX_STATES) -> Optional[DiscDiagram]:
    """
    Search a reduced disc diagram with the given boundary loop and area at most max_area.

    Iterative deepening on the area returns a diagram of least area found within the bound.

    Args:
        b: X ball containing the loop
        boundary: Closed edge loop as a cyclic sequence of X vertex keys
        max_area: Largest area tried
        max_states: Resource bound on explored search states

    Returns:
        DiscDiagram or None when no diagram of area <= max_area exists in the ball

    Raises:
        InputError: If consecutive loop vertices are not joined by an edge of the ball
        ResourceBoundError: If the search exceeds max_states
    """
    loop = list(boundary)
    n = len(loop)
    if n == 1:
        raise InputError("A loop of one vertex has no edges; pass an empty loop instead", {})
    for i in range(n):
        if n > 1 and frozenset((loop[i], loop[(i + 1) % n])) not in b.edges:
            raise InputError("Boundary loop leaves the ball's 1-skeleton", {"position": i})
    if n == 0:
        return DiscDiagram({0: b.base})
    search = _DiagramSearch(b, max_states, n)
    for budget in range(max_area + 1):
        labels = {i: v for i, v in enumerate(loop)}
        start = _SearchState(list(range(n)), labels, [], [], [], set(), {}, n)
        diagram = search.search(start, budget)
        if diagram is not None:
            logger.info(f"Found reduced disc diagram of area {diagram.area} ({search.states} states)")
            return diagram
    logger.info(f"No disc diagram of area <= {max_area} ({search.states} states)")
    return None
