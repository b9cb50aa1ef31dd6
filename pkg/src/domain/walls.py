"""
Galleries and hypercarriers in X_k, and the walls of the balanced blow-up.

A wall is stored as its edge class together with a side oracle: the two
components of the ball's 1-skeleton minus the class, labelled by the seed edge
a -> c (side '+' contains c).
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from tqdm import tqdm

from src.domain import cubefiber
from src.domain.blowup import BlowupBall, EGNode
from src.domain.cubefiber import CubeBall
from src.domain.devball import (
    Cell,
    ComplexBall,
    EdgeKey,
    VertexKey,
    cell_at,
    cell_position,
    cover_count,
    cyclic_runs,
    far_apart,
    is_convex_set,
    shared_runs,
)
from src.utils.constants import (
    EDGE_HORIZONTAL,
    EDGE_VERTICAL,
    WALL_FIRST_TYPE,
    WALL_LIFTED_X,
    WALL_SECOND_TYPE,
)
from src.utils.exceptions import IncompleteError, InputError, VerificationError

logger = logging.getLogger(__name__)


# --- Galleries ---

@dataclass(frozen=True)
class PolygonWithDoors:
    """A polygon of X_k with two door cells (edges or vertices), ordered by boundary position."""

    polygon: int
    doors: Tuple[Cell, Cell]

    @property
    def key(self) -> Tuple[int, FrozenSet[Cell]]:
        return self.polygon, frozenset(self.doors)


@dataclass
class Gallery:
    polygons: List[PolygonWithDoors]
    complete: bool = True

    @property
    def doors(self) -> Set[Cell]:
        return {door for pwd in self.polygons for door in pwd.doors}


@dataclass
class GalleryVerdict:
    passed: bool
    violation: Optional[str] = None
    witnesses: Dict[str, Any] = field(default_factory=dict)


def with_doors(b: ComplexBall, polygon_id: int, t1: Cell, t2: Cell) -> PolygonWithDoors:
    polygon = b.polygon(polygon_id)
    if cell_position(b, polygon, t1) > cell_position(b, polygon, t2):
        t1, t2 = t2, t1
    return PolygonWithDoors(polygon_id, (t1, t2))


@dataclass
class XEdgeClass:
    cells: FrozenSet[Cell]
    gallery: Gallery

    @property
    def complete(self) -> bool:
        return self.gallery.complete


def opposite_class_x(b: ComplexBall, cell: Cell) -> XEdgeClass:
    """
    Closure of an X_k edge cell under diametrical opposition in polygons of the ball.

    Args:
        b: Ball viewed in X_k
        cell: ("e", edge, s)

    Returns:
        The class and its gallery; the gallery is incomplete when an edge of the class may miss polygons

    Raises:
        InputError: If a polygon on the way has an odd side count
    """
    if cell[0] != "e" or cell[1] not in b.edges:
        raise InputError("Opposition classes start from an edge cell of the ball", {"cell": repr(cell)})
    seen = {cell}
    queue = deque([cell])
    galleries: Dict[Tuple[int, FrozenSet[Cell]], PolygonWithDoors] = {}
    complete = True
    while queue:
        current = queue.popleft()
        edge = current[1]
        if not b.edges[edge].complete:
            complete = False
        for pid in b.edge_polygons[edge]:
            polygon = b.polygons[pid]
            sides = b.sides(polygon)
            if sides % 2:
                raise InputError(
                    f"Polygon {pid} has {sides} sides in X_{b.k}; opposite edges are undefined",
                    {"polygon": pid, "sides": sides},
                )
            opposite = cell_at(b, polygon, cell_position(b, polygon, current) + sides)
            pwd = with_doors(b, pid, current, opposite)
            galleries.setdefault(pwd.key, pwd)
            if opposite not in seen:
                seen.add(opposite)
                queue.append(opposite)
    ordered = sorted(galleries.values(), key=lambda p: (p.polygon, cell_position(b, b.polygons[p.polygon], p.doors[0])))
    return XEdgeClass(frozenset(seen), Gallery(ordered, complete))


def x_classes(b: ComplexBall) -> List[XEdgeClass]:
    """Every opposition class of X_k edge cells in the ball, in order of least edge id."""
    found = []
    covered: Set[Cell] = set()
    for edge in sorted(b.edges.values(), key=lambda e: e.id):
        for s in range(b.k + 1):
            cell = ("e", edge.key, s)
            if cell in covered:
                continue
            cls = opposite_class_x(b, cell)
            covered |= cls.cells
            found.append(cls)
    logger.info(f"{len(found)} opposition classes in X_{b.k}")
    return found


def check_gallery(b: ComplexBall, gallery: Gallery) -> GalleryVerdict:
    """
    Far-apart doors, coherence and connectedness of a system of polygons with doors.

    Far-apart is evaluated on closed polygons only.
    """
    for pwd in gallery.polygons:
        polygon = b.polygon(pwd.polygon)
        if not b.is_closed(polygon):
            continue
        if not far_apart(b, polygon, *pwd.doors):
            return GalleryVerdict(False, "far_apart", {"polygon": pwd.polygon})
    partner: Dict[Tuple[int, Cell], Cell] = {}
    for pwd in gallery.polygons:
        t1, t2 = pwd.doors
        for a, c in ((t1, t2), (t2, t1)):
            known = partner.setdefault((pwd.polygon, a), c)
            if known != c:
                return GalleryVerdict(False, "coherence", {"polygon": pwd.polygon})
    doors = nx.Graph()
    for pwd in gallery.polygons:
        doors.add_edge(*pwd.doors)
    if doors.number_of_nodes() and not nx.is_connected(doors):
        return GalleryVerdict(False, "connectedness", {"components": nx.number_connected_components(doors)})
    return GalleryVerdict(True)


# --- Hypercarriers ---

@dataclass
class Hypercarrier:
    gallery: Gallery
    polygons: Tuple[int, ...]
    vertices: FrozenSet[VertexKey]
    edges: FrozenSet[EdgeKey]
    hypergraph: nx.Graph
    euler_characteristic: int
    glued_cells: int = 0
    convex: Optional[bool] = None


def glued_boundaries(b: ComplexBall, gallery: Gallery) -> Dict[Cell, Set[Tuple[int, int]]]:
    """
    Boundaries of the gallery's polygons in X_k, glued only along their doors.

    Returns:
        Image cell -> the glued cells (as class representatives (polygon, position)) lying over it
    """
    uf = nx.utils.UnionFind()
    nodes = []
    glue: Dict[Tuple[Cell, Cell], List[Tuple[int, int]]] = {}
    for pwd in gallery.polygons:
        polygon = b.polygons[pwd.polygon]
        perimeter = 2 * b.sides(polygon)
        nodes.extend((pwd.polygon, pos) for pos in range(perimeter))
        for door in pwd.doors:
            pos = cell_position(b, polygon, door)
            span = (pos - 1, pos, pos + 1) if door[0] == "e" else (pos,)
            for p in span:
                p %= perimeter
                glue.setdefault((door, cell_at(b, polygon, p)), []).append((pwd.polygon, p))
    for group in glue.values():
        uf.union(*group)
    preimages: Dict[Cell, Set[Tuple[int, int]]] = {}
    for pid, pos in nodes:
        preimages.setdefault(cell_at(b, b.polygons[pid], pos), set()).add(uf[(pid, pos)])
    return preimages


def hypercarrier(b: ComplexBall, gallery: Gallery) -> Hypercarrier:
    """
    Glue the gallery's polygons along their doors and check the result against X.

    The polygon boundaries glued only along doors must map injectively, cell by cell, into X_k.
    The image must be connected with Euler characteristic 1, each polygon must occur once,
    and the hypergraph (polygon centres joined to door midpoints) must be a tree. Convexity
    is tested only when the gallery is complete.

    Raises:
        VerificationError: If the gallery fails its checks or the hypercarrier does not embed
    """
    verdict = check_gallery(b, gallery)
    if not verdict.passed:
        raise VerificationError(f"Gallery fails the {verdict.violation} condition", verdict.witnesses)
    ids = [pwd.polygon for pwd in gallery.polygons]
    if len(set(ids)) != len(ids):
        raise VerificationError("A polygon occurs twice in the hypercarrier", {"polygons": ids})
    preimages = glued_boundaries(b, gallery)
    for cell, over in sorted(preimages.items(), key=lambda item: repr(item[0])):
        if len(over) > 1:
            raise VerificationError(
                "Hypercarrier polygons meet away from their doors",
                {"polygons": ids, "cell": repr(cell), "copies": len(over)},
            )
    vertices =frozenset(v for pid in ids for v in b.polygons[pid].vertices)
    edges = frozenset(e for pid in ids for e in b.polygons[pid].edges)
    chi = len(vertices) - len(edges) + len(ids)
    image = nx.Graph()
    image.add_nodes_from(vertices)
    image.add_edges_from(b.edges[e].ends for e in edges)
    if vertices and not nx.is_connected(image):
        raise VerificationError("Hypercarrier image is disconnected", {"polygons": ids})
    if ids and chi != 1:
        raise VerificationError(f"Hypercarrier image has Euler characteristic {chi}", {"polygons": ids})
    hypergraph = nx.Graph()
    for pwd in gallery.polygons:
        for door in pwd.doors:
            hypergraph.add_edge(("c", pwd.polygon), ("d", door))
    if hypergraph.number_of_nodes() and not nx.is_tree(hypergraph):
        raise VerificationError("Hypergraph is not a tree", {"polygons": ids})
    carrier = Hypercarrier(gallery, tuple(ids), vertices, edges, hypergraph, chi, len(preimages))
    if gallery.complete:
        escape = is_convex_set(b, vertices)
        if escape is not None:
            raise VerificationError(
                "Hypercarrier is not convex", {"polygons": ids, "escape": b.vertices[escape].id}
            )
        carrier.convex = True
    else:
        logger.debug(f"Convexity of hypercarrier over {len(ids)} polygons skipped: gallery incomplete")
    return carrier


# --- Canonical decomposition ---

@dataclass
class CanonicalDecomposition:
    """
    Partition of a polygon's boundary edges (X_k positions) around its two doors.

    Going forward from the first door: p1, a, p2, then the second door, p2_prime, a_prime, p1_prime.
    """

    polygon: int
    door1: Tuple[int, ...]
    p1: Tuple[int, ...]
    a: Tuple[int, ...]
    p2: Tuple[int, ...]
    door2: Tuple[int, ...]
    p2_prime: Tuple[int, ...]
    a_prime: Tuple[int, ...]
    p1_prime: Tuple[int, ...]

    def parts(self) -> List[Tuple[int, ...]]:
        return [self.door1, self.p1, self.a, self.p2, self.door2, self.p2_prime, self.a_prime, self.p1_prime]


def _reach(b: ComplexBall, polygon, q: int, runs, forward: bool) -> int:
    """Number of sub-edges from q (inclusive) one piece covers in the given direction."""
    step = b.k + 1
    length = len(polygon)
    total = length * step
    q %= total
    j = q // step
    extent = 0
    for run in runs:
        offset = (j - run.start) % length
        if offset < run.length:
            extent = max(extent, run.length - 1 - offset if forward else offset)
    within = step - q % step if forward else q % step + 1
    return min(extent * step + within, total)


def _extensions(b: ComplexBall, polygon, position: int, runs) -> Tuple[Tuple[int, ...], List[int], List[int]]:
    """(door edges, forward extension, backward extension) of the door at a cell position."""
    total = b.sides(polygon)
    if position % 2:
        q = (position - 1) // 2
        door = (q,)
        forward = [(q + i) % total for i in range(1, _reach(b, polygon, q, runs, True))]
        backward = [(q - i) % total for i in range(1, _reach(b, polygon, q, runs, False))]
    else:
        q = position // 2
        door = ()
        forward = [(q + i) % total for i in range(_reach(b, polygon, q, runs, True))]
        backward = [(q - 1 - i) % total for i in range(_reach(b, polygon, q - 1, runs, False))]
    return door, forward, backward


def _arc(position: int, end: int, total: int) -> List[int]:
    """Sub-edges strictly between two cell positions, going forward."""
    span = (end - position) % (2 * total)
    return [((position + i) % (2 * total) - 1) // 2 for i in range(1, span) if (position + i) % 2]


def canonical_decomposition(b: ComplexBall, pwd: PolygonWithDoors) -> CanonicalDecomposition:
    """
    Maximal door extensions that stay inside one piece, and the exterior arcs between them.

    Raises:
        IncompleteError: If the polygon is not closed in the ball
        VerificationError: If the extensions overlap or an exterior arc is empty
    """
    polygon = b.polygon(pwd.polygon)
    if not b.is_closed(polygon):
        raise IncompleteError("Pieces of a polygon that is not closed may be missing", {"polygon": polygon.id})
    total = b.sides(polygon)
    runs = shared_runs(b, polygon)
    first, second = (cell_position(b, polygon, door) for door in pwd.doors)
    door1, p1, p1_prime = _extensions(b, polygon, first, runs)
    door2, p2_prime, p2 = _extensions(b, polygon, second, runs)
    forward_arc, backward_arc = _arc(first, second, total), _arc(second, first, total)
    for arc, near, far, name in ((forward_arc, p1, p2, "a"), (backward_arc, p2_prime, p1_prime, "a_prime")):
        if not set(near) <= set(arc) or not set(far) <= set(arc) or set(near) & set(far):
            raise VerificationError(
                "Door extensions overlap along the boundary", {"polygon": polygon.id, "arc": name}
            )
    a = tuple(q for q in forward_arc if q not in set(p1) | set(p2))
    a_prime = tuple(q for q in backward_arc if q not in set(p2_prime) | set(p1_prime))
    if not a or not a_prime:
        raise VerificationError("An exterior arc is empty", {"polygon": polygon.id})
    decomposition = CanonicalDecomposition(
        polygon.id, door1, tuple(p1), a, tuple(reversed(p2)), door2, tuple(p2_prime), a_prime,
        tuple(reversed(p1_prime)),
    )
    covered = [q for part in decomposition.parts() for q in part]
    if sorted(covered) != list(range(total)):
        raise VerificationError("Canonical decomposition does not partition the boundary", {"polygon": polygon.id})
    return decomposition


@dataclass
class DoorTree:
    door: Cell
    graph: nx.Graph
    is_tree: bool


def door_tree(b: ComplexBall, gallery: Gallery, door: Cell) -> DoorTree:
    """Union of the door's extensions over the closed polygons having it as a door."""
    g = nx.Graph()
    if door[0] in ("v", "s"):
        g.add_node(door)
    for pwd in gallery.polygons:
        if door not in pwd.doors:
            continue
        polygon = b.polygon(pwd.polygon)
        if not b.is_closed(polygon):
            continue
        dec = canonical_decomposition(b, pwd)
        path = dec.door1 + dec.p1 + dec.p1_prime if door == pwd.doors[0] else dec.door2 + dec.p2 + dec.p2_prime
        for q in path:
            g.add_edge(cell_at(b, polygon, 2 * q), cell_at(b, polygon, 2 * q + 2))
    return DoorTree(door, g, nx.is_tree(g) if g.number_of_nodes() else True)


@dataclass(frozen=True)
class TwoPieceViolation:
    polygon: int
    start: int
    length: int
    pieces: int


@dataclass
class TwoPieceAudit:
    checked: int
    violations: List[TwoPieceViolation]

    @property
    def passed(self) -> bool:
        return not self.violations


def two_piece_audit(b: ComplexBall, gallery: Gallery) -> TwoPieceAudit:
    """Closed polygons outside the gallery that meet its image without a door meet it in at most two pieces."""
    members = {pwd.polygon for pwd in gallery.polygons}
    image = {e for pid in members for e in b.polygons[pid].edges}
    doors = gallery.doors
    step = b.k + 1
    audit = TwoPieceAudit(0, [])
    for polygon in b.polygons:
        if polygon.id in members or not b.is_closed(polygon):
            continue
        shared = [j for j, e in enumerate(polygon.edges) if e in image]
        if not shared:
            continue
        if any(cell_at(b, polygon, pos) in doors for pos in range(2 * b.sides(polygon))):
            continue
        audit.checked += 1
        runs = shared_runs(b, polygon)
        for start, size in cyclic_runs(shared, len(polygon)):
            count = cover_count(b, polygon, start * step, size * step, runs)
            if count > 2:
                audit.violations.append(TwoPieceViolation(polygon.id, start, size, count))
    return audit


# --- Walls of the balanced blow-up ---

@dataclass
class EGEdgeClass:
    edges: FrozenSet[frozenset]
    hops: Tuple[Tuple[int, int, int], ...]
    complete: bool


@dataclass
class Wall:
    """
    A wall: its edge class and the side of every vertex it was able to label.

    sides maps a vertex to True on the '+' side.
    """

    id: int
    variant: str
    edges: FrozenSet[Any]
    sides: Dict[Any, bool]
    complete: bool
    separates: Optional[bool] = None
    gallery: Optional[Gallery] = None
    projection: FrozenSet[VertexKey] = frozenset()

    def labels(self, vertices: Iterable[Any]) -> bool:
        return all(v in self.sides for v in vertices)


def _is_vertical(u: EGNode, v: EGNode) -> bool:
    return u[0] == "f" and v[0] == "f" and u[1] == v[1]


def _base_edge(u: EGNode, v: EGNode) -> EdgeKey:
    for node in (u, v):
        if node[0] == "h":
            return node[1]
    return frozenset((u[1], v[1]))


def eg_edge_class(b: BlowupBall, e: Tuple[EGNode, EGNode]) -> EGEdgeClass:
    """
    Closure of an edge of the balanced complex under opposition in lifted polygons
    and membership in a common fibre hyperplane.
    """
    u, v = e
    if not b.graph.has_edge(u, v):
        raise InputError("Not an edge of the balanced blow-up ball", {"edge": repr(e)})
    seed = frozenset(e)
    seen = {seed}
    queue = deque([seed])
    hops = set()
    complete = True
    while queue:
        key = queue.popleft()
        p, q = tuple(key)
        found = []
        if _is_vertical(p, q):
            vertex = p[1]
            fibre = b.fibre(vertex)
            if not b.vertical_complete(vertex, p[2], q[2]):
                complete = False
            for i, j in cubefiber.hyperplane_of(fibre, (p[2], q[2])).edges:
                found.append(frozenset((("f", vertex, fibre.vertices[i]), ("f", vertex, fibre.vertices[j]))))
        elif not b.base.edges[_base_edge(p, q)].complete:
            complete = False
        for pid, position in b.side_index.get(key, ()):
            sides = b.lifted_sides[pid]
            n = len(sides)
            if n % 2:
                raise VerificationError(
                    f"Lifted polygon {pid} has an odd number of sides ({n})", {"polygon": pid, "sides": n}
                )
            other = (position + n // 2) % n
            hops.add((pid, min(position, other), max(position, other)))
            found.append(sides[other].key)
        for nxt in found:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return EGEdgeClass(frozenset(seen), tuple(sorted(hops)), complete)


def _side_components(g: nx.Graph, edges: Iterable[frozenset]) -> Dict[Any, int]:
    view = nx.restricted_view(g, [], [tuple(key) for key in edges])
    return {node: n for n, component in enumerate(nx.connected_components(view)) for node in component}


def eg_wall(b: BlowupBall, e: Tuple[EGNode, EGNode], core: Optional[Set[EGNode]] = None,
            wall_id: int = 0) -> Wall:
    """
    The wall through an edge of the balanced complex, typed by its projection to X.

    Args:
        b: Balanced blow-up ball
        e: Seed edge (a, c); side '+' contains c
        core: Vertices on which separation is verified
        wall_id: Identifier recorded on the wall

    Raises:
        VerificationError: If the wall's system of doors is not a gallery
    """
    cls = eg_edge_class(b, e)
    vertical = [key for key in cls.edges if _is_vertical(*tuple(key))]
    projection = set()
    for key in cls.edges:
        p, q = tuple(key)
        if _is_vertical(p, q):
            projection.add(p[1])
        else:
            projection |= b.base.edges[_base_edge(p, q)].key
    view = b.x_view()
    doors: Dict[Tuple[int, FrozenSet[Cell]], PolygonWithDoors] = {}
    for pid, i, j in cls.hops:
        sides = b.lifted_sides[pid]
        pwd = with_doors(view, pid, sides[i].projection(), sides[j].projection())
        doors.setdefault(pwd.key, pwd)
        projection |= set(view.polygons[pid].vertices)
    gallery = Gallery(sorted(doors.values(), key=lambda p: p.polygon), cls.complete)
    if gallery.polygons:
        verdict = check_gallery(view, gallery)
        if not verdict.passed:
            raise VerificationError(
                f"System of doors of wall {wall_id} fails the {verdict.violation} condition", verdict.witnesses
            )
    if not vertical:
        variant = WALL_LIFTED_X
    elif len(vertical) == len(cls.edges) and not cls.hops:
        variant = WALL_FIRST_TYPE
    else:
        variant = WALL_SECOND_TYPE
    components = _side_components(b.graph, cls.edges)
    a, c = e
    plus, minus = components[c], components[a]
    sides = {} if plus == minus else {
        node: n == plus for node, n in components.items() if n in (plus, minus)
    }
    wall = Wall(wall_id, variant, cls.edges, sides, cls.complete, gallery=gallery, projection=frozenset(projection))
    if not cls.complete:
        logger.warning(f"Wall {wall_id} ({variant}) is incomplete; two-component check skipped")
    elif core is not None:
        touched = {components[node] for node in core if node in components}
        wall.separates = plus != minus and touched <= {plus, minus}
        if not wall.separates:
            logger.warning(f"Wall {wall_id} ({variant}) does not split the core into two components")
    return wall


def core_nodes(b: BlowupBall, core_radius: int, fibre_core_radius: Optional[int] = None) -> Set[EGNode]:
    """Vertices of the balanced complex over base vertices within core_radius, inside the fibre core."""
    if fibre_core_radius is None:
        fibre_core_radius = max(b.fibre_radius - 1, 0)
    inner = {key for key, v in b.base.vertices.items() if v.distance is not None and v.distance <= core_radius}
    nodes = set()
    for node in b.graph.nodes:
        if node[0] == "f":
            fibre = b.fibre(node[1])
            if node[1] in inner and fibre.distance[fibre.vertex_index(node[2])] <= fibre_core_radius:
                nodes.add(node)
        elif b.base.edges[node[1]].key <= inner:
            nodes.add(node)
    if not nodes:
        raise InputError("The core of the blow-up ball is empty", {"core_radius": core_radius})
    return nodes


def eg_walls(b: BlowupBall, core: Set[EGNode], progress: bool = False) -> List[Wall]:
    """One wall per edge class meeting the core, seeded at the class's least edge."""
    seeds = sorted(
        (tuple(sorted((u, v), key=b.node_id)) for u, v in b.graph.edges if u in core or v in core),
        key=lambda pair: (b.node_id(pair[0]), b.node_id(pair[1])),
    )
    walls: List[Wall] = []
    covered: Set[frozenset] = set()
    for seed in tqdm(seeds, desc="walls", disable=not progress):
        if frozenset(seed) in covered:
            continue
        wall = eg_wall(b, seed, core, len(walls))
        covered |= wall.edges
        walls.append(wall)
    logger.info(f"{len(walls)} walls meet the core ({sum(w.complete for w in walls)} complete)")
    return walls


def fibre_walls(cb: CubeBall, vertex: Optional[VertexKey] = None) -> List[Wall]:
    """
    The hyperplanes of a fibre ball as walls.

    Sides come from the model metric, so every vertex of the ball is labelled. When the
    fibre sits over an X vertex, that vertex is the projection of every wall.
    """
    projection = frozenset() if vertex is None else frozenset({vertex})
    walls = []
    for n, h in enumerate(cubefiber.hyperplanes(cb)):
        edges = frozenset(frozenset((cb.vertices[i], cb.vertices[j])) for i, j in h.edges)
        sides = {v: h.side(v) == "+" for v in cb.vertices}
        walls.append(Wall(n, WALL_FIRST_TYPE, edges, sides, True, separates=True, projection=projection))
    return walls


def wall_side(w: Wall, v: Any) -> str:
    try:
        return "+" if w.sides[v] else "-"
    except KeyError:
        raise IncompleteError(f"Wall {w.id} has no side recorded for {v!r}", {"wall": w.id}) from None


def crosses(w1: Wall, w2: Wall, vertices: Optional[Sequence[Any]] = None) -> bool:
    """
    All four side intersections are inhabited.

    Raises:
        IncompleteError: If a queried vertex is not labelled by both walls
    """
    if vertices is None:
        if not (w1.complete and w2.complete):
            raise IncompleteError("Crossing needs complete walls or an explicit region", {"walls": [w1.id, w2.id]})
        vertices = [v for v in w1.sides if v in w2.sides]
    quadrants = {(wall_side(w1, v), wall_side(w2, v)) for v in vertices}
    return len(quadrants) == 4


def wall_inventory(walls: Sequence[Wall]) -> Dict[str, Dict[str, int]]:
    """Wall counts by variant, split by completeness."""
    inventory: Dict[str, Dict[str, int]] = {}
    for variant in (WALL_LIFTED_X, WALL_FIRST_TYPE, WALL_SECOND_TYPE):
        chosen = [w for w in walls if w.variant == variant]
        inventory[variant] = {
            "total": len(chosen),
            "complete": sum(1 for w in chosen if w.complete),
            "incomplete": sum(1 for w in chosen if not w.complete),
        }
    return inventory


def edge_kind(b: BlowupBall, key: frozenset) -> str:
    return EDGE_VERTICAL if _is_vertical(*tuple(key)) else EDGE_HORIZONTAL
