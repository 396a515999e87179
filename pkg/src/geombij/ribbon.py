"""Ribbon graphs, face tracing, Bernardi tours, plane duality and face orderings.

A dart is ``(edge id, direction)``; direction +1 walks tail -> head.
Rotations list the edges around a vertex counter-clockwise, and every dart
belongs to the face on its right: after arriving at v along e the face
walk leaves v along the edge following e in the rotation at v.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .cycle_maps import CycleOrientationConfiguration, EdgeOrdering
from .divisors import Divisor
from .exceptions import HasBridgeError, InputError, NotPlanarError, StartNotIncidentError
from .graph import (
    Cycle,
    Multigraph,
    _UnionFind,
    _component,
    cycle_index,
    enumerate_cycles,
    enumerate_spanning_trees,
    fundamental_cycle,
    is_bridge,
    parse_graph,
)
from .orientations import Orientation


@dataclass(frozen=True)
class RibbonGraph:
    graph: Multigraph
    rotation: Mapping[str, tuple[str, ...]]
    _next: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        G = self.graph
        rot = {str(v): tuple(str(e) for e in es) for v, es in self.rotation.items()}
        if set(rot) != set(G.vertices):
            raise InputError("rotation must list every vertex exactly once")
        nxt = {}
        for v, es in rot.items():
            if sorted(es) != sorted(G.incident(v)) or len(set(es)) != len(es):
                raise InputError(f"rotation at {v!r} must list its incident edges once each")
            for i, e in enumerate(es):
                nxt[(v, e)] = es[(i + 1) % len(es)]
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "_next", nxt)

    def next_edge(self, v: str, e: str) -> str:
        """The edge after e in the rotation at v."""
        return self._next[(v, e)]

    def dart_from(self, v: str, e: str) -> tuple[str, int]:
        return (e, 1 if self.graph.edge(e).tail == v else -1)

    def to_json(self) -> dict:
        return {"graph": self.graph.to_json(), "rotations": {v: list(es) for v, es in self.rotation.items()}}


def trace_faces(R: RibbonGraph):
    """Face orbits (lists of darts) and a dart -> face index map."""
    G = R.graph
    dart_face = {}
    faces = []
    for e in G.edges:
        for d in (1, -1):
            if (e.id, d) in dart_face:
                continue
            orbit = []
            dart = (e.id, d)
            while dart not in dart_face:
                dart_face[dart] = len(faces)
                orbit.append(dart)
                eid, di = dart
                v = G.head(eid, di)
                dart = R.dart_from(v, R.next_edge(v, eid))
            faces.append(orbit)
    if not faces:
        faces.append([])
    return faces, dart_face


def ribbon_genus(R: RibbonGraph) -> int:
    faces, _ = trace_faces(R)
    G = R.graph
    return (2 - G.n + G.m - len(faces)) // 2


@dataclass(frozen=True)
class PlaneEmbedding:
    ribbon: RibbonGraph
    faces: tuple
    dart_face: dict = field(repr=False)
    outer: int = 0

    @property
    def graph(self) -> Multigraph:
        return self.ribbon.graph

    def face_of(self, dart) -> int:
        return self.dart_face[dart]

    def right_face(self, eid: str, direction: int = 1) -> int:
        return self.dart_face[(eid, direction)]

    def left_face(self, eid: str, direction: int = 1) -> int:
        return self.dart_face[(eid, -direction)]

    def face_edges(self, k: int) -> list[str]:
        return [e for e, _ in self.faces[k]]


def plane_embedding(R: RibbonGraph, outer: int = 0) -> PlaneEmbedding:
    if ribbon_genus(R) != 0:
        raise NotPlanarError("rotation system does not describe a plane embedding")
    faces, dart_face = trace_faces(R)
    if not 0 <= outer < len(faces):
        raise InputError(f"outer face index {outer} out of range")
    return PlaneEmbedding(R, tuple(tuple(f) for f in faces), dart_face, outer)


def parse_ribbon(document):
    """Ribbon JSON -> RibbonGraph, or PlaneEmbedding when ``outer_face`` is given."""
    import json

    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, Mapping) or "graph" not in document or "rotations" not in document:
        raise InputError("ribbon document needs 'graph' and 'rotations'")
    R = RibbonGraph(parse_graph(document["graph"]), document["rotations"])
    if document.get("outer_face") is not None:
        return plane_embedding(R, int(document["outer_face"]))
    return R


def as_plane(R) -> PlaneEmbedding:
    return R if isinstance(R, PlaneEmbedding) else plane_embedding(R)


def _ribbon(R) -> RibbonGraph:
    return R.ribbon if isinstance(R, PlaneEmbedding) else R


@dataclass(frozen=True)
class BernardiTour:
    start: tuple[str, str]
    states: tuple[tuple[str, str], ...]
    eta: dict

    def divisor(self) -> Divisor:
        return Divisor.from_vertices(self.eta.values())


def bernardi_tour(R, T: Iterable[str], start: tuple[str, str]) -> BernardiTour:
    """The 2m-state tour: cut through non-tree edges, walk along tree edges."""
    R = _ribbon(R)
    G = R.graph
    T = frozenset(T)
    v, e = start
    if not G.has_vertex(v) or not G.has_edge(e) or e not in G.incident(v):
        raise StartNotIncidentError(f"edge {e!r} is not incident to {v!r}")
    states = []
    eta = {}
    for _ in range(2 * G.m):
        states.append((v, e))
        if e not in T:
            eta.setdefault(e, v)
        else:
            v = G.other_end(e, v)
        e = R.next_edge(v, e)
    return BernardiTour((start[0], start[1]), tuple(states), eta)


def bernardi_divisor(R, T: Iterable[str], start: tuple[str, str]) -> Divisor:
    return bernardi_tour(R, T, start).divisor()


def bernardi_partial_orientation(R, T: Iterable[str], start: tuple[str, str]) -> Orientation:
    """Each non-tree edge points at the vertex it was first cut from."""
    G = _ribbon(R).graph
    tour = bernardi_tour(R, T, start)
    return Orientation({e: (1 if G.edge(e).head == v else -1) for e, v in tour.eta.items()})


def all_starts(G: Multigraph) -> list[tuple[str, str]]:
    return [(v, e.id) for e in G.edges for v in (e.tail, e.head)]


@dataclass(frozen=True)
class ConflictWitness:
    """Two trees sharing a fundamental cycle that induce opposite directions on it."""

    cycle: Cycle
    tree_a: frozenset
    tree_b: frozenset
    direction_a: int
    direction_b: int


def induced_configuration(R, start: tuple[str, str]):
    """The cycle orientation configuration realised by a Bernardi process, or a ConflictWitness."""
    R = _ribbon(R)
    G = R.graph
    idx = cycle_index(G)
    seen: dict[int, tuple[int, frozenset]] = {}
    for T in enumerate_spanning_trees(G):
        P = bernardi_partial_orientation(R, T, start)
        for e, d in P.items():
            C = fundamental_cycle(G, T, e)
            s = d * C.sign(e)
            k = idx[C.support]
            if k in seen and seen[k][0] != s:
                return ConflictWitness(enumerate_cycles(G)[k], seen[k][1], T, seen[k][0], s)
            seen.setdefault(k, (s, T))
    return CycleOrientationConfiguration(tuple(seen[k][0] for k in range(len(idx))))


def _face_adjacency(P: PlaneEmbedding, removed: frozenset):
    uf = _UnionFind(range(len(P.faces)))
    for e in P.graph.edges:
        if e.id not in removed:
            uf.union(P.right_face(e.id), P.left_face(e.id))
    return uf


def inside_faces(P: PlaneEmbedding, C: Cycle) -> set[int]:
    """Faces separated from the outer face by the cycle C."""
    uf = _face_adjacency(P, C.support)
    root = uf.find(P.outer)
    return {k for k in range(len(P.faces)) if uf.find(k) != root}


def cycle_is_counterclockwise(P: PlaneEmbedding, C: Cycle) -> bool:
    """True when C runs with its interior on the left."""
    e, s = next(iter(C.signs.items()))
    return P.left_face(e, s) in inside_faces(P, C)


def face_for_start(P: PlaneEmbedding, start: tuple[str, str]) -> int:
    """The face reached by turning the start edge clockwise about the start vertex."""
    v, e = start
    G = P.graph
    if e not in G.incident(v):
        raise StartNotIncidentError(f"edge {e!r} is not incident to {v!r}")
    return P.face_of(P.ribbon.dart_from(v, e))


def start_for_face(P: PlaneEmbedding, face: int) -> tuple[str, str]:
    """The first start pair, in edge order, whose face is ``face``."""
    for s in all_starts(P.graph):
        if face_for_start(P, s) == face:
            return s
    raise InputError(f"no start pair for face {face}")


def face_configuration(P: PlaneEmbedding, face: int) -> CycleOrientationConfiguration:
    """Cycles counter-clockwise exactly when ``face`` lies inside them."""
    signs = []
    for C in enumerate_cycles(P.graph):
        ccw = cycle_is_counterclockwise(P, C)
        inside = face in inside_faces(P, C)
        signs.append(1 if ccw == inside else -1)
    return CycleOrientationConfiguration(tuple(signs))


@dataclass(frozen=True)
class PlanarDual:
    primal: PlaneEmbedding
    dual: PlaneEmbedding
    face_vertex: dict  # primal face index -> dual vertex id
    vertex_face: dict  # primal vertex -> dual face index

    def tree(self, T: Iterable[str]) -> frozenset:
        T = set(T)
        return frozenset(e.id for e in self.primal.graph.edges if e.id not in T)

    def orientation(self, O: Mapping[str, int], reverse: bool = False) -> Orientation:
        s = -1 if reverse else 1
        return Orientation({e: s * d for e, d in O.items()})


def planar_dual(P: PlaneEmbedding) -> PlanarDual:
    """Dual on face vertices ``f<k>``; e* runs from the face left of e to the face right of e.

    With counter-clockwise primal rotations this turns e clockwise onto e*,
    the identification under which completing a Bernardi orientation on
    either side yields dual orientations.  Dual rotations follow the face
    walks, i.e. the clockwise order around each primal face.
    """
    G = P.graph
    if ribbon_genus(P.ribbon) != 0:
        raise NotPlanarError("embedding is not planar")
    bridges = [e.id for e in G.edges if is_bridge(G, e.id)]
    if bridges:
        raise HasBridgeError(f"bridges {bridges} would give dual loops")
    names = [f"f{k}" for k in range(len(P.faces))]
    edges = [(e.id, names[P.left_face(e.id)], names[P.right_face(e.id)]) for e in G.edges]
    D = Multigraph(tuple(names), tuple(edges))
    rot = {names[k]: tuple(e for e, _ in orbit) for k, orbit in enumerate(P.faces)}
    R = RibbonGraph(D, rot)
    faces, dart_face = trace_faces(R)
    vertex_face = {}
    for e in G.edges:
        for d, v in ((1, e.head), (-1, e.tail)):
            k = dart_face[(e.id, d)]
            if vertex_face.setdefault(v, k) != k:
                raise AssertionError("dual face walk does not circle a single primal vertex")
    dual = plane_embedding(R, vertex_face[G.vertices[0]])
    return PlanarDual(P, dual, {k: names[k] for k in range(len(names))}, vertex_face)


def algorithm3_ordering(P: PlaneEmbedding, face: int | None = None, first_edge: str | None = None) -> EdgeOrdering:
    """Peel edges off the region of ``face`` so every cycle ends up clockwise about it.

    Treating ``face`` as unbounded, repeatedly take the lowest-index edge
    touching that region; a bridge of what remains keeps its reference
    direction, any other edge is directed with the region on its left.
    Removing the edge merges the faces on its two sides.
    """
    G = P.graph
    if ribbon_genus(P.ribbon) != 0:
        raise NotPlanarError("embedding is not planar")
    face = P.outer if face is None else face
    uf = _UnionFind(range(len(P.faces)))
    remaining = list(G.edge_ids)
    removed: list[str] = []
    order = []
    while remaining:
        root = uf.find(face)

        def touches(eid):
            return uf.find(P.right_face(eid)) == root or uf.find(P.left_face(eid)) == root

        if first_edge is not None and not order:
            if not touches(first_edge):
                raise InputError(f"edge {first_edge!r} does not bound face {face}")
            eid = first_edge
        else:
            eid = next(e for e in remaining if touches(e))
        e = G.edge(eid)
        if e.head not in _component(G, e.tail, frozenset(removed + [eid])):
            d = 1
        else:
            d = 1 if uf.find(P.left_face(eid)) == root else -1
        order.append((eid, d))
        uf.union(P.right_face(eid), P.left_face(eid))
        remaining.remove(eid)
        removed.append(eid)
    return EdgeOrdering(frozenset(), tuple(order))
