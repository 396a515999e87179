"""Multigraphs with reference orientations, spanning trees and simple cycles."""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .exceptions import (
    DisconnectedGraphError,
    EdgeInTreeError,
    GraphParseError,
    LoopEdgeError,
)


class Edge(NamedTuple):
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Multigraph:
    """Connected loopless multigraph.

    Each edge is stored as ``(id, tail, head)``; tail -> head is its
    reference orientation.  Vertex and edge order follow construction order
    and drive every deterministic ordering in the package.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _vindex: dict = field(init=False, repr=False, compare=False)
    _eindex: dict = field(init=False, repr=False, compare=False)
    _incident: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        edges = tuple(Edge(str(e[0]), str(e[1]), str(e[2])) for e in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        if not vertices:
            raise GraphParseError("graph needs at least one vertex")
        vindex = {v: i for i, v in enumerate(vertices)}
        if len(vindex) != len(vertices):
            raise GraphParseError("duplicate vertex id")
        eindex = {}
        incident = {v: [] for v in vertices}
        for i, e in enumerate(edges):
            if e.id in eindex:
                raise GraphParseError(f"duplicate edge id {e.id!r}")
            for end in (e.tail, e.head):
                if end not in vindex:
                    raise GraphParseError(f"edge {e.id!r} uses unknown vertex {end!r}")
            if e.tail == e.head:
                raise LoopEdgeError(f"edge {e.id!r} is a loop at {e.tail!r}")
            eindex[e.id] = i
            incident[e.tail].append(e.id)
            incident[e.head].append(e.id)
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_eindex", eindex)
        object.__setattr__(self, "_incident", {v: tuple(es) for v, es in incident.items()})
        if len(_component(self, vertices[0], frozenset())) != len(vertices):
            raise DisconnectedGraphError("graph is not connected")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def genus(self) -> int:
        return self.m - self.n + 1

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, eid: str) -> Edge:
        return self.edges[self._eindex[eid]]

    def edge_index(self, eid: str) -> int:
        return self._eindex[eid]

    def vertex_index(self, v: str) -> int:
        return self._vindex[v]

    def has_edge(self, eid: str) -> bool:
        return eid in self._eindex

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def incident(self, v: str) -> tuple[str, ...]:
        return self._incident[v]

    def degree(self, v: str) -> int:
        return len(self._incident[v])

    def other_end(self, eid: str, v: str) -> str:
        e = self.edge(eid)
        return e.head if v == e.tail else e.tail

    def head(self, eid: str, direction: int = 1) -> str:
        e = self.edge(eid)
        return e.head if direction > 0 else e.tail

    def tail(self, eid: str, direction: int = 1) -> str:
        e = self.edge(eid)
        return e.tail if direction > 0 else e.head

    def sorted_edges(self, eids: Iterable[str]) -> list[str]:
        return sorted(eids, key=self._eindex.__getitem__)

    def sorted_vertices(self, vs: Iterable[str]) -> list[str]:
        return sorted(vs, key=self._vindex.__getitem__)

    def without_edges(self, removed: Iterable[str]) -> Multigraph:
        removed = set(removed)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e.id not in removed))

    def induced(self, vs: Iterable[str]) -> Multigraph:
        keep = set(vs)
        return Multigraph(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e.tail in keep and e.head in keep),
        )

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


class Cycle:
    """Signed simple cycle: edge id -> +1/-1 on its support.

    The sign of an edge is +1 when traversing the cycle follows the edge's
    reference orientation.  A cycle is determined by its support, so equality
    and hashing use the signed support only.
    """

    __slots__ = ("signs", "_key")

    def __init__(self, signs: Mapping[str, int]):
        self.signs = {e: (1 if s > 0 else -1) for e, s in signs.items() if s}
        self._key = frozenset(self.signs.items())

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self.signs)

    def sign(self, eid: str) -> int:
        return self.signs.get(eid, 0)

    def reversed(self) -> Cycle:
        return Cycle({e: -s for e, s in self.signs.items()})

    def directed(self, s: int) -> Cycle:
        return self if s > 0 else self.reversed()

    def vector(self, G: Multigraph) -> list[int]:
        return [self.signs.get(e.id, 0) for e in G.edges]

    def __len__(self):
        return len(self.signs)

    def __eq__(self, other):
        return isinstance(other, Cycle) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        body = " ".join(f"{'+' if s > 0 else '-'}{e}" for e, s in self.signs.items())
        return f"Cycle({body})"


def canonical_cycle(G: Multigraph, cycle: Cycle) -> Cycle:
    """Direct ``cycle`` so that its lowest-indexed edge carries +1."""
    first = min(cycle.signs, key=G.edge_index)
    return cycle.directed(cycle.signs[first])


def parse_graph(document) -> Multigraph:
    """Build a graph from the JSON schema ``{"vertices": [...], "edges": [[id, tail, head], ...]}``.

    ``document`` may be a JSON string or an already-decoded mapping.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise GraphParseError("graph document must be a JSON object")
    vertices = document.get("vertices")
    edges = document.get("edges", [])
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphParseError("'vertices' and 'edges' must be lists")
    triples = []
    for item in edges:
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise GraphParseError(f"edge entry {item!r} is not an [id, tail, head] triple")
        triples.append(tuple(str(x) for x in item))
    return Multigraph(tuple(str(v) for v in vertices), tuple(triples))


def _component(G: Multigraph, start: str, removed: frozenset) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for eid in G._incident[v]:
            if eid in removed:
                continue
            w = G.other_end(eid, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def is_connected_without(G: Multigraph, removed: Iterable[str]) -> bool:
    return len(_component(G, G.vertices[0], frozenset(removed))) == G.n


def is_bridge(G: Multigraph, eid: str) -> bool:
    return not is_connected_without(G, [eid])


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def is_forest(G: Multigraph, eids: Iterable[str]) -> bool:
    uf = _UnionFind(G.vertices)
    for eid in eids:
        e = G.edge(eid)
        if not uf.union(e.tail, e.head):
            return False
    return True


def is_spanning_tree(G: Multigraph, eids: Iterable[str]) -> bool:
    eids = list(eids)
    return len(eids) == G.n - 1 and len(set(eids)) == len(eids) and is_forest(G, eids)


@lru_cache(maxsize=256)
def enumerate_spanning_trees(G: Multigraph) -> tuple[frozenset[str], ...]:
    """All spanning trees, as edge-id sets, in lexicographic order of edge index."""
    ids = G.edge_ids
    trees = []
    for combo in combinations(range(G.m), G.n - 1):
        uf = _UnionFind(G.vertices)
        ok = True
        for i in combo:
            e = G.edges[i]
            if not uf.union(e.tail, e.head):
                ok = False
                break
        if ok:
            trees.append(frozenset(ids[i] for i in combo))
    return tuple(trees)


def tree_path(G: Multigraph, T: Iterable[str], source: str, target: str) -> list[tuple[str, int]]:
    """Unique path from ``source`` to ``target`` inside the forest ``T``.

    Returned as ``(edge id, direction)`` steps, direction +1 meaning the step
    follows the reference orientation.
    """
    T = set(T)
    parent = {source: None}
    queue = deque([source])
    while queue and target not in parent:
        v = queue.popleft()
        for eid in G.incident(v):
            if eid not in T:
                continue
            w = G.other_end(eid, v)
            if w not in parent:
                parent[w] = (eid, v)
                queue.append(w)
    if target not in parent:
        raise ValueError(f"{target!r} is not reachable from {source!r} in the forest")
    steps = []
    v = target
    while parent[v] is not None:
        eid, prev = parent[v]
        steps.append((eid, 1 if G.edge(eid).tail == prev else -1))
        v = prev
    steps.reverse()
    return steps


def fundamental_cycle(G: Multigraph, T: Iterable[str], eid: str) -> Cycle:
    """The unique cycle in T + e, in canonical direction."""
    T = frozenset(T)
    if eid in T:
        raise EdgeInTreeError(f"edge {eid!r} belongs to the tree")
    e = G.edge(eid)
    signs = {eid: 1}
    for step, d in tree_path(G, T, e.head, e.tail):
        signs[step] = d
    return canonical_cycle(G, Cycle(signs))


@lru_cache(maxsize=256)
def enumerate_cycles(G: Multigraph) -> tuple[Cycle, ...]:
    """All simple cycles, canonical direction, ordered by their lowest edge then DFS order.

    Each cycle is found once: from its lowest edge e = (a -> b), search the
    simple b -> a paths that use only higher-indexed edges.
    """
    cycles = []
    for k, first in enumerate(G.edges):
        allowed = {e.id for e in G.edges[k + 1:]}
        start, goal = first.head, first.tail
        path: list[tuple[str, int]] = []
        visited = {start}

        def extend(v):
            for eid in G.incident(v):
                if eid not in allowed:
                    continue
                w = G.other_end(eid, v)
                step = (eid, 1 if G.edge(eid).tail == v else -1)
                if w == goal:
                    signs = {first.id: 1}
                    signs.update(path + [step])
                    cycles.append(Cycle(signs))
                elif w not in visited:
                    visited.add(w)
                    path.append(step)
                    extend(w)
                    path.pop()
                    visited.discard(w)

        extend(start)
    return tuple(cycles)


def cycle_index(G: Multigraph) -> dict[frozenset[str], int]:
    """Map cycle support -> position in :func:`enumerate_cycles`."""
    return _cycle_index(G)


@lru_cache(maxsize=256)
def _cycle_index(G):
    return {c.support: i for i, c in enumerate(enumerate_cycles(G))}


def laplacian(G: Multigraph) -> list[list[int]]:
    n = G.n
    L = [[0] * n for _ in range(n)]
    for e in G.edges:
        i, j = G.vertex_index(e.tail), G.vertex_index(e.head)
        L[i][i] += 1
        L[j][j] += 1
        L[i][j] -= 1
        L[j][i] -= 1
    return L


def reduced_laplacian(G: Multigraph, q: str) -> list[list[int]]:
    k = G.vertex_index(q)
    L = laplacian(G)
    return [[x for j, x in enumerate(row) if j != k] for i, row in enumerate(L) if i != k]
