"""Orientations, indegree divisors, reversals and divisor-to-orientation via max-flow."""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Iterable, Mapping
from itertools import product

from .divisors import Divisor, fire_set, q_reduce
from .exceptions import (
    DegreeSumError,
    IterationCapExceeded,
    NotBreakError,
    NotDirectedError,
    OrientationInfeasible,
)
from .graph import Cycle, Multigraph


class Orientation(Mapping):
    """Edge id -> +1 (reference direction) or -1 (reversed).

    Edges absent from the mapping are unoriented, so the same type serves
    for partial orientations; :meth:`is_total` tells them apart.
    """

    __slots__ = ("_dirs", "_hash")

    def __init__(self, dirs: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = dirs.items() if isinstance(dirs, Mapping) else dirs
        self._dirs = {}
        for e, d in items:
            if d not in (1, -1):
                if d == 0:
                    continue
                raise ValueError(f"edge direction must be +1 or -1, got {d!r}")
            self._dirs[e] = d
        self._hash = None

    def __getitem__(self, e):
        return self._dirs[e]

    def __iter__(self):
        return iter(self._dirs)

    def __len__(self):
        return len(self._dirs)

    def __eq__(self, other):
        if isinstance(other, Orientation):
            return self._dirs == other._dirs
        if isinstance(other, Mapping):
            return self._dirs == dict(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._dirs.items()))
        return self._hash

    def __repr__(self):
        return f"Orientation({self._dirs})"

    def is_total(self, G: Multigraph) -> bool:
        return all(e.id in self._dirs for e in G.edges)

    def flipped(self, edges: Iterable[str]) -> Orientation:
        out = dict(self._dirs)
        for e in edges:
            out[e] = -out[e]
        return Orientation(out)

    def reversed(self) -> Orientation:
        return Orientation({e: -d for e, d in self._dirs.items()})

    def merged(self, other: Mapping[str, int]) -> Orientation:
        out = dict(self._dirs)
        out.update(other)
        return Orientation(out)

    def to_json(self, G: Multigraph | None = None) -> dict[str, int]:
        if G is None:
            return dict(self._dirs)
        return {e.id: self._dirs[e.id] for e in G.edges if e.id in self._dirs}


PartialOrientation = Orientation


def indegree_divisor(G: Multigraph, O: Mapping[str, int]) -> Divisor:
    """D_O = sum over v of (indeg(v) - 1)(v); unoriented edges contribute nothing."""
    chips = {v: -1 for v in G.vertices}
    for e in G.edges:
        if e.id in O:
            chips[G.head(e.id, O[e.id])] += 1
    return Divisor(chips)


def partial_indegree(G: Multigraph, O: Mapping[str, int]) -> Divisor:
    """Number of oriented edges pointing into each vertex."""
    return Divisor.from_vertices(G.head(e, d) for e, d in O.items())


def reachable(G: Multigraph, O: Mapping[str, int], source: str) -> set[str]:
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for eid in G.incident(v):
            d = O.get(eid)
            if d is None or G.tail(eid, d) != v:
                continue
            w = G.head(eid, d)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def is_q_connected(G: Multigraph, O: Mapping[str, int], q: str) -> bool:
    return len(reachable(G, O, q)) == G.n


def reverse_cycle(G: Multigraph, O: Orientation, C: Cycle) -> Orientation:
    """Flip the edges of C, which must be a directed cycle of O (either way round)."""
    agreement = {O[e] * s for e, s in C.signs.items()}
    if len(agreement) != 1:
        raise NotDirectedError(f"{C!r} is not directed in the orientation")
    return O.flipped(C.signs)


def cut_edges(G: Multigraph, U: Iterable[str]) -> list[str]:
    U = set(U)
    return [e.id for e in G.edges if (e.tail in U) != (e.head in U)]


def reverse_cocycle(G: Multigraph, O: Orientation, U: Iterable[str]) -> Orientation:
    """Flip every edge of the cut (U, V - U), which must be one-way in O."""
    U = set(U)
    edges = cut_edges(G, U)
    into_u = {G.head(e, O[e]) in U for e in edges}
    if len(into_u) > 1:
        raise NotDirectedError("cut is not directed in the orientation")
    return O.flipped(edges)


def _max_flow_orientation(G: Multigraph, d: Mapping[str, int]):
    """Unit-capacity augmenting paths on source -> edges -> endpoints -> sink.

    Returns ``(flow value, assigned head per edge, residual-reachable vertices)``.
    BFS visits neighbours in edge/vertex input order, so results are deterministic.
    """
    # node ids: ("s",), ("e", eid), ("v", vertex), ("t",)
    cap: dict = defaultdict(int)
    adj: dict = defaultdict(list)

    def arc(a, b, c):
        if (b, a) not in cap and (a, b) not in cap:
            adj[a].append(b)
            adj[b].append(a)
        cap[(a, b)] += c

    S, T = ("s",), ("t",)
    for e in G.edges:
        arc(S, ("e", e.id), 1)
        arc(("e", e.id), ("v", e.tail), 1)
        arc(("e", e.id), ("v", e.head), 1)
    for v in G.vertices:
        arc(("v", v), T, d.get(v, 0))

    value = 0
    while True:
        parent = {S: None}
        queue = deque([S])
        while queue and T not in parent:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if T not in parent:
            break
        b = T
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        value += 1

    heads = {}
    for e in G.edges:
        node = ("e", e.id)
        for end in (e.tail, e.head):
            if cap[(("v", end), node)] > 0:
                heads[e.id] = end
    residual = {b[1] for b in parent if b[0] == "v"}
    return value, heads, residual


def orientation_with_indegrees(G: Multigraph, d: Mapping[str, int]) -> Orientation:
    """An orientation with indeg(v) = d(v) for every v.

    Raises :class:`OrientationInfeasible` carrying a vertex set S whose
    demanded indegree total is below the number of edges inside S.
    """
    if sum(d.get(v, 0) for v in G.vertices) != G.m:
        raise DegreeSumError(f"indegrees must sum to m = {G.m}")
    negative = [v for v in G.vertices if d.get(v, 0) < 0]
    if negative:
        raise OrientationInfeasible({negative[0]})
    value, heads, residual = _max_flow_orientation(G, d)
    if value < G.m:
        raise OrientationInfeasible(residual)
    return Orientation({eid: (1 if G.edge(eid).head == h else -1) for eid, h in heads.items()})


def _break_indegrees(G: Multigraph, D: Divisor, q: str) -> dict[str, int]:
    return {v: D[v] + (0 if v == q else 1) for v in G.vertices}


def divisor_to_orientation(G: Multigraph, D: Mapping[str, int], q: str) -> Orientation:
    """q-connected orientation O with D = D_O + (q), for a break divisor D.

    Any orientation with the right indegrees shares its one-way cuts with
    every other such orientation, so the flow solution is q-connected exactly
    when D is break; no repair step is attempted.
    """
    D = Divisor(D)
    if D.degree != G.genus:
        raise NotBreakError(f"degree {D.degree} differs from genus {G.genus}")
    try:
        O = orientation_with_indegrees(G, _break_indegrees(G, D, q))
    except OrientationInfeasible as exc:
        raise NotBreakError(f"not orientable: {sorted(exc.witness)}") from exc
    if not is_q_connected(G, O, q):
        raise NotBreakError("indegree-realising orientation is not q-connected")
    return O


def connect_from(G: Multigraph, O: Orientation, q: str) -> Orientation:
    """Cocycle-reverse one-way cuts until every vertex is reachable from q."""
    while True:
        R = reachable(G, O, q)
        if len(R) == G.n:
            return O
        O = reverse_cocycle(G, O, set(G.vertices) - R)


def break_representative(G: Multigraph, D: Mapping[str, int], q: str | None = None) -> Divisor:
    """The unique break divisor linearly equivalent to the degree-g divisor D.

    Starts from the q-reduced form (effective in degree g), then alternates
    max-flow attempts with borrowing into the min-cut witness S (V - S fires)
    until an orientation exists; one-way cuts are then reversed to make it
    q-connected.
    """
    q = G.vertices[0] if q is None else q
    D = Divisor(D)
    if D.degree != G.genus:
        raise ValueError(f"degree {D.degree} differs from genus {G.genus}")
    D = q_reduce(G, D, q)
    cap = 10 * G.m * G.n + 10
    for _ in range(cap):
        try:
            O = orientation_with_indegrees(G, _break_indegrees(G, D, q))
        except OrientationInfeasible as exc:
            D = fire_set(G, D, set(G.vertices) - exc.witness)
            continue
        O = connect_from(G, O, q)
        return indegree_divisor(G, O) + Divisor.point(q)
    raise IterationCapExceeded(f"no orientation found after {cap} borrowing rounds")


def away_from(G: Multigraph, T: Iterable[str], q: str) -> Orientation:
    """Orient the forest T away from q (edges of T not connected to q are skipped)."""
    T = set(T)
    dirs = {}
    seen = {q}
    queue = deque([q])
    while queue:
        v = queue.popleft()
        for eid in G.incident(v):
            if eid not in T:
                continue
            w = G.other_end(eid, v)
            if w not in seen:
                seen.add(w)
                dirs[eid] = 1 if G.edge(eid).tail == v else -1
                queue.append(w)
    return Orientation(dirs)


def complete_orientation(G: Multigraph, T: Iterable[str], P: Mapping[str, int], q: str) -> Orientation:
    """Extend P (orienting the non-tree edges) by orienting T away from q."""
    return away_from(G, T, q).merged({e: d for e, d in P.items() if e not in set(T)})


def all_orientations(G: Multigraph):
    ids = G.edge_ids
    for dirs in product((1, -1), repeat=G.m):
        yield Orientation(zip(ids, dirs))


def cycle_reversal_classes(G: Multigraph) -> dict[Divisor, list[Orientation]]:
    """All 2^m orientations grouped by indegree divisor (equivalently, by cycle-reversal class)."""
    classes: dict[Divisor, list[Orientation]] = {}
    for O in all_orientations(G):
        classes.setdefault(indegree_divisor(G, O), []).append(O)
    return classes


def directed_path(G: Multigraph, O: Mapping[str, int], source: str, target: str) -> list[str] | None:
    """Edge ids of a directed source -> target path in O, or None."""
    parent = {source: None}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            break
        for eid in G.incident(v):
            d = O.get(eid)
            if d is None or G.tail(eid, d) != v:
                continue
            w = G.head(eid, d)
            if w not in parent:
                parent[w] = (eid, v)
                queue.append(w)
    if target not in parent:
        return None
    path = []
    v = target
    while parent[v] is not None:
        eid, v = parent[v]
        path.append(eid)
    return path[::-1]

