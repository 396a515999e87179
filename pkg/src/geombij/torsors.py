"""Pic^0-torsor structures on spanning trees induced by tree/break-divisor bijections."""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

from .cycle_maps import (
    CycleOrientationConfiguration,
    EdgeOrdering,
    config_from_vector,
    cycle_orientation_map,
    edge_ordering_map,
    eom_inverse,
)
from .divisors import Divisor, q_reduce
from .exceptions import InputError
from .graph import Multigraph, enumerate_spanning_trees
from .orientations import break_representative, complete_orientation, indegree_divisor
from .ribbon import (
    PlaneEmbedding,
    bernardi_divisor,
    bernardi_partial_orientation,
    planar_dual,
    start_for_face,
)


@dataclass(frozen=True)
class TreeBijection:
    """A map S(G) -> break divisors, tabulated, with a label saying where it came from."""

    graph: Multigraph
    table: dict
    label: str
    ordering: EdgeOrdering | None = None
    _inverse: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        inv = {}
        for T, D in self.table.items():
            if D in inv:
                raise InputError(f"{self.label} is not injective: trees {sorted(inv[D])} and {sorted(T)} collide")
            inv[D] = T
        object.__setattr__(self, "_inverse", inv)

    def __call__(self, T) -> Divisor:
        return self.table[frozenset(T)]

    def inverse(self, D) -> frozenset:
        D = Divisor(D)
        if self.ordering is not None:
            return eom_inverse(self.graph, D, self.ordering)
        return self._inverse[D]

    @classmethod
    def tabulate(cls, G: Multigraph, fn: Callable, label: str, ordering=None) -> TreeBijection:
        return cls(G, {T: fn(T) for T in enumerate_spanning_trees(G)}, label, ordering)

    @classmethod
    def from_ordering(cls, G: Multigraph, ordering: EdgeOrdering) -> TreeBijection:
        ordering.validate(G)
        return cls.tabulate(G, lambda T: edge_ordering_map(G, ordering, T), "edge-ordering", ordering)

    @classmethod
    def from_config(cls, G: Multigraph, cfg: CycleOrientationConfiguration) -> TreeBijection:
        return cls.tabulate(G, lambda T: cycle_orientation_map(G, cfg, T), "configuration")

    @classmethod
    def from_vector(cls, G: Multigraph, w: Mapping) -> TreeBijection:
        return cls.from_config(G, config_from_vector(G, w))

    @classmethod
    def from_bernardi(cls, R, start: tuple[str, str]) -> TreeBijection:
        G = R.graph
        return cls.tabulate(G, lambda T: bernardi_divisor(R, T, start), f"bernardi{tuple(start)}")

    @classmethod
    def from_face(cls, P: PlaneEmbedding, face: int) -> TreeBijection:
        b = cls.from_bernardi(P, start_for_face(P, face))
        return cls(b.graph, b.table, f"face {face}")


def torsor_act(G: Multigraph, beta: TreeBijection, D0, T) -> frozenset:
    """[D0] . T = beta^-1(break representative of D0 + beta(T))."""
    D0 = Divisor(D0)
    if D0.degree != 0:
        raise InputError("acting class must have degree 0")
    return beta.inverse(break_representative(G, D0 + beta(T)))


def torsors_isomorphic(G: Multigraph, beta1: TreeBijection, beta2: TreeBijection, q: str | None = None):
    """The q-reduced D0 with beta2(T) ~ D0 + beta1(T) for all T, or None if it varies with T."""
    delta = None
    for T in enumerate_spanning_trees(G):
        d = q_reduce(G, beta2(T) - beta1(T), q)
        if delta is None:
            delta = d
        elif d != delta:
            return None
    return delta


def boundary(G: Multigraph, eid: str, direction: int = 1) -> Divisor:
    """(head) - (tail) of the edge taken in ``direction``."""
    return Divisor.point(G.head(eid, direction)) - Divisor.point(G.tail(eid, direction))


@dataclass(frozen=True)
class FlipReport:
    delta: Divisor
    holds: bool
    trees_with_first: int
    trees_without_first: int


def eom_flip_delta(G: Multigraph, ordering: EdgeOrdering, q: str | None = None) -> FlipReport:
    """Compare the map of ``ordering`` against the one with its first edge reversed."""
    ordering.validate(G)
    flipped = ordering.with_first_flipped()
    e1, d1 = ordering.order[0]
    expected = q_reduce(G, boundary(G, e1, d1), q)
    holds = True
    inside = 0
    for T in enumerate_spanning_trees(G):
        inside += e1 in T
        diff = edge_ordering_map(G, ordering, T) - edge_ordering_map(G, flipped, T)
        holds &= q_reduce(G, diff, q) == expected
    return FlipReport(expected, holds, inside, len(enumerate_spanning_trees(G)) - inside)


def dual_trail(P: PlaneEmbedding, source: int, target: int) -> list[tuple[str, int]]:
    """Shortest face-to-face walk, as darts whose right face is the face being left."""
    G = P.graph
    parent = {source: None}
    queue = deque([source])
    while queue:
        F = queue.popleft()
        if F == target:
            break
        for e in G.edges:
            for d in (1, -1):
                if P.right_face(e.id, d) == F:
                    nxt = P.left_face(e.id, d)
                    if nxt not in parent:
                        parent[nxt] = (F, (e.id, d))
                        queue.append(nxt)
    steps = []
    F = target
    while parent[F] is not None:
        F, dart = parent[F]
        steps.append(dart)
    return steps[::-1]


def bernardi_face_path_delta(P: PlaneEmbedding, F: int, F2: int, q: str | None = None) -> Divisor:
    """Translating class from beta_F to beta_F2 summed along a dual trail.

    Crossing edge f from face A into face B contributes (head) - (tail) of f
    directed with B on its left.
    """
    G = P.graph
    total = Divisor()
    for eid, d in dual_trail(P, F, F2):
        total = total + boundary(G, eid, d)
    return q_reduce(G, total, q)


@dataclass(frozen=True)
class DualityReport:
    commutes: bool
    failures: tuple = ()


def duality_diagram_check(P: PlaneEmbedding, face: int, v: str, reverse_convention: bool = False) -> DualityReport:
    """Check that beta_F on G and beta_{v*} on the dual agree through orientation duality.

    For each tree T, a representative of tau_G^-1(beta_F(T) - (v)) is the
    Bernardi partial orientation completed by orienting T away from v; its
    dual orientation is compared, as a cycle-cocycle reversal class, with
    the completion of beta_{v*}(T*) away from F*.
    ``reverse_convention`` flips every dual edge as a negative control.
    """
    G = P.graph
    PD = planar_dual(P)
    D = PD.dual
    Gs = D.graph
    Fstar = PD.face_vertex[face]
    start_G = start_for_face(P, face)
    start_D = start_for_face(D, PD.vertex_face[v])
    failures = []
    for T in enumerate_spanning_trees(G):
        Ts = PD.tree(T)
        O2 = complete_orientation(G, T, bernardi_partial_orientation(P, T, start_G), v)
        O2s = PD.orientation(O2, reverse=reverse_convention)
        O1 = complete_orientation(Gs, Ts, bernardi_partial_orientation(D, Ts, start_D), Fstar)
        lhs = q_reduce(Gs, indegree_divisor(Gs, O1))
        rhs = q_reduce(Gs, indegree_divisor(Gs, O2s))
        if lhs != rhs:
            failures.append(T)
    return DualityReport(not failures, tuple(failures))
