"""Exact cycle-space geometry with unit edge lengths.

Torus points are coordinates in a fundamental-cycle basis, reduced into [0, 1).
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cycle_maps import config_from_vector, cycle_orientation_map
from .divisors import Divisor, count_break_configurations
from .exceptions import InputError
from .graph import (
    Cycle,
    Multigraph,
    enumerate_cycles,
    enumerate_spanning_trees,
    fundamental_cycle,
    is_spanning_tree,
    tree_path,
)
from .linalg import det, solve


@dataclass(frozen=True)
class CycleBasis:
    graph: Multigraph
    tree: frozenset
    edges: tuple[str, ...]
    cycles: tuple[Cycle, ...]
    gram: tuple[tuple[int, ...], ...]

    @property
    def g(self) -> int:
        return len(self.edges)

    def vectors(self) -> list[list[int]]:
        return [C.vector(self.graph) for C in self.cycles]


def cycle_basis(G: Multigraph, T: Iterable[str] | None = None) -> CycleBasis:
    """Fundamental cycles of T (canonical direction) and their Gram matrix.

    T defaults to the first spanning tree in enumeration order.
    """
    T = enumerate_spanning_trees(G)[0] if T is None else frozenset(T)
    if not is_spanning_tree(G, T):
        raise InputError("basis tree is not a spanning tree")
    edges = tuple(e.id for e in G.edges if e.id not in T)
    cycles = tuple(fundamental_cycle(G, T, e) for e in edges)
    gram = tuple(
        tuple(sum(a.sign(e) * b.sign(e) for e in a.signs) for b in cycles) for a in cycles
    )
    return CycleBasis(G, frozenset(T), edges, cycles, gram)


def _as_vector(G: Multigraph, v) -> dict:
    if isinstance(v, Mapping):
        return {e: Fraction(x) for e, x in v.items()}
    return {e.id: Fraction(x) for e, x in zip(G.edges, v)}


def project(basis: CycleBasis, v) -> tuple[Fraction, ...]:
    """Coordinates of the orthogonal projection of an edge-space vector onto the cycle space."""
    if basis.g == 0:
        return ()
    v = _as_vector(basis.graph, v)
    rhs = [sum((v.get(e, 0) * s for e, s in C.signs.items()), Fraction(0)) for C in basis.cycles]
    return tuple(solve(basis.gram, rhs))


def edge_projection(basis: CycleBasis, eid: str) -> tuple[Fraction, ...]:
    return project(basis, {eid: 1})


def basis_vector(basis: CycleBasis, coords: Iterable) -> dict:
    """Edge-space vector sum y_i C_i for basis coordinates y."""
    out: dict[str, Fraction] = {}
    for y, C in zip(coords, basis.cycles):
        for e, s in C.signs.items():
            out[e] = out.get(e, Fraction(0)) + Fraction(y) * s
    return out


def torus_reduce(coords: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) - math.floor(Fraction(x)) for x in coords)


@dataclass(frozen=True)
class MetricPoint:
    """A vertex, or a point on an edge at ``offset`` in [0, 1] from its reference tail."""

    vertex: str | None = None
    edge: str | None = None
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        if (self.vertex is None) == (self.edge is None):
            raise InputError("a point lies either at a vertex or on an edge")
        off = Fraction(self.offset)
        if not 0 <= off <= 1:
            raise InputError("edge offsets lie in [0, 1]")
        object.__setattr__(self, "offset", off)

    @classmethod
    def at(cls, v: str) -> MetricPoint:
        return cls(vertex=v)

    @classmethod
    def on_edge(cls, eid: str, offset) -> MetricPoint:
        return cls(edge=eid, offset=Fraction(offset))


def _path_vector(G: Multigraph, T, q: str, p: MetricPoint, via_head: bool) -> dict:
    """Edge-space chain of a path from q to p: a tree path plus a partial edge."""
    out: dict[str, Fraction] = {}

    def add(steps):
        for e, d in steps:
            out[e] = out.get(e, Fraction(0)) + d

    if p.vertex is not None:
        add(tree_path(G, T, q, p.vertex))
        return out
    e = G.edge(p.edge)
    if via_head:
        add(tree_path(G, T, q, e.head))
        out[e.id] = out.get(e.id, Fraction(0)) - (1 - p.offset)
    else:
        add(tree_path(G, T, q, e.tail))
        out[e.id] = out.get(e.id, Fraction(0)) + p.offset
    return out


def abel_jacobi(
    G: Multigraph,
    basis: CycleBasis,
    points: Iterable[MetricPoint],
    q: str,
    path_tree: Iterable[str] | None = None,
    via_head: bool = False,
) -> tuple[Fraction, ...]:
    """Torus image of a sum of points, using paths from q inside ``path_tree``.

    The result does not depend on ``path_tree`` or ``via_head``; both are
    exposed so that independence can be checked.
    """
    T = basis.tree if path_tree is None else frozenset(path_tree)
    total = [Fraction(0)] * basis.g
    for p in points:
        y = project(basis, _path_vector(G, T, q, p, via_head))
        total = [a + b for a, b in zip(total, y)]
    return torus_reduce(total)


def divisor_points(D: Mapping[str, int]) -> list[MetricPoint]:
    D = Divisor(D)
    if not D.is_effective():
        raise InputError("divisor must be effective")
    return [MetricPoint.at(v) for v, k in D.items() for _ in range(k)]


@dataclass(frozen=True)
class Cell:
    tree: frozenset
    edges: tuple[str, ...]
    base: tuple[Fraction, ...]
    generators: tuple[tuple[Fraction, ...], ...]

    def volume(self) -> Fraction:
        if not self.generators:
            return Fraction(1)
        return abs(det([list(g) for g in self.generators]))

    def vertex(self, pattern: Iterable[int]) -> tuple[Fraction, ...]:
        """base + sum of the generators selected by a 0/1 pattern, mod 1."""
        total = list(self.base)
        for s, gen in zip(pattern, self.generators):
            if s:
                total = [a + b for a, b in zip(total, gen)]
        return torus_reduce(total)

    def to_json(self) -> dict:
        return {
            "tree": sorted(self.tree),
            "base": [str(x) for x in self.base],
            "generators": [[str(x) for x in g] for g in self.generators],
        }


def cell(G: Multigraph, basis: CycleBasis, T: Iterable[str], q: str | None = None) -> Cell:
    """Parallelotope of T: based at the image of the tails of its non-tree edges."""
    q = G.vertices[0] if q is None else q
    T = frozenset(T)
    edges = tuple(e.id for e in G.edges if e.id not in T)
    tails = Divisor.from_vertices(G.edge(e).tail for e in edges)
    base = abel_jacobi(G, basis, divisor_points(tails), q)
    gens = tuple(edge_projection(basis, e) for e in edges)
    return Cell(T, edges, base, gens)


def all_cells(G: Multigraph, basis: CycleBasis | None = None, q: str | None = None) -> list[Cell]:
    basis = cycle_basis(G) if basis is None else basis
    return [cell(G, basis, T, q) for T in enumerate_spanning_trees(G)]


def cell_vertex_divisor(G: Multigraph, c: Cell, pattern: Iterable[int]) -> Divisor:
    """Integral break divisor at a cell corner: head of e_i where pattern is 1, tail otherwise."""
    return Divisor.from_vertices(
        G.edge(e).head if s else G.edge(e).tail for e, s in zip(c.edges, pattern)
    )


def corner_patterns(g: int):
    return product((0, 1), repeat=g)


def f_vector(G: Multigraph) -> list[int]:
    return [count_break_configurations(G, G.genus - i, i) for i in range(G.genus + 1)]


def chamber_signature(G: Multigraph, w: Mapping) -> tuple[int, ...]:
    """Sign of <w, C> for every simple cycle, in cycle enumeration order."""
    out = []
    for C in enumerate_cycles(G):
        s = sum((Fraction(w.get(e, 0)) * d for e, d in C.signs.items()), Fraction(0))
        out.append((s > 0) - (s < 0))
    return tuple(out)


def is_generic(G: Multigraph, w: Mapping) -> bool:
    return 0 not in chamber_signature(G, w)


def shift_bijection(G: Multigraph, w: Mapping) -> dict:
    """Tree -> break divisor picked out by shifting the cell decomposition along w."""
    cfg = config_from_vector(G, w)
    return {T: cycle_orientation_map(G, cfg, T) for T in enumerate_spanning_trees(G)}
