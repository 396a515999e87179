"""Divisors, linear equivalence and break divisors on a multigraph."""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .graph import (
    Multigraph,
    enumerate_spanning_trees,
    is_connected_without,
    reduced_laplacian,
)
from .linalg import inverse, matvec, smith_normal_form


class Divisor(Mapping):
    """Integer chip configuration, vertex id -> chips.

    Missing vertices hold zero chips; only the support is stored, so two
    divisors compare equal regardless of the graph they were built on.
    """

    __slots__ = ("_chips", "_hash")

    def __init__(self, chips: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = chips.items() if isinstance(chips, Mapping) else chips
        data: dict[str, int] = {}
        for v, k in items:
            data[v] = data.get(v, 0) + int(k)
        self._chips = {v: k for v, k in data.items() if k}
        self._hash = None

    @classmethod
    def point(cls, v: str, k: int = 1) -> Divisor:
        return cls({v: k})

    @classmethod
    def from_vertices(cls, vs: Iterable[str]) -> Divisor:
        """Sum of (v) over ``vs``, counted with multiplicity."""
        return cls((v, 1) for v in vs)

    def __getitem__(self, v):
        return self._chips.get(v, 0)

    def __iter__(self):
        return iter(self._chips)

    def __len__(self):
        return len(self._chips)

    def __contains__(self, v):
        return v in self._chips

    @property
    def degree(self) -> int:
        return sum(self._chips.values())

    def __add__(self, other):
        return Divisor(list(self._chips.items()) + list(Divisor(other)._chips.items()))

    def __sub__(self, other):
        return self + (-Divisor(other))

    def __neg__(self):
        return Divisor({v: -k for v, k in self._chips.items()})

    def __mul__(self, k: int):
        return Divisor({v: k * c for v, c in self._chips.items()})

    __rmul__ = __mul__

    def restrict(self, vs: Iterable[str]) -> Divisor:
        vs = set(vs)
        return Divisor({v: k for v, k in self._chips.items() if v in vs})

    def is_effective(self) -> bool:
        return all(k >= 0 for k in self._chips.values())

    def __eq__(self, other):
        if isinstance(other, Divisor):
            return self._chips == other._chips
        if isinstance(other, Mapping):
            return self._chips == {v: k for v, k in other.items() if k}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._chips.items()))
        return self._hash

    def to_json(self, G: Multigraph | None = None) -> dict[str, int]:
        if G is None:
            return dict(sorted(self._chips.items()))
        return {v: self[v] for v in G.vertices}

    def __repr__(self):
        if not self._chips:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{k}({v})" for v, k in self._chips.items()) + ")"


def apply_principal(G: Multigraph, D: Mapping[str, int], u: Mapping[str, int]) -> Divisor:
    """D - Laplacian @ u: vertex v fires u(v) times."""
    out = dict(Divisor(D))
    for e in G.edges:
        flow = u.get(e.tail, 0) - u.get(e.head, 0)
        if flow:
            out[e.tail] = out.get(e.tail, 0) - flow
            out[e.head] = out.get(e.head, 0) + flow
    return Divisor(out)


def fire_set(G: Multigraph, D: Mapping[str, int], S: Iterable[str]) -> Divisor:
    return apply_principal(G, D, {v: 1 for v in S})


@lru_cache(maxsize=128)
def _reduction_data(G: Multigraph, q: str):
    others = [v for v in G.vertices if v != q]
    Linv = inverse(reduced_laplacian(G, q))
    c = 2 * max(G.degree(v) for v in G.vertices) + 1
    z = [sum(row) for row in Linv]
    shift = [math.ceil(c * x) for x in z]
    return others, Linv, shift


def _nonnegative_away_from(G: Multigraph, D: Divisor, q: str) -> Divisor:
    """An equivalent divisor with D(v) >= 0 for every v != q.

    Solve L_q x = D off q exactly, fire floor(x) minus a positive buffer that
    hands every non-q vertex at least one chip.
    """
    if all(D[v] >= 0 for v in G.vertices if v != q):
        return D
    others, Linv, shift = _reduction_data(G, q)
    x = matvec(Linv, [D[v] for v in others])
    u = {v: math.floor(xi) - s for v, xi, s in zip(others, x, shift)}
    out = apply_principal(G, D, u)
    assert all(out[v] >= 0 for v in others)
    return out


def unburnt_set(G: Multigraph, D: Mapping[str, int], q: str) -> set[str]:
    """Dhar's burning from q; returns the vertices that never catch fire."""
    D = Divisor(D)
    burnt = {q}
    stack = [q]
    exposure = dict.fromkeys(G.vertices, 0)
    while stack:
        v = stack.pop()
        for e in G.incident(v):
            w = G.other_end(e, v)
            if w in burnt:
                continue
            exposure[w] += 1
            if exposure[w] > D[w]:
                burnt.add(w)
                stack.append(w)
    return set(G.vertices) - burnt


def is_q_reduced(G: Multigraph, D: Mapping[str, int], q: str) -> bool:
    D = Divisor(D)
    return all(D[v] >= 0 for v in G.vertices if v != q) and not unburnt_set(G, D, q)


def q_reduce(G: Multigraph, D: Mapping[str, int], q: str | None = None) -> Divisor:
    """The unique q-reduced divisor linearly equivalent to D."""
    q = G.vertices[0] if q is None else q
    D = _nonnegative_away_from(G, Divisor(D), q)
    while True:
        S = unburnt_set(G, D, q)
        if not S:
            return D
        D = fire_set(G, D, S)


def linearly_equivalent(G: Multigraph, D1, D2, q: str | None = None) -> bool:
    D1, D2 = Divisor(D1), Divisor(D2)
    if D1.degree != D2.degree:
        return False
    return q_reduce(G, D1, q) == q_reduce(G, D2, q)


@dataclass(frozen=True)
class DivisorClass:
    q: str
    representative: Divisor

    @property
    def degree(self) -> int:
        return self.representative.degree


def divisor_class(G: Multigraph, D, q: str | None = None) -> DivisorClass:
    q = G.vertices[0] if q is None else q
    return DivisorClass(q, q_reduce(G, D, q))


@dataclass(frozen=True)
class PicGroupStructure:
    """Pic^0(G) as a product of cyclic groups Z/d_1 x ... with d_i | d_{i+1}.

    ``generators[i]`` is a degree-0 divisor of order ``factors[i]``;
    ``coordinates`` sends any degree-0 divisor to its residue vector.
    """

    q: str
    factors: tuple[int, ...]
    generators: tuple[Divisor, ...]
    _rows: tuple = ()
    _others: tuple = ()

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def element(self, residues: Iterable[int]) -> Divisor:
        out = Divisor()
        for r, gen in zip(residues, self.generators):
            out = out + gen * r
        return out

    def coordinates(self, D: Mapping[str, int]) -> tuple[int, ...]:
        D = Divisor(D)
        if D.degree != 0:
            raise ValueError("coordinates are defined on degree-0 divisors")
        x = [D[v] for v in self._others]
        return tuple(sum(a * b for a, b in zip(row, x)) % d for row, d in zip(self._rows, self.factors))

    def elements(self):
        for residues in product(*(range(d) for d in self.factors)):
            yield self.element(residues)


@lru_cache(maxsize=128)
def pic_group_structure(G: Multigraph, q: str | None = None) -> PicGroupStructure:
    """Invariant factors of Pic^0(G) via the Smith form of a reduced Laplacian."""
    q = G.vertices[0] if q is None else q
    others = tuple(v for v in G.vertices if v != q)
    if not others:
        return PicGroupStructure(q, (), (), (), ())
    S, U, Ui, _ = smith_normal_form(reduced_laplacian(G, q))
    factors, gens, rows = [], [], []
    for i in range(len(others)):
        d = S[i][i]
        if d == 1:
            continue
        chips = {v: Ui[j][i] for j, v in enumerate(others)}
        chips[q] = -sum(chips.values())
        factors.append(d)
        gens.append(q_reduce(G, chips, q))
        rows.append(tuple(U[i]))
    return PicGroupStructure(q, tuple(factors), tuple(gens), tuple(rows), others)


def tree_count(G: Multigraph) -> int:
    return len(enumerate_spanning_trees(G))


@lru_cache(maxsize=128)
def enumerate_break_divisors(G: Multigraph) -> tuple[Divisor, ...]:
    """Every break divisor, deduplicated, in order of first appearance.

    For each spanning tree, every choice of orientation of the non-tree edges
    contributes the divisor of heads.
    """
    seen: dict[Divisor, None] = {}
    for T in enumerate_spanning_trees(G):
        outside = [e for e in G.edges if e.id not in T]
        for choice in product((0, 1), repeat=len(outside)):
            D = Divisor.from_vertices(e.head if c == 0 else e.tail for e, c in zip(outside, choice))
            seen.setdefault(D, None)
    return tuple(seen)


def is_break_divisor(G: Multigraph, D: Mapping[str, int], q: str | None = None) -> bool:
    """D is break iff deg D = g and D - (q) is the indegree divisor of a q-connected orientation."""
    from .orientations import divisor_to_orientation
    from .exceptions import NotBreakError

    D = Divisor(D)
    if D.degree != G.genus:
        return False
    try:
        divisor_to_orientation(G, D, G.vertices[0] if q is None else q)
    except NotBreakError:
        return False
    return True


def count_break_configurations(G: Multigraph, i: int, j: int) -> int:
    """Number of pairs (D', E') with |E'| = j, G - E' connected, D' a break divisor of G - E' of degree i."""
    if not 0 <= j <= G.genus:
        raise ValueError(f"need 0 <= j <= g = {G.genus}, got {j}")
    if i != G.genus - j:
        return 0
    total = 0
    for removed in combinations(G.edge_ids, j):
        if is_connected_without(G, removed):
            total += len(enumerate_break_divisors(G.without_edges(removed)))
    return total
