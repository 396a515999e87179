"""Brute-force reference computations, deliberately independent of the main algorithms.

Each oracle takes a different route from the production code (determinants
instead of enumeration, exhaustive orientations instead of flows, kernel
search instead of linear programming) and is only meant for tiny graphs.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from itertools import combinations, product

from .divisors import Divisor, apply_principal
from .graph import Multigraph, enumerate_cycles, enumerate_spanning_trees, fundamental_cycle, reduced_laplacian
from .linalg import det_int
from .orientations import all_orientations, indegree_divisor, is_q_connected


def matrix_tree_count(G: Multigraph) -> int:
    if G.n == 1:
        return 1
    return det_int(reduced_laplacian(G, G.vertices[0]))


def subset_tree_count(G: Multigraph) -> int:
    """Spanning trees by testing every (n-1)-edge subset for connectivity."""
    count = 0
    for combo in combinations(G.edge_ids, G.n - 1):
        H = set(combo)
        seen = {G.vertices[0]}
        frontier = [G.vertices[0]]
        while frontier:
            v = frontier.pop()
            for e in G.incident(v):
                if e in H:
                    w = G.other_end(e, v)
                    if w not in seen:
                        seen.add(w)
                        frontier.append(w)
        count += len(seen) == G.n
    return count


def break_divisors_by_orientations(G: Multigraph, q: str | None = None) -> set[Divisor]:
    """D_O + (q) over all q-connected orientations."""
    q = G.vertices[0] if q is None else q
    return {indegree_divisor(G, O) + Divisor.point(q) for O in all_orientations(G) if is_q_connected(G, O, q)}


def is_reduced_by_definition(G: Multigraph, D: Mapping[str, int], q: str) -> bool:
    """Nonnegative off q and every nonempty S avoiding q loses a chip somewhere when fired."""
    D = Divisor(D)
    others = [v for v in G.vertices if v != q]
    if any(D[v] < 0 for v in others):
        return False
    for r in range(1, len(others) + 1):
        for S in combinations(others, r):
            fired = apply_principal(G, D, {v: 1 for v in S})
            if all(fired[v] >= 0 for v in S):
                return False
    return True


def reduced_by_search(G: Multigraph, D: Mapping[str, int], q: str, radius: int = 4) -> Divisor | None:
    """Scan D - Lu over firing vectors u with u(q) = 0 and |u(v)| <= radius."""
    others = [v for v in G.vertices if v != q]
    found = None
    for u in product(range(-radius, radius + 1), repeat=len(others)):
        E = apply_principal(G, D, dict(zip(others, u)))
        if is_reduced_by_definition(G, E, q):
            if found is not None and found != E:
                raise AssertionError("two reduced divisors in one class")
            found = E
    return found


def orientation_exists(G: Multigraph, d: Mapping[str, int]) -> bool:
    """Exhaustive check for an orientation with indegrees d."""
    want = Divisor(d) - Divisor.from_vertices(G.vertices)
    return any(indegree_divisor(G, O) == want for O in all_orientations(G))


def hakimi_violation(G: Multigraph, d: Mapping[str, int]):
    """A vertex set S with sum of d over S below the edge count inside S, or None."""
    for r in range(1, G.n + 1):
        for S in combinations(G.vertices, r):
            S = set(S)
            inside = sum(1 for e in G.edges if e.tail in S and e.head in S)
            if sum(d.get(v, 0) for v in S) < inside:
                return S
    return None


def cycle_relations(G: Multigraph, bound: int = 6) -> list[tuple[int, ...]]:
    """Nonzero integer vectors m in [-bound, bound]^t with sum m_k C_k = 0 over the canonical cycles.

    Coefficients of fundamental cycles of the first tree are determined by
    the rest, so only t - g free coordinates are scanned.
    """
    cycles = enumerate_cycles(G)
    T = enumerate_spanning_trees(G)[0]
    idx = {c.support: k for k, c in enumerate(cycles)}
    pivots = {}
    for e in G.edges:
        if e.id not in T:
            C = fundamental_cycle(G, T, e.id)
            pivots[idx[C.support]] = e.id
    free = [k for k in range(len(cycles)) if k not in pivots]
    out = []
    for vals in product(range(-bound, bound + 1), repeat=len(free)):
        m = [0] * len(cycles)
        for k, x in zip(free, vals):
            m[k] = x
        ok = True
        for k, e in pivots.items():
            # non-tree edge e only lies in its own fundamental cycle among the pivots
            rest = sum(m[j] * cycles[j].sign(e) for j in free)
            x = Fraction(-rest, cycles[k].sign(e))
            if x.denominator != 1 or abs(x) > bound:
                ok = False
                break
            m[k] = int(x)
        if ok and any(m):
            out.append(tuple(m))
    return out


def has_nonnegative_relation(signs, relations) -> bool:
    """Does some kernel vector become nonnegative after applying the configuration signs?"""
    return any(all(mk * sk >= 0 for mk, sk in zip(m, signs)) for m in relations)


def f_vector_by_orientations(G: Multigraph) -> list[int]:
    """Break (g-i, i)-configurations counted through q-connected orientations of G - E'."""
    out = []
    for i in range(G.genus + 1):
        total = 0
        for removed in combinations(G.edge_ids, i):
            keep = tuple(e for e in G.edges if e.id not in removed)
            try:
                H = Multigraph(G.vertices, keep)
            except ValueError:
                continue
            total += len(break_divisors_by_orientations(H))
        out.append(total)
    return out
