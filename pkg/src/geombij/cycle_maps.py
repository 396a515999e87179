"""Cycle orientation configurations, geometricity, edge ordering maps and their inverse."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .divisors import Divisor
from .exceptions import (
    InputError,
    MissingOrderingCoverage,
    NonGenericError,
    NotAcyclicError,
    NotBreakError,
)
from .graph import (
    Cycle,
    Multigraph,
    cycle_index,
    enumerate_cycles,
    enumerate_spanning_trees,
    fundamental_cycle,
    is_forest,
)
from .lp import integral_certificate, solve_feasibility
from .orientations import Orientation, divisor_to_orientation, reachable


@dataclass(frozen=True)
class CycleOrientationConfiguration:
    """A direction for every simple cycle.

    ``signs[k]`` is +1 when the k-th cycle of :func:`enumerate_cycles` keeps
    its canonical direction and -1 when it is reversed.
    """

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise ValueError("cycle directions must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    def __len__(self):
        return len(self.signs)

    def __getitem__(self, k):
        return self.signs[k]

    def directed_cycles(self, G: Multigraph) -> list[Cycle]:
        cycles = enumerate_cycles(G)
        if len(cycles) != len(self.signs):
            raise InputError(f"configuration has {len(self.signs)} entries, graph has {len(cycles)} cycles")
        return [c.directed(s) for c, s in zip(cycles, self.signs)]

    def direction_of(self, G: Multigraph, cycle: Cycle) -> Cycle:
        """``cycle`` directed as this configuration prescribes."""
        k = cycle_index(G)[cycle.support]
        return enumerate_cycles(G)[k].directed(self.signs[k])

    def reversed(self) -> CycleOrientationConfiguration:
        return CycleOrientationConfiguration(tuple(-s for s in self.signs))

    def to_json(self) -> list[int]:
        return list(self.signs)

    @classmethod
    def from_json(cls, G: Multigraph, data) -> CycleOrientationConfiguration:
        """Accepts a list of signs in cycle order or ``{"cycles": [{"edges": {...}}, ...]}``."""
        if isinstance(data, Mapping) and "cycles" in data:
            idx = cycle_index(G)
            signs = [0] * len(idx)
            for entry in data["cycles"]:
                c = Cycle(entry["edges"] if "edges" in entry else entry)
                k = idx.get(c.support)
                if k is None:
                    raise InputError(f"{c!r} is not a simple cycle of the graph")
                signs[k] = 1 if enumerate_cycles(G)[k] == c else -1
            if 0 in signs:
                raise InputError("configuration does not cover every cycle")
            return cls(tuple(signs))
        signs = tuple(data)
        if len(signs) != len(enumerate_cycles(G)):
            raise InputError("configuration length differs from the number of cycles")
        return cls(signs)


def all_configurations(G: Multigraph):
    for signs in product((1, -1), repeat=len(enumerate_cycles(G))):
        yield CycleOrientationConfiguration(signs)


def cycle_orientation_map(G: Multigraph, cfg: CycleOrientationConfiguration, T: Iterable[str]) -> Divisor:
    """Orient each non-tree edge along its configured fundamental cycle and put a chip at its head."""
    T = frozenset(T)
    heads = []
    for e in G.edges:
        if e.id in T:
            continue
        C = cfg.direction_of(G, fundamental_cycle(G, T, e.id))
        heads.append(G.head(e.id, C.sign(e.id)))
    return Divisor.from_vertices(heads)


@dataclass(frozen=True)
class GeometricCertificate:
    """Outcome of the weight test.

    ``weights`` maps each non-tree edge of the reference tree to a rational
    weight making every configured cycle sum to at least 1.  ``relation``
    holds nonnegative integers n_k with sum n_k C_k = 0 over the configured
    cycles when no weights exist.
    """

    geometric: bool
    tree: frozenset
    weights: dict | None = None
    relation: tuple[int, ...] | None = None

    def __bool__(self):
        return self.geometric


def geometric_certificate(G: Multigraph, cfg: CycleOrientationConfiguration) -> GeometricCertificate:
    cycles = cfg.directed_cycles(G)
    tree = enumerate_spanning_trees(G)[0]
    outside = [e.id for e in G.edges if e.id not in tree]
    A = [[C.sign(e) for e in outside] for C in cycles]
    res = solve_feasibility(A, [1] * len(A))
    if res.feasible:
        return GeometricCertificate(True, tree, weights=dict(zip(outside, res.x)))
    return GeometricCertificate(False, tree, relation=integral_certificate(res.y))


def is_geometric(G: Multigraph, cfg: CycleOrientationConfiguration) -> bool:
    return geometric_certificate(G, cfg).geometric


def relation_holds(G: Multigraph, cfg: CycleOrientationConfiguration, relation) -> bool:
    """Check that a nonnegative nonzero integer combination of the configured cycles vanishes."""
    if any(n < 0 for n in relation) or not any(relation):
        return False
    total = [0] * G.m
    for n, C in zip(relation, cfg.directed_cycles(G)):
        for i, s in enumerate(C.vector(G)):
            total[i] += n * s
    return not any(total)


def _direct_by_sums(G: Multigraph, sums) -> CycleOrientationConfiguration:
    signs = []
    for C, s in zip(enumerate_cycles(G), sums):
        if s == 0:
            raise NonGenericError(C)
        signs.append(1 if s > 0 else -1)
    return CycleOrientationConfiguration(tuple(signs))


def config_from_weights(G: Multigraph, F: Iterable[str], alpha: Mapping[str, Fraction]) -> CycleOrientationConfiguration:
    """Direct every cycle so that its signed weight sum over edges outside F is positive."""
    F = frozenset(F)
    if not is_forest(G, F):
        raise InputError("F is not a forest")
    missing = [e.id for e in G.edges if e.id not in F and e.id not in alpha]
    if missing:
        raise InputError(f"no weight for edges {missing}")
    sums = [
        sum((Fraction(alpha[e]) * s for e, s in C.signs.items() if e not in F), Fraction(0))
        for C in enumerate_cycles(G)
    ]
    return _direct_by_sums(G, sums)


def config_from_vector(G: Multigraph, w: Mapping[str, Fraction]) -> CycleOrientationConfiguration:
    """Direct every cycle C so that <w, C> > 0, for an edge-space vector w (missing edges are 0)."""
    sums = [
        sum((Fraction(w.get(e, 0)) * s for e, s in C.signs.items()), Fraction(0))
        for C in enumerate_cycles(G)
    ]
    return _direct_by_sums(G, sums)


@dataclass(frozen=True)
class EdgeOrdering:
    """A forest plus an ordered, oriented list of the remaining edges."""

    forest: frozenset
    order: tuple[tuple[str, int], ...]
    _rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        order = tuple((str(e), int(d)) for e, d in self.order)
        object.__setattr__(self, "forest", frozenset(self.forest))
        object.__setattr__(self, "order", order)
        if any(d not in (1, -1) for _, d in order):
            raise InputError("ordering directions must be +1 or -1")
        rank = {e: i for i, (e, _) in enumerate(order)}
        if len(rank) != len(order):
            raise InputError("ordering lists an edge twice")
        if rank.keys() & self.forest:
            raise InputError("ordering lists a forest edge")
        object.__setattr__(self, "_rank", rank)

    def rank(self, eid: str) -> int | None:
        return self._rank.get(eid)

    def direction(self, eid: str) -> int:
        return self.order[self._rank[eid]][1]

    @property
    def h(self) -> int:
        return len(self.order)

    def validate(self, G: Multigraph) -> EdgeOrdering:
        unknown = [e for e in self.forest | self._rank.keys() if not G.has_edge(e)]
        if unknown:
            raise InputError(f"unknown edges {sorted(unknown)}")
        if not is_forest(G, self.forest):
            raise InputError("forest contains a cycle")
        missing = [e.id for e in G.edges if e.id not in self.forest and e.id not in self._rank]
        if missing:
            raise MissingOrderingCoverage(f"edges {missing} are neither in the forest nor ordered")
        return self

    def smallest_in(self, eids: Iterable[str]) -> str | None:
        ranked = [e for e in eids if e in self._rank]
        return min(ranked, key=self._rank.__getitem__) if ranked else None

    def with_first_flipped(self) -> EdgeOrdering:
        if not self.order:
            raise InputError("ordering has no first edge to flip")
        (e, d), *rest = self.order
        return EdgeOrdering(self.forest, ((e, -d), *rest))

    def to_json(self) -> dict:
        return {"forest": sorted(self.forest), "order": [[e, d] for e, d in self.order]}

    @classmethod
    def from_json(cls, data) -> EdgeOrdering:
        try:
            return cls(frozenset(data.get("forest", [])), tuple((e, d) for e, d in data["order"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed edge ordering: {exc}") from exc

    @classmethod
    def default(cls, G: Multigraph, forest: Iterable[str] = ()) -> EdgeOrdering:
        """Input order, reference directions."""
        forest = frozenset(forest)
        return cls(forest, tuple((e.id, 1) for e in G.edges if e.id not in forest))


def edge_ordering_config(G: Multigraph, ordering: EdgeOrdering) -> CycleOrientationConfiguration:
    """Each cycle follows the direction of its smallest ordered edge."""
    ordering.validate(G)
    signs = []
    for C in enumerate_cycles(G):
        first = ordering.smallest_in(C.signs)
        signs.append(C.sign(first) * ordering.direction(first))
    return CycleOrientationConfiguration(tuple(signs))


def edge_ordering_map(G: Multigraph, ordering: EdgeOrdering, T: Iterable[str]) -> Divisor:
    """Chip at the head of every non-tree edge, oriented by the smallest ordered edge of its fundamental cycle."""
    ordering.validate(G)
    T = frozenset(T)
    heads = []
    for e in G.edges:
        if e.id in T:
            continue
        C = fundamental_cycle(G, T, e.id)
        first = ordering.smallest_in(C.signs)
        # direct C so that `first` runs along its ordered direction
        s = C.sign(first) * ordering.direction(first)
        heads.append(G.head(e.id, s * C.sign(e.id)))
    return Divisor.from_vertices(heads)


@dataclass
class InversionStats:
    flow_calls: int = 0


def eom_inverse(
    H: Multigraph, D: Mapping[str, int], ordering: EdgeOrdering, stats: InversionStats | None = None
) -> frozenset:
    """The spanning tree T of H with edge_ordering_map(H, ordering, T) = D."""
    D = Divisor(D)
    for e in H.edges:
        if e.id not in ordering.forest and ordering.rank(e.id) is None:
            raise MissingOrderingCoverage(f"edge {e.id!r} is neither in the forest nor ordered")
    if any(v not in H.vertices for v in D):
        raise NotBreakError("divisor has chips outside the graph")
    if D.degree != H.genus:
        raise NotBreakError(f"degree {D.degree} differs from genus {H.genus}")
    if stats is None:
        stats = InversionStats()
    return frozenset(_invert(H, D, ordering, stats))


def _invert(H: Multigraph, D: Divisor, ordering: EdgeOrdering, stats: InversionStats) -> set[str]:
    if not D:
        if H.genus != 0:
            raise NotBreakError("zero divisor on a graph with cycles")
        return set(H.edge_ids)
    ei = ordering.smallest_in(H.edge_ids)
    d = ordering.direction(ei)
    ui, vi = H.tail(ei, d), H.head(ei, d)
    stats.flow_calls += 1
    O = divisor_to_orientation(H, D, vi)
    U = reachable(H, O, ui)
    if vi in U:
        return _invert(H.without_edges([ei]), D - Divisor.point(vi), ordering, stats)
    rest = set(H.vertices) - U
    DL = D.restrict(U)
    for e in H.edges:
        if e.id != ei and (e.tail in U) != (e.head in U):
            DL = DL - Divisor.point(e.tail if e.tail in U else e.head)
    left = _invert(H.induced(U), DL, ordering, stats)
    right = _invert(H.induced(rest), D.restrict(rest), ordering, stats)
    return {ei} | left | right


def faithful_orientation(
    G: Multigraph, cfg: CycleOrientationConfiguration, O: Mapping[str, int], check: bool = True
) -> Orientation:
    """The orientation in O's cycle reversal class all of whose directed cycles agree with cfg."""
    if check and not is_geometric(G, cfg):
        raise NotAcyclicError("configuration admits a cycle relation")
    O = Orientation(O)
    wanted = cfg.directed_cycles(G)
    cap = 2 ** G.m + 1
    for _ in range(cap):
        wrong = next(
            (C for C in wanted if all(O[e] == -s for e, s in C.signs.items())),
            None,
        )
        if wrong is None:
            return O
        O = O.flipped(wrong.signs)
    raise NotAcyclicError("cycle reversals did not terminate")
