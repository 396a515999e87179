"""Named property suites producing machine-readable pass/fail reports."""

from __future__ import annotations

import random
from math import comb
from collections.abc import Callable

from .cycle_maps import (
    EdgeOrdering,
    all_configurations,
    cycle_orientation_map,
    edge_ordering_map,
    eom_inverse,
    faithful_orientation,
    geometric_certificate,
    relation_holds,
)
from .divisors import enumerate_break_divisors, is_break_divisor, pic_group_structure, q_reduce
from .exceptions import InputError
from .graph import Multigraph, enumerate_cycles, enumerate_spanning_trees
from .jacobian import f_vector
from .oracles import (
    break_divisors_by_orientations,
    cycle_relations,
    f_vector_by_orientations,
    has_nonnegative_relation,
    matrix_tree_count,
)
from .orientations import cycle_reversal_classes
from .ribbon import (
    ConflictWitness,
    PlaneEmbedding,
    algorithm3_ordering,
    all_starts,
    bernardi_divisor,
    face_configuration,
    face_for_start,
    induced_configuration,
    start_for_face,
)
from .sampler import instrumented_invert
from .torsors import TreeBijection, bernardi_face_path_delta, duality_diagram_check, torsors_isomorphic


# exhaustive suites enumerate 2^t configurations or 2^m orientations
MAX_CYCLES = 12
MAX_EDGES = 12


def _require_small(ok: bool, what: str):
    if not ok:
        raise InputError(f"suite is exhaustive; needs {what}")


def _fmt(x):
    if isinstance(x, frozenset | set):
        return sorted(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


class Report:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks: list[dict] = []

    def check(self, name: str, passed: bool, detail=None, counterexample=None):
        entry = {"property": name, "passed": bool(passed)}
        if detail is not None:
            entry["detail"] = detail
        if counterexample is not None and not passed:
            entry["counterexample"] = counterexample
        self.checks.append(entry)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": self.checks}


def sample_orderings(G: Multigraph, count: int = 5, seed: int = 0) -> list[EdgeOrdering]:
    """Input-order ordering, then random ones; every other random ordering keeps a nonempty forest."""
    rnd = random.Random(seed)
    trees = enumerate_spanning_trees(G)
    out = [EdgeOrdering.default(G)]
    for k in range(1, count):
        forest: set[str] = set()
        if k % 2 == 0 and G.n > 1:
            T = sorted(rnd.choice(trees))
            forest = set(rnd.sample(T, rnd.randint(1, len(T))))
        rest = [e.id for e in G.edges if e.id not in forest]
        rnd.shuffle(rest)
        out.append(EdgeOrdering(frozenset(forest), tuple((e, rnd.choice((1, -1))) for e in rest)))
    return out


def suite_round_trip(G: Multigraph, orderings: int = 5) -> Report:
    r = Report("round-trip")
    for ordering in sample_orderings(G, orderings):
        bad = None
        worst = 0
        for T in enumerate_spanning_trees(G):
            D = edge_ordering_map(G, ordering, T)
            back, calls = instrumented_invert(G, D, ordering)
            worst = max(worst, calls)
            if back != T or calls > ordering.h:
                bad = {"tree": sorted(T), "divisor": D.to_json(), "inverse": sorted(back), "flow_calls": calls}
                break
        r.check("eom_inverse undoes edge_ordering_map", bad is None, {"ordering": ordering.to_json(), "max_flow_calls": worst}, bad)
    return r


def suite_geometric_criteria(G: Multigraph) -> Report:
    r = Report("geometric-criteria")
    _require_small(len(enumerate_cycles(G)) <= MAX_CYCLES, f"at most {MAX_CYCLES} cycles")
    relations = cycle_relations(G)
    breaks = set(enumerate_break_divisors(G))
    count = 0
    for cfg in all_configurations(G):
        cert = geometric_certificate(G, cfg)
        count += cert.geometric
        brute = not has_nonnegative_relation(cfg.signs, relations)
        r.check("LP feasibility matches relation search", cert.geometric == brute, cfg.to_json(), {"lp": cert.geometric})
        if not cert.geometric:
            r.check("relation certificate vanishes", relation_holds(G, cfg, cert.relation), list(cert.relation))
        else:
            images = {cycle_orientation_map(G, cfg, T) for T in enumerate_spanning_trees(G)}
            r.check("geometric configuration is bijective", images == breaks, cfg.to_json())
    r.check("geometric count", True, {"geometric": count, "total": 2 ** len(enumerate_cycles(G))})
    return r


def suite_f_vector(G: Multigraph) -> Report:
    r = Report("f-vector")
    fv = f_vector(G)
    trees = len(enumerate_spanning_trees(G))
    expected = [comb(G.genus, i) * trees for i in range(G.genus + 1)]
    r.check("binomial identity", fv == expected, {"f_vector": fv, "expected": expected})
    brute = f_vector_by_orientations(G)
    r.check("orientation count agrees", fv == brute, {"orientations": brute})
    return r


def suite_break_divisors(G: Multigraph) -> Report:
    r = Report("break-divisors")
    breaks = enumerate_break_divisors(G)
    trees = matrix_tree_count(G)
    r.check("count equals tree count", len(breaks) == trees, {"break": len(breaks), "trees": trees})
    r.check("matches q-connected orientations", set(breaks) == break_divisors_by_orientations(G))
    r.check("pairwise inequivalent", len({q_reduce(G, D) for D in breaks}) == len(breaks))
    r.check("recognised as break", all(is_break_divisor(G, D) for D in breaks))
    pic = pic_group_structure(G)
    r.check("Pic^0 order equals tree count", pic.order == trees, {"factors": list(pic.factors)})
    return r


def suite_faithful(G: Multigraph) -> Report:
    r = Report("faithful")
    _require_small(len(enumerate_cycles(G)) <= MAX_CYCLES and G.m <= MAX_EDGES, f"at most {MAX_CYCLES} cycles and {MAX_EDGES} edges")
    classes = list(cycle_reversal_classes(G).values())
    for cfg in all_configurations(G):
        if not geometric_certificate(G, cfg):
            continue
        ok = True
        for members in classes:
            reps = {faithful_orientation(G, cfg, O, check=False) for O in members}
            faithful_members = [
                O for O in members if faithful_orientation(G, cfg, O, check=False) == O
            ]
            if len(reps) != 1 or len(faithful_members) != 1:
                ok = False
                break
        r.check("one faithful orientation per reversal class", ok, cfg.to_json())
    return r


def suite_planar_bernardi(P: PlaneEmbedding) -> Report:
    r = Report("planar-bernardi")
    G = P.graph
    for start in all_starts(G):
        cfg = induced_configuration(P, start)
        consistent = not isinstance(cfg, ConflictWitness)
        r.check("induced configuration is consistent", consistent, list(start))
        if consistent:
            r.check("induced configuration is geometric", bool(geometric_certificate(G, cfg)), list(start))
            F = face_for_start(P, start)
            r.check("face rule", cfg == face_configuration(P, F), {"start": list(start), "face": F})
    for F in range(len(P.faces)):
        ordering = algorithm3_ordering(P, F)
        start = start_for_face(P, F)
        bad = next(
            (T for T in enumerate_spanning_trees(G) if edge_ordering_map(G, ordering, T) != bernardi_divisor(P, T, start)),
            None,
        )
        r.check("face ordering reproduces the face Bernardi map", bad is None, {"face": F}, _fmt(bad))
    return r


def suite_torsors(P: PlaneEmbedding) -> Report:
    r = Report("torsors")
    G = P.graph
    maps = [TreeBijection.from_face(P, F) for F in range(len(P.faces))]
    for a, ba in enumerate(maps):
        for b, bb in enumerate(maps):
            delta = torsors_isomorphic(G, ba, bb)
            path = bernardi_face_path_delta(P, a, b)
            r.check("face torsors isomorphic via dual trail", delta == path, {"faces": [a, b]}, _fmt(delta))
    return r


def suite_duality(P: PlaneEmbedding) -> Report:
    r = Report("duality")
    G = P.graph
    for F in range(len(P.faces)):
        for v in G.vertices:
            rep = duality_diagram_check(P, F, v)
            r.check("diagram commutes", rep.commutes, {"face": F, "vertex": v}, [_fmt(T) for T in rep.failures[:1]])
            neg = duality_diagram_check(P, F, v, reverse_convention=True)
            r.check("reversed convention fails", not neg.commutes, {"face": F, "vertex": v})
    return r


def suite_uniqueness_of_eom_inverse(G: Multigraph) -> Report:
    r = Report("eom-inverse")
    ordering = EdgeOrdering.default(G)
    for D in enumerate_break_divisors(G):
        T = eom_inverse(G, D, ordering)
        r.check("inverse lands on a preimage", edge_ordering_map(G, ordering, T) == D, D.to_json())
    return r


GRAPH_SUITES: dict[str, Callable] = {
    "round-trip": suite_round_trip,
    "geometric-criteria": suite_geometric_criteria,
    "f-vector": suite_f_vector,
    "break-divisors": suite_break_divisors,
    "faithful": suite_faithful,
    "eom-inverse": suite_uniqueness_of_eom_inverse,
}

PLANE_SUITES: dict[str, Callable] = {
    "planar-bernardi": suite_planar_bernardi,
    "torsors": suite_torsors,
    "duality": suite_duality,
}

SUITES = sorted(GRAPH_SUITES) + sorted(PLANE_SUITES)


def run_suite(name: str, subject) -> Report:
    if name in GRAPH_SUITES:
        G = subject.graph if hasattr(subject, "graph") and not isinstance(subject, Multigraph) else subject
        return GRAPH_SUITES[name](G)
    if name in PLANE_SUITES:
        if not isinstance(subject, PlaneEmbedding):
            from .ribbon import as_plane

            subject = as_plane(subject)
        return PLANE_SUITES[name](subject)
    raise KeyError(f"unknown suite {name!r}; choose from {SUITES}")
