"""Command-line interface.  Reads graph or ribbon JSON, writes JSON to stdout.

Exit codes: 0 success, 1 property failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cycle_maps import (
    CycleOrientationConfiguration,
    EdgeOrdering,
    edge_ordering_map,
    geometric_certificate,
)
from .divisors import Divisor, enumerate_break_divisors
from .exceptions import GeombijError, InputError
from .fixtures import GRAPH_FIXTURES, RIBBON_FIXTURES, graph_fixture, ribbon_fixture
from .graph import Multigraph, enumerate_cycles, enumerate_spanning_trees, parse_graph
from .jacobian import all_cells, cycle_basis, f_vector
from .ribbon import (
    ConflictWitness,
    PlaneEmbedding,
    algorithm3_ordering,
    as_plane,
    bernardi_tour,
    bernardi_partial_orientation,
    induced_configuration,
    parse_ribbon,
    planar_dual,
)
from .sampler import SamplerConfig, instrumented_invert, random_bits, sample_spanning_tree
from .torsors import TreeBijection, duality_diagram_check, torsors_isomorphic
from .verify import SUITES, run_suite


def _read_json(source: str | None):
    if source in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source or 'stdin'}: {exc}") from exc


def _load(args):
    """Graph, RibbonGraph or PlaneEmbedding from --fixture or the input document."""
    if args.fixture:
        if args.fixture in RIBBON_FIXTURES and getattr(args, "needs_ribbon", False):
            return ribbon_fixture(args.fixture)
        if args.fixture not in GRAPH_FIXTURES:
            raise InputError(f"unknown fixture {args.fixture!r}")
        return graph_fixture(args.fixture)
    doc = _read_json(args.input)
    if isinstance(doc, dict) and "rotations" in doc:
        return parse_ribbon(doc)
    return parse_graph(doc)


def _graph(obj) -> Multigraph:
    return obj if isinstance(obj, Multigraph) else obj.graph


def _ribbon(obj):
    if isinstance(obj, Multigraph):
        raise InputError("this command needs ribbon input (graph plus rotations)")
    return obj


def _plane(obj) -> PlaneEmbedding:
    return as_plane(_ribbon(obj))


def _ids(text: str) -> frozenset:
    return frozenset(t for t in (s.strip() for s in text.split(",")) if t)


def _tree(G: Multigraph, text: str) -> frozenset:
    T = _ids(text)
    if T not in set(enumerate_spanning_trees(G)):
        raise InputError(f"{sorted(T)} is not a spanning tree")
    return T


def _start(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("start must be given as vertex,edge")
    return parts[0].strip(), parts[1].strip()


def _ordering(G: Multigraph, source: str | None) -> EdgeOrdering:
    if source is None:
        return EdgeOrdering.default(G)
    return EdgeOrdering.from_json(_read_json(source)).validate(G)


def _divisor(G: Multigraph, source: str) -> Divisor:
    data = _read_json(source)
    if not isinstance(data, dict):
        raise InputError("divisor JSON must be an object")
    unknown = [v for v in data if not G.has_vertex(v)]
    if unknown:
        raise InputError(f"unknown vertices {unknown}")
    return Divisor({v: int(k) for v, k in data.items()})


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def cmd_trees(args):
    G = _graph(_load(args))
    return [sorted(T) for T in enumerate_spanning_trees(G)]


def cmd_break_divisors(args):
    G = _graph(_load(args))
    return [D.to_json(G) for D in enumerate_break_divisors(G)]


def cmd_cycles(args):
    G = _graph(_load(args))
    return [{"index": k, "edges": C.signs} for k, C in enumerate(enumerate_cycles(G))]


def cmd_check_geometric(args):
    G = _graph(_load(args))
    cfg = CycleOrientationConfiguration.from_json(G, _read_json(args.config))
    cert = geometric_certificate(G, cfg)
    out = {"geometric": cert.geometric, "reference_tree": sorted(cert.tree)}
    if cert.geometric:
        out["weights"] = {e: _frac(w) for e, w in cert.weights.items()}
    else:
        out["relation"] = list(cert.relation)
    return out


def cmd_eom(args):
    G = _graph(_load(args))
    return edge_ordering_map(G, _ordering(G, args.order), _tree(G, args.tree)).to_json(G)


def cmd_eom_invert(args):
    G = _graph(_load(args))
    T, calls = instrumented_invert(G, _divisor(G, args.divisor), _ordering(G, args.order))
    return {"tree": G.sorted_edges(T), "flow_calls": calls}


def cmd_bernardi(args):
    R = _ribbon(_load(args))
    G = R.graph
    T = _tree(G, args.tree)
    tour = bernardi_tour(R, T, _start(args.start))
    return {
        "divisor": tour.divisor().to_json(G),
        "partial_orientation": bernardi_partial_orientation(R, T, _start(args.start)).to_json(G),
        "tour": [list(s) for s in tour.states],
    }


def cmd_induced_config(args):
    R = _ribbon(_load(args))
    res = induced_configuration(R, _start(args.start))
    if isinstance(res, ConflictWitness):
        return {
            "consistent": False,
            "cycle": res.cycle.signs,
            "trees": [sorted(res.tree_a), sorted(res.tree_b)],
            "directions": [res.direction_a, res.direction_b],
        }
    return {"consistent": True, "configuration": res.to_json()}


def cmd_alg3(args):
    P = _plane(_load(args))
    return algorithm3_ordering(P, args.face).to_json()


def cmd_dual(args):
    P = _plane(_load(args))
    PD = planar_dual(P)
    out = PD.dual.ribbon.to_json()
    out["outer_face"] = PD.dual.outer
    out["vertex_face"] = PD.vertex_face
    return out


def cmd_cells(args):
    G = _graph(_load(args))
    basis = cycle_basis(G, _tree(G, args.basis_tree) if args.basis_tree else None)
    return [c.to_json() for c in all_cells(G, basis)]


def cmd_f_vector(args):
    return f_vector(_graph(_load(args)))


def _bijection(obj, spec: str) -> TreeBijection:
    kind, _, value = spec.partition(":")
    G = _graph(obj)
    if kind == "order":
        return TreeBijection.from_ordering(G, _ordering(G, value))
    if kind == "face":
        return TreeBijection.from_face(_plane(obj), int(value))
    if kind == "start":
        return TreeBijection.from_bernardi(_ribbon(obj), _start(value))
    if kind == "weights":
        w = _read_json(value)
        return TreeBijection.from_vector(G, {e: Fraction(str(x)) for e, x in w.items()})
    raise InputError(f"bijection descriptor {spec!r}: expected order:, face:, start: or weights:")


def cmd_torsor_delta(args):
    obj = _load(args)
    G = _graph(obj)
    delta = torsors_isomorphic(G, _bijection(obj, args.spec_a), _bijection(obj, args.spec_b))
    return "not-isomorphic" if delta is None else delta.to_json(G)


def cmd_duality_check(args):
    P = _plane(_load(args))
    rep = duality_diagram_check(P, args.face, args.vertex, reverse_convention=args.reverse_convention)
    out = {"commutes": rep.commutes, "failures": [sorted(T) for T in rep.failures]}
    return out, (0 if rep.commutes else 1)


def cmd_sample(args):
    G = _graph(_load(args))
    cfg = SamplerConfig(args.seed, args.count, args.q, _ordering(G, args.order))
    calls: list[int] = []
    trees = [G.sorted_edges(T) for T in sample_spanning_tree(G, cfg, calls)]
    return {"trees": trees, "flow_calls_max": max(calls), "random_bits": random_bits(G)}


def cmd_verify(args):
    rep = run_suite(args.suite, _load(args))
    return rep.to_json(), (0 if rep.passed else 1)


def cmd_fixture(args):
    if args.name in RIBBON_FIXTURES:
        R = ribbon_fixture(args.name)
        out = (R.ribbon if isinstance(R, PlaneEmbedding) else R).to_json()
        if isinstance(R, PlaneEmbedding):
            out["outer_face"] = R.outer
        return out
    return graph_fixture(args.name).to_json()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geombij", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help, ribbon=False, leading=None):
        p = sub.add_parser(name, help=help)
        if leading:
            p.add_argument(leading[0], **leading[1])
        p.add_argument("input", nargs="?", help="graph or ribbon JSON file (default stdin)")
        p.add_argument("--fixture", help="use a built-in fixture instead of reading input")
        p.set_defaults(func=fn, needs_ribbon=ribbon)
        return p

    command("trees", cmd_trees, "list spanning trees")
    command("break-divisors", cmd_break_divisors, "list break divisors")
    command("cycles", cmd_cycles, "list simple cycles in canonical direction")
    command("check-geometric", cmd_check_geometric, "weight test for a cycle orientation configuration").add_argument(
        "--config", required=True
    )
    p = command("eom", cmd_eom, "edge ordering map of one tree")
    p.add_argument("--order")
    p.add_argument("--tree", required=True, help="comma separated edge ids")
    p = command("eom-invert", cmd_eom_invert, "tree of a break divisor under an edge ordering map")
    p.add_argument("--order")
    p.add_argument("--divisor", required=True)
    p = command("bernardi", cmd_bernardi, "Bernardi tour and divisor", ribbon=True)
    p.add_argument("--start", required=True, help="vertex,edge")
    p.add_argument("--tree", required=True)
    command("induced-config", cmd_induced_config, "cycle configuration of a Bernardi process", ribbon=True).add_argument(
        "--start", required=True
    )
    command("alg3", cmd_alg3, "edge ordering reproducing a face Bernardi map", ribbon=True).add_argument(
        "--face", type=int, default=None
    )
    command("dual", cmd_dual, "planar dual ribbon graph", ribbon=True)
    command("cells", cmd_cells, "cells of the torus decomposition").add_argument("--basis-tree")
    command("f-vector", cmd_f_vector, "face counts of the torus decomposition")
    p = command("torsor-delta", cmd_torsor_delta, "translating class between two bijections", ribbon=True)
    p.add_argument("spec_a", help="order:FILE, face:K, start:V,E or weights:FILE")
    p.add_argument("spec_b")
    p = command("duality-check", cmd_duality_check, "plane duality diagram", ribbon=True)
    p.add_argument("--face", type=int, required=True)
    p.add_argument("--vertex", required=True)
    p.add_argument("--reverse-convention", action="store_true", help="negative control")
    p = command("sample", cmd_sample, "uniform random spanning trees")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--order")
    p.add_argument("--q")
    command("verify", cmd_verify, "run a property suite", ribbon=True, leading=("suite", {"choices": SUITES}))
    p = sub.add_parser("fixture", help="print a built-in fixture")
    p.add_argument("name", choices=sorted(set(GRAPH_FIXTURES) | set(RIBBON_FIXTURES)))
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (InputError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeombijError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    json.dump(result, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
