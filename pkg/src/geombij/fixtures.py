"""Built-in desk-scale fixtures.

Planar rotation systems list incident edges counter-clockwise; for
straight-line drawings they are computed from vertex coordinates.
"""

from __future__ import annotations

import math

from .graph import Multigraph


def _graph(vertices, edges) -> Multigraph:
    return Multigraph(tuple(vertices), tuple(edges))


def theta() -> Multigraph:
    return _graph(["v1", "v2"], [("e1", "v1", "v2"), ("e2", "v1", "v2"), ("e3", "v1", "v2")])


K4_COORDS = {"a": (0.0, 0.0), "b": (4.0, 0.0), "c": (2.0, 4.0), "d": (2.0, 1.5)}


def k4() -> Multigraph:
    vs = "abcd"
    edges = [(x + y, x, y) for i, x in enumerate(vs) for y in vs[i + 1:]]
    return _graph(list(vs), edges)


Q3_COORDS = {
    "000": (0, 0), "100": (4, 0), "110": (4, 4), "010": (0, 4),
    "001": (1, 1), "101": (3, 1), "111": (3, 3), "011": (1, 3),
}


def cube() -> Multigraph:
    vs = [format(i, "03b") for i in range(8)]
    edges = []
    for i, x in enumerate(vs):
        for y in vs[i + 1:]:
            if sum(a != b for a, b in zip(x, y)) == 1:
                edges.append((f"{x}-{y}", x, y))
    return _graph(vs, edges)


def cycle_graph(n: int = 5) -> Multigraph:
    vs = [f"v{i}" for i in range(n)]
    return _graph(vs, [(f"e{i}", vs[i], vs[(i + 1) % n]) for i in range(n)])


def path_graph(n: int = 3) -> Multigraph:
    vs = [f"v{i}" for i in range(n)]
    return _graph(vs, [(f"e{i}", vs[i], vs[i + 1]) for i in range(n - 1)])


def single_vertex() -> Multigraph:
    return _graph(["v"], [])


def figure_one() -> Multigraph:
    """Four vertices q, a, d, x; spanning tree {e1, e3, e5} gives a genus-2 cycle basis."""
    return _graph(
        ["q", "a", "d", "x"],
        [("e1", "q", "a"), ("e2", "q", "d"), ("e3", "x", "a"), ("e4", "x", "d"), ("e5", "a", "d")],
    )


def bng2_graph() -> Multigraph:
    return _graph(
        ["u1", "u2", "u3"],
        [("e1p", "u1", "u2"), ("e2p", "u1", "u2"), ("e3p", "u1", "u3"), ("e4p", "u1", "u3")],
    )


def bng1_subdivision_graph() -> Multigraph:
    return _graph(
        ["v1", "v2", "u", "w"],
        [
            ("e11", "v1", "u"),
            ("e12", "u", "v2"),
            ("e2", "v1", "v2"),
            ("e31", "v1", "w"),
            ("e32", "w", "v2"),
        ],
    )


def rotations_from_coordinates(G: Multigraph, coords) -> dict[str, tuple[str, ...]]:
    """Counter-clockwise rotation system of a straight-line drawing."""
    rot = {}
    for v in G.vertices:
        x0, y0 = coords[v]

        def angle(eid, v=v, x0=x0, y0=y0):
            x1, y1 = coords[G.other_end(eid, v)]
            return math.atan2(y1 - y0, x1 - x0)

        rot[v] = tuple(sorted(G.incident(v), key=angle))
    return rot


def _cycle_coords(n):
    return {f"v{i}": (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)}


# name -> (graph factory, rotation factory or None, outer-face boundary or None)
RIBBON_FIXTURES = {
    # e1 drawn lowest, e3 highest; the outer face is bounded by e1 and e3
    "planar-theta": (theta, lambda G: {"v1": ("e1", "e2", "e3"), "v2": ("e3", "e2", "e1")}, {"e1", "e3"}),
    "k4": (k4, lambda G: rotations_from_coordinates(G, K4_COORDS), {"ab", "bc", "ac"}),
    "cube": (cube, lambda G: rotations_from_coordinates(G, Q3_COORDS), {"000-100", "100-110", "010-110", "000-010"}),
    "c5": (lambda: cycle_graph(5), lambda G: rotations_from_coordinates(G, _cycle_coords(5)), None),
    "p3": (lambda: path_graph(3), lambda G: {"v0": ("e0",), "v1": ("e0", "e1"), "v2": ("e1",)}, None),
    "bng1": (theta, lambda G: {"v1": ("e1", "e2", "e3"), "v2": ("e1", "e2", "e3")}, None),
    "bng2": (
        bng2_graph,
        lambda G: {"u1": ("e1p", "e3p", "e2p", "e4p"), "u2": ("e1p", "e2p"), "u3": ("e3p", "e4p")},
        None,
    ),
    # rotations inherited from BNG I: e1 -> (e11 at v1, e12 at v2), e3 -> (e31, e32)
    "bng1-subdivision": (
        bng1_subdivision_graph,
        lambda G: {
            "v1": ("e11", "e2", "e31"),
            "v2": ("e12", "e2", "e32"),
            "u": ("e11", "e12"),
            "w": ("e31", "e32"),
        },
        None,
    ),
}

GRAPH_FIXTURES = {
    "theta": theta,
    "planar-theta": theta,
    "k4": k4,
    "cube": cube,
    "c5": lambda: cycle_graph(5),
    "p3": lambda: path_graph(3),
    "figure1": figure_one,
    "bng1": theta,
    "bng2": bng2_graph,
    "bng1-subdivision": bng1_subdivision_graph,
}

PLANAR_FIXTURES = ("planar-theta", "k4", "cube", "c5", "p3")
BRIDGELESS_PLANAR_FIXTURES = ("planar-theta", "k4", "cube", "c5")


def graph_fixture(name: str) -> Multigraph:
    try:
        return GRAPH_FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(GRAPH_FIXTURES)}") from None


def ribbon_fixture(name: str):
    """RibbonGraph for ``name``; planar fixtures come back as PlaneEmbedding."""
    from .ribbon import RibbonGraph, plane_embedding, trace_faces

    make_graph, make_rot, outer = RIBBON_FIXTURES[name]
    G = make_graph()
    R = RibbonGraph(G, make_rot(G))
    if name not in PLANAR_FIXTURES:
        return R
    outer_id = 0
    if outer is not None:
        faces, _ = trace_faces(R)
        outer_id = next(i for i, f in enumerate(faces) if {d[0] for d in f} == outer)
    return plane_embedding(R, outer_id)
