import json

import pytest

from geombij.cycle_maps import CycleOrientationConfiguration, edge_ordering_config, is_geometric
from geombij.divisors import Divisor, enumerate_break_divisors
from geombij.exceptions import HasBridgeError, InputError, NotPlanarError, StartNotIncidentError
from geombij.fixtures import PLANAR_FIXTURES, RIBBON_FIXTURES, graph_fixture, ribbon_fixture
from geombij.graph import enumerate_cycles, enumerate_spanning_trees
from geombij.ribbon import (
    ConflictWitness,
    PlaneEmbedding,
    RibbonGraph,
    algorithm3_ordering,
    all_starts,
    as_plane,
    bernardi_divisor,
    bernardi_partial_orientation,
    bernardi_tour,
    cycle_is_counterclockwise,
    face_configuration,
    induced_configuration,
    inside_faces,
    parse_ribbon,
    planar_dual,
    ribbon_genus,
    trace_faces,
)


@pytest.mark.parametrize("name,genus", [("planar-theta", 0), ("k4", 0), ("cube", 0), ("c5", 0), ("p3", 0), ("bng1", 1), ("bng2", 1), ("bng1-subdivision", 1)])
def test_fixture_genus(name, genus):
    R = ribbon_fixture(name)
    R = R.ribbon if isinstance(R, PlaneEmbedding) else R
    assert ribbon_genus(R) == genus
    faces, dart_face = trace_faces(R)
    assert len(dart_face) == 2 * R.graph.m
    assert sum(len(f) for f in faces) == 2 * R.graph.m


@pytest.mark.parametrize("name,faces", [("planar-theta", 3), ("k4", 4), ("cube", 6), ("c5", 2), ("p3", 1)])
def test_plane_face_counts(name, faces):
    P = ribbon_fixture(name)
    assert len(P.faces) == faces


def test_outer_faces_match_drawings():
    assert set(ribbon_fixture("planar-theta").face_edges(ribbon_fixture("planar-theta").outer)) == {"e1", "e3"}
    assert set(ribbon_fixture("k4").face_edges(ribbon_fixture("k4").outer)) == {"ab", "bc", "ac"}


def test_rotation_validation(theta):
    with pytest.raises(InputError):
        RibbonGraph(theta, {"v1": ("e1", "e2", "e3")})
    with pytest.raises(InputError):
        RibbonGraph(theta, {"v1": ("e1", "e2"), "v2": ("e1", "e2", "e3")})
    with pytest.raises(InputError):
        RibbonGraph(theta, {"v1": ("e1", "e1", "e3"), "v2": ("e1", "e2", "e3")})


def test_non_planar_rejected():
    with pytest.raises(NotPlanarError):
        as_plane(ribbon_fixture("bng1"))


def test_parse_ribbon_round_trip():
    P = ribbon_fixture("k4")
    doc = P.ribbon.to_json()
    doc["outer_face"] = P.outer
    Q = parse_ribbon(json.dumps(doc))
    assert isinstance(Q, PlaneEmbedding) and Q.faces == P.faces and Q.outer == P.outer
    assert isinstance(parse_ribbon(ribbon_fixture("bng2").to_json()), RibbonGraph)
    with pytest.raises(InputError):
        parse_ribbon({"graph": P.graph.to_json()})


def test_hand_traced_tour():
    P = ribbon_fixture("planar-theta")
    tour = bernardi_tour(P, {"e2"}, ("v1", "e1"))
    assert tour.states == (("v1", "e1"), ("v1", "e2"), ("v2", "e1"), ("v2", "e3"), ("v2", "e2"), ("v1", "e3"))
    assert tour.eta == {"e1": "v1", "e3": "v2"}
    assert tour.divisor() == Divisor({"v1": 1, "v2": 1})
    assert bernardi_partial_orientation(P, {"e2"}, ("v1", "e1")) == {"e1": -1, "e3": 1}


def test_start_must_be_incident(k4):
    P = ribbon_fixture("k4")
    with pytest.raises(StartNotIncidentError):
        bernardi_tour(P, {"ab", "ac", "ad"}, ("a", "bc"))


@pytest.mark.parametrize("name", sorted(RIBBON_FIXTURES))
def test_bernardi_is_a_bijection_for_every_start(name):
    R = ribbon_fixture(name)
    G = R.graph
    breaks = set(enumerate_break_divisors(G))
    trees = enumerate_spanning_trees(G)
    for start in all_starts(G):
        images = {bernardi_divisor(R, T, start) for T in trees}
        assert len(images) == len(trees) and images == breaks


def test_bng1_configurations():
    # every start on the genus-one theta embedding still induces a geometric configuration
    R = ribbon_fixture("bng1")
    for start in all_starts(R.graph):
        cfg = induced_configuration(R, start)
        assert isinstance(cfg, CycleOrientationConfiguration) and is_geometric(R.graph, cfg)
    assert induced_configuration(R, ("v1", "e1")).signs == (-1, -1, -1)


def test_bng2_mixes_consistent_and_conflicting_starts():
    R = ribbon_fixture("bng2")
    kinds = {s: isinstance(induced_configuration(R, s), ConflictWitness) for s in all_starts(R.graph)}
    assert kinds[("u1", "e1p")] is False
    assert kinds[("u2", "e1p")] is True


def test_subdivision_conflict_witness():
    R = ribbon_fixture("bng1-subdivision")
    w = induced_configuration(R, ("u", "e12"))
    assert isinstance(w, ConflictWitness)
    assert w.cycle.support == frozenset({"e2", "e31", "e32"})
    assert w.direction_a == -w.direction_b


def test_cycle_orientation_geometry():
    P = ribbon_fixture("planar-theta")
    (c12, c13, c23) = enumerate_cycles(P.graph)
    # e1 runs along the bottom, e3 along the top; inner faces sit between consecutive edges
    assert len(inside_faces(P, c12)) == 1 and len(inside_faces(P, c13)) == 2
    assert cycle_is_counterclockwise(P, c12) != cycle_is_counterclockwise(P, c12.reversed())


@pytest.mark.parametrize("name", PLANAR_FIXTURES)
def test_algorithm3_reproduces_face_configuration(name):
    P = ribbon_fixture(name)
    for F in range(len(P.faces)):
        o = algorithm3_ordering(P, F)
        assert not o.forest and o.h == P.graph.m
        o.validate(P.graph)
        assert edge_ordering_config(P.graph, o) == face_configuration(P, F)


def test_algorithm3_first_edge():
    P = ribbon_fixture("k4")
    F = P.outer
    o = algorithm3_ordering(P, F, first_edge="bc")
    assert o.order[0][0] == "bc"
    assert edge_ordering_config(P.graph, o) == face_configuration(P, F)
    with pytest.raises(InputError):
        algorithm3_ordering(P, F, first_edge="ad")


@pytest.mark.parametrize("name", ["planar-theta", "k4", "cube", "c5"])
def test_planar_dual(name):
    P = ribbon_fixture(name)
    PD = planar_dual(P)
    D = PD.dual
    assert D.graph.n == len(P.faces) and D.graph.m == P.graph.m
    assert len(D.faces) == P.graph.n
    assert sorted(PD.vertex_face.values()) == list(range(P.graph.n))
    for T in enumerate_spanning_trees(P.graph):
        assert PD.tree(T) in set(enumerate_spanning_trees(D.graph))
    # the dual of the dual has the primal's shape
    DD = planar_dual(D)
    assert DD.dual.graph.n == P.graph.n and len(DD.dual.faces) == len(P.faces)


def test_planar_theta_dual_edges():
    PD = planar_dual(ribbon_fixture("planar-theta"))
    assert PD.dual.graph.to_json() == {
        "vertices": ["f0", "f1", "f2"],
        "edges": [["e1", "f1", "f0"], ["e2", "f2", "f1"], ["e3", "f0", "f2"]],
    }


def test_dual_rejects_bridges():
    with pytest.raises(HasBridgeError):
        planar_dual(ribbon_fixture("p3"))


@pytest.mark.parametrize("name", ["planar-theta", "k4", "cube"])
def test_adjacent_faces_share_an_ordering_up_to_first_edge(name):
    P = ribbon_fixture(name)
    for e in P.graph.edges:
        F, F2 = P.right_face(e.id), P.left_face(e.id)
        a = algorithm3_ordering(P, F, first_edge=e.id)
        b = algorithm3_ordering(P, F2, first_edge=e.id)
        assert a.order[0] == (e.id, -b.order[0][1])
        assert a.order[1:] == b.order[1:]
