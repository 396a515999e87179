import pytest

from geombij.divisors import Divisor, apply_principal, enumerate_break_divisors, linearly_equivalent, q_reduce
from geombij.exceptions import DegreeSumError, IterationCapExceeded, NotBreakError, NotDirectedError, OrientationInfeasible
from geombij.fixtures import GRAPH_FIXTURES, graph_fixture
from geombij.oracles import hakimi_violation, orientation_exists
from geombij.orientations import (
    Orientation,
    all_orientations,
    away_from,
    break_representative,
    complete_orientation,
    cycle_reversal_classes,
    directed_path,
    divisor_to_orientation,
    indegree_divisor,
    is_q_connected,
    orientation_with_indegrees,
    reachable,
    reverse_cocycle,
)


def test_orientation_basics(theta):
    O = Orientation({"e1": 1, "e2": -1, "e3": 1})
    assert O.is_total(theta)
    assert O.flipped(["e2"]) == Orientation({"e1": 1, "e2": 1, "e3": 1})
    assert indegree_divisor(theta, O) == Divisor({"v2": 2, "v1": 1}) - Divisor({"v1": 1, "v2": 1})
    with pytest.raises(ValueError):
        Orientation({"e1": 2})


def test_theta_indegree_flow(theta):
    assert orientation_with_indegrees(theta, {"v1": 0, "v2": 3}) == Orientation({"e1": 1, "e2": 1, "e3": 1})


def test_infeasible_indegrees_carry_hall_witness(k4):
    with pytest.raises(OrientationInfeasible) as info:
        orientation_with_indegrees(k4, {"a": 6})
    S = info.value.witness
    inside = sum(1 for e in k4.edges if e.tail in S and e.head in S)
    assert inside > 0  # demand on S is 0
    assert hakimi_violation(k4, {"a": 6}) is not None
    with pytest.raises(DegreeSumError):
        orientation_with_indegrees(k4, {"a": 5})


@pytest.mark.parametrize("name", ["theta", "k4", "bng2", "figure1"])
def test_flow_agrees_with_exhaustive_search(name):
    G = graph_fixture(name)
    from itertools import product

    for d in product(range(G.m + 1), repeat=G.n):
        if sum(d) != G.m:
            continue
        target = dict(zip(G.vertices, d))
        want = orientation_exists(G, target)
        try:
            O = orientation_with_indegrees(G, target)
        except OrientationInfeasible:
            assert not want
            assert hakimi_violation(G, target) is not None
        else:
            assert want
            assert indegree_divisor(G, O) + Divisor.from_vertices(G.vertices) == Divisor(target)


@pytest.mark.parametrize("name", sorted(GRAPH_FIXTURES))
def test_divisor_to_orientation(name):
    G = graph_fixture(name)
    q = G.vertices[-1]
    for D in enumerate_break_divisors(G):
        O = divisor_to_orientation(G, D, q)
        assert is_q_connected(G, O, q)
        assert indegree_divisor(G, O) + Divisor.point(q) == D


def test_divisor_to_orientation_rejects(theta):
    with pytest.raises(NotBreakError):
        divisor_to_orientation(theta, {"v1": 3, "v2": -1}, "v1")
    with pytest.raises(NotBreakError):
        divisor_to_orientation(theta, {"v1": 1}, "v1")


def test_break_representative_values(k4, theta):
    # frozen from a lookup among the 16 break divisors
    assert break_representative(k4, {"a": 3}) == Divisor({"b": 1, "c": 1, "d": 1})
    assert break_representative(theta, {"v2": 2}) == Divisor({"v2": 2})
    # (v2) - (v1) has order 3
    assert break_representative(theta, {"v2": 5, "v1": -3}) == Divisor({"v2": 2})
    with pytest.raises(ValueError):
        break_representative(theta, {"v1": 1})


@pytest.mark.parametrize("name", ["theta", "k4", "cube", "bng2"])
def test_break_representative_by_lookup(name):
    G = graph_fixture(name)
    breaks = enumerate_break_divisors(G)
    by_class = {q_reduce(G, D): D for D in breaks}
    for q in (G.vertices[0], G.vertices[-1]):
        for D in breaks:
            shifted = apply_principal(G, D, {G.vertices[1]: 3, q: -2})
            assert break_representative(G, shifted, q) == by_class[q_reduce(G, D)]


def test_reverse_cocycle(k4):
    O = away_from(k4, {"ab", "ac", "ad"}, "a").merged({"bc": 1, "bd": 1, "cd": 1})
    assert reachable(k4, O, "a") == set("abcd")
    flipped = reverse_cocycle(k4, O, {"b", "c", "d"})
    assert reachable(k4, flipped, "a") == {"a"}
    with pytest.raises(NotDirectedError):
        reverse_cocycle(k4, O, {"b"})


def test_complete_orientation_orients_tree_away(theta):
    O = complete_orientation(theta, {"e2"}, {"e1": -1, "e3": 1}, "v2")
    assert O == Orientation({"e2": -1, "e1": -1, "e3": 1})
    assert directed_path(theta, O, "v2", "v1") is not None


def test_cycle_reversal_classes_partition(k4):
    classes = cycle_reversal_classes(k4)
    assert sum(len(c) for c in classes.values()) == 2 ** k4.m
    for D, members in classes.items():
        assert all(indegree_divisor(k4, O) == D for O in members)
    assert len(list(all_orientations(k4))) == 64


def test_cap_is_reported():
    assert issubclass(IterationCapExceeded, RuntimeError)
