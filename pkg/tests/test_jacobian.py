from fractions import Fraction

import numpy as np
import pytest

from geombij.divisors import enumerate_break_divisors
from geombij.exceptions import InputError
from geombij.fixtures import graph_fixture
from geombij.graph import Cycle, enumerate_spanning_trees
from geombij.jacobian import (
    MetricPoint,
    abel_jacobi,
    all_cells,
    basis_vector,
    cell_vertex_divisor,
    chamber_signature,
    corner_patterns,
    cycle_basis,
    divisor_points,
    edge_projection,
    f_vector,
    is_generic,
    project,
    shift_bijection,
    torus_reduce,
)

SMALL = ["theta", "k4", "figure1", "bng2", "c5", "bng1-subdivision"]


def test_figure_one_basis():
    G = graph_fixture("figure1")
    basis = cycle_basis(G, {"e1", "e3", "e5"})
    assert basis.edges == ("e2", "e4")
    assert basis.cycles[0] == Cycle({"e1": 1, "e2": -1, "e5": 1})
    assert basis.gram == ((3, 1), (1, 3))


def test_basis_rejects_non_tree(theta):
    with pytest.raises(InputError):
        cycle_basis(theta, {"e1", "e2"})


@pytest.mark.parametrize("name", SMALL)
def test_projection_matches_least_squares(name):
    G = graph_fixture(name)
    basis = cycle_basis(G)
    C = np.array(basis.vectors(), dtype=float).T
    P = C @ np.linalg.inv(C.T @ C) @ C.T
    rng = np.random.default_rng(0)
    for _ in range(5):
        v = rng.integers(-3, 4, size=G.m)
        w = basis_vector(basis, project(basis, list(v)))
        np.testing.assert_allclose([float(w.get(e.id, 0)) for e in G.edges], P @ v, atol=1e-12)


def test_projection_of_cycle_is_itself(k4):
    basis = cycle_basis(k4)
    for i, C in enumerate(basis.cycles):
        assert project(basis, C.signs) == tuple(Fraction(int(i == j)) for j in range(basis.g))


def test_torus_reduce():
    assert torus_reduce([Fraction(-1, 3), Fraction(7, 4), 2]) == (Fraction(2, 3), Fraction(3, 4), Fraction(0))


def test_metric_point_validation():
    with pytest.raises(InputError):
        MetricPoint()
    with pytest.raises(InputError):
        MetricPoint(vertex="a", edge="e")
    with pytest.raises(InputError):
        MetricPoint.on_edge("e", Fraction(3, 2))
    with pytest.raises(InputError):
        divisor_points({"a": -1})


def test_edge_endpoints_agree_with_vertices():
    G = graph_fixture("figure1")
    basis = cycle_basis(G, {"e1", "e3", "e5"})
    for e in G.edges:
        assert abel_jacobi(G, basis, [MetricPoint.on_edge(e.id, 0)], "q") == abel_jacobi(G, basis, [MetricPoint.at(e.tail)], "q")
        assert abel_jacobi(G, basis, [MetricPoint.on_edge(e.id, 1)], "q") == abel_jacobi(G, basis, [MetricPoint.at(e.head)], "q")


@pytest.mark.parametrize("name", SMALL + ["cube"])
def test_cells_tile_the_torus(name):
    G = graph_fixture(name)
    cells = all_cells(G)
    assert len(cells) == len(enumerate_spanning_trees(G))
    assert sum(c.volume() for c in cells) == 1


@pytest.mark.parametrize("name", SMALL)
def test_cell_corners_are_break_divisor_images(name):
    G = graph_fixture(name)
    basis = cycle_basis(G)
    q = G.vertices[0]
    breaks = set(enumerate_break_divisors(G))
    for c in all_cells(G, basis):
        assert c.generators == tuple(edge_projection(basis, e) for e in c.edges)
        for pattern in corner_patterns(basis.g):
            D = cell_vertex_divisor(G, c, pattern)
            assert D in breaks
            assert abel_jacobi(G, basis, divisor_points(D), q) == c.vertex(pattern)


@pytest.mark.parametrize("name", ["theta", "k4", "bng2", "figure1"])
def test_abel_jacobi_injective_on_break_divisors(name):
    G = graph_fixture(name)
    basis = cycle_basis(G)
    images = {abel_jacobi(G, basis, divisor_points(D), G.vertices[0]) for D in enumerate_break_divisors(G)}
    assert len(images) == len(enumerate_break_divisors(G))


def test_theta_cells():
    cells = all_cells(graph_fixture("theta"))
    assert [c.volume() for c in cells] == [Fraction(1, 3)] * 3
    assert cells[0].to_json() == {"tree": ["e1"], "base": ["0", "0"], "generators": [["-2/3", "1/3"], ["1/3", "-2/3"]]}


def test_f_vectors():
    assert f_vector(graph_fixture("theta")) == [3, 6, 3]
    assert f_vector(graph_fixture("k4")) == [16, 48, 48, 16]
    assert f_vector(graph_fixture("p3")) == [1]


def test_genericity_and_shift(k4):
    w = {"ab": Fraction(1), "ac": Fraction(2), "ad": Fraction(4), "bc": Fraction(8), "bd": Fraction(16), "cd": Fraction(32)}
    assert is_generic(k4, w)
    assert 0 not in chamber_signature(k4, w)
    table = shift_bijection(k4, w)
    assert set(table.values()) == set(enumerate_break_divisors(k4))
    assert not is_generic(k4, {"ab": 1})


def test_small_grams():
    assert cycle_basis(graph_fixture("theta"), {"e1"}).gram == ((2, 1), (1, 2))
    assert cycle_basis(graph_fixture("c5")).gram == ((5,),)


def test_figure_one_projection():
    G = graph_fixture("figure1")
    basis = cycle_basis(G, {"e1", "e3", "e5"})
    v = {"e1": 1, "e2": 1, "e4": Fraction(-1, 3)}
    assert project(basis, v) == (Fraction(-1, 24), Fraction(1, 8))
    # cut vectors are orthogonal to the cycle space
    assert project(basis, {"e1": 1, "e2": 1}) == (0, 0)
