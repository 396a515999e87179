"""Property tests on random small connected multigraphs."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from geombij.cycle_maps import EdgeOrdering, edge_ordering_config, edge_ordering_map, eom_inverse, InversionStats, is_geometric
from geombij.divisors import Divisor, apply_principal, enumerate_break_divisors, is_break_divisor, pic_group_structure, q_reduce
from geombij.graph import Multigraph, enumerate_spanning_trees
from geombij.jacobian import abel_jacobi, cycle_basis, divisor_points
from geombij.oracles import is_reduced_by_definition, matrix_tree_count, subset_tree_count
from geombij.orientations import break_representative
from geombij.torsors import TreeBijection

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, max_n=4, max_extra=3):
    n = draw(st.integers(1, max_n))
    vs = [f"x{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        edges.append((vs[j], vs[i]) if draw(st.booleans()) else (vs[i], vs[j]))
    if n > 1:
        for _ in range(draw(st.integers(0, max_extra))):
            a, b = draw(st.lists(st.sampled_from(vs), min_size=2, max_size=2, unique=True))
            edges.append((a, b))
    order = draw(st.permutations(range(len(edges))))
    return Multigraph(tuple(vs), tuple((f"e{k}", *edges[i]) for k, i in enumerate(order)))


@st.composite
def graph_and_divisor(draw, degree=None):
    G = draw(graphs())
    chips = draw(st.lists(st.integers(-3, 3), min_size=G.n, max_size=G.n))
    D = Divisor(dict(zip(G.vertices, chips)))
    if degree is not None:
        D = D + Divisor.point(G.vertices[0], degree(G) - D.degree)
    return G, D


@st.composite
def graph_and_ordering(draw):
    G = draw(graphs())
    T = sorted(draw(st.sampled_from(enumerate_spanning_trees(G))))
    forest = set(draw(st.lists(st.sampled_from(T), unique=True))) if T else set()
    rest = draw(st.permutations([e.id for e in G.edges if e.id not in forest]))
    dirs = draw(st.lists(st.sampled_from((1, -1)), min_size=len(rest), max_size=len(rest)))
    return G, EdgeOrdering(frozenset(forest), tuple(zip(rest, dirs)))


@SETTINGS
@given(graphs())
def test_tree_counts(G):
    assert len(enumerate_spanning_trees(G)) == subset_tree_count(G) == matrix_tree_count(G)
    assert len(enumerate_break_divisors(G)) == pic_group_structure(G).order == matrix_tree_count(G)


@SETTINGS
@given(graph_and_divisor(), st.data())
def test_q_reduce_is_a_class_invariant(GD, data):
    G, D = GD
    q = data.draw(st.sampled_from(G.vertices))
    u = data.draw(st.lists(st.integers(-2, 2), min_size=G.n, max_size=G.n))
    R = q_reduce(G, D, q)
    assert R.degree == D.degree
    assert is_reduced_by_definition(G, R, q)
    assert q_reduce(G, apply_principal(G, D, dict(zip(G.vertices, u))), q) == R


@SETTINGS
@given(graph_and_divisor(degree=lambda G: G.genus), st.data())
def test_break_representative(GD, data):
    G, D = GD
    q = data.draw(st.sampled_from(G.vertices))
    B = break_representative(G, D, q)
    assert B in set(enumerate_break_divisors(G))
    assert is_break_divisor(G, B)
    assert q_reduce(G, B) == q_reduce(G, D)


@SETTINGS
@given(graphs(), st.data())
def test_pic_coordinates_round_trip(G, data):
    pic = pic_group_structure(G)
    r = tuple(data.draw(st.integers(0, d - 1)) for d in pic.factors)
    assert pic.coordinates(pic.element(r)) == r


@SETTINGS
@given(graph_and_ordering())
def test_edge_ordering_round_trip(GO):
    G, o = GO
    assert is_geometric(G, edge_ordering_config(G, o))
    images = set()
    for T in enumerate_spanning_trees(G):
        D = edge_ordering_map(G, o, T)
        images.add(D)
        stats = InversionStats()
        assert eom_inverse(G, D, o, stats) == T
        assert stats.flow_calls <= o.h
    assert images == set(enumerate_break_divisors(G))


@SETTINGS
@given(graph_and_ordering())
def test_generic_vector_bijection(GO):
    G, _ = GO
    w = {e.id: 3**k for k, e in enumerate(G.edges)}
    beta = TreeBijection.from_vector(G, w)
    assert set(beta.table.values()) == set(enumerate_break_divisors(G))


@SETTINGS
@given(graphs(max_n=4, max_extra=2), st.data())
def test_abel_jacobi_path_independence(G, data):
    basis = cycle_basis(G)
    trees = enumerate_spanning_trees(G)
    D = Divisor.from_vertices(data.draw(st.lists(st.sampled_from(G.vertices), max_size=3)))
    T = data.draw(st.sampled_from(trees))
    q = G.vertices[0]
    assert abel_jacobi(G, basis, divisor_points(D), q) == abel_jacobi(G, basis, divisor_points(D), q, path_tree=T)
