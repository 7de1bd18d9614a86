import itertools

import pytest
from hypothesis import given, strategies as st

from cuthilbert.errors import BadCount, BadIndex, LoopRejected, NotAClique, SizeMismatch, UnknownName
from cuthilbert.graph import (
    build_graph,
    complete_graph,
    compose,
    connectivity_report,
    contract_edge,
    cut_of,
    cycle_basis,
    cycle_graph,
    delete_edge,
    enumerate_bonds,
    enumerate_circuits,
    enumerate_cuts,
    is_circuit,
    named_graph,
    path_graph,
    simplify,
    subdivide_edge,
    two_sum,
)
from cuthilbert.iso import are_isomorphic

from strategies import graphs


def brute_cuts(g):
    """Distinct incidence vectors over all 2^n vertex subsets."""
    out = set()
    for r in range(g.n + 1):
        for s in itertools.combinations(g.vertices, r):
            s = set(s)
            out.add(tuple(int((u in s) != (v in s)) for u, v in g.edges))
    return out


def brute_bonds(g):
    cuts = [c for c in brute_cuts(g) if any(c)]
    def inside(a, b):
        return a != b and all(x <= y for x, y in zip(a, b))
    return {c for c in cuts if not any(inside(d, c) for d in cuts)}


# --------------------------------------------------------------------------
# construction


def test_empty_graph():
    g = build_graph([])
    assert (g.n, g.m) == (0, 0)


def test_triangle_and_parallel_pair():
    g = build_graph([("a", "b"), ("b", "c"), ("a", "c")])
    assert (g.n, g.m) == (3, 3)
    h = build_graph([("a", "b"), ("a", "b")])
    assert (h.n, h.m) == (2, 2) and not h.is_simple()


def test_loop_rejected():
    with pytest.raises(LoopRejected):
        build_graph([("a", "a")])


def test_vertices_in_first_appearance_order():
    g = build_graph([("x", "b"), ("b", "a")])
    assert g.vertices == ("x", "b", "a")


@pytest.mark.parametrize("name,n,m", [
    ("K5perp", 6, 11), ("H10", 10, 21), ("H10minus", 10, 20), ("H11", 11, 22),
    ("K6", 6, 15), ("K6minusE", 6, 14), ("K4", 4, 6), ("Petersen", 10, 15),
    ("C4", 4, 4), ("W4", 5, 8), ("Dodecahedron", 20, 30), ("Prism", 6, 9), ("K3,3", 6, 9),
])
def test_catalog_sizes(name, n, m):
    g = named_graph(name)
    assert (g.n, g.m) == (n, m)


def test_unknown_name():
    with pytest.raises(UnknownName):
        named_graph("Q7")


def test_k5perp_labeling():
    g = named_graph("K5perp")
    assert set(g.neighbors("5")) == {"1", "2", "6"}
    assert set(g.neighbors("6")) == {"3", "4", "5"}
    assert g.edges[-1] == ("5", "6")


def test_h10minus_triangles():
    g = named_graph("H10minus")
    for tri in [("1", "2", "3"), ("3", "4", "6"), ("5", "7", "8"), ("6", "9", "10"),
                ("1", "2", "4"), ("7", "8", "9"), ("8", "9", "10")]:
        assert all(g.has_edge(a, b) for a, b in itertools.combinations(tri, 2)), tri
    assert not g.has_edge("5", "6")


def test_h10_h10minus_h11_relations():
    h10, h10m, h11 = named_graph("H10"), named_graph("H10minus"), named_graph("H11")
    assert delete_edge(h10, h10.edge_index("5", "6")) == h10m
    assert h11.edges[:20] == h10m.edges
    assert set(h11.neighbors("11")) == {"5", "6"}


def test_k6minuse_is_k6_minus_an_edge():
    k6 = complete_graph(6)
    assert are_isomorphic(delete_edge(k6, 0), named_graph("K6minusE"))
    assert not named_graph("K6minusE").has_edge("5", "6")


# --------------------------------------------------------------------------
# edits


def test_delete_edge_keeps_vertices_and_order():
    g = delete_edge(path_graph(2), 0)
    assert (g.n, g.m) == (2, 0)
    k4 = complete_graph(4)
    h = delete_edge(k4, 2)
    assert h.edges == k4.edges[:2] + k4.edges[3:]
    with pytest.raises(BadIndex):
        delete_edge(k4, 6)


def test_contract_k5perp_gives_k5():
    g = named_graph("K5perp")
    h = contract_edge(g, g.edge_index("5", "6"), simplify_result=True)
    assert are_isomorphic(h, complete_graph(5))


def test_contract_triangle_edge():
    h = contract_edge(complete_graph(3), 0, simplify_result=True)
    assert (h.n, h.m) == (2, 1)
    h = contract_edge(complete_graph(3), 0)
    assert (h.n, h.m) == (2, 2)


def test_contract_spoke_of_wheel_leaves_parallels():
    w = named_graph("W4")
    spoke = w.edge_index("1", "5")
    h = contract_edge(w, spoke)
    pairs = [frozenset(e) for e in h.edges]
    assert len(pairs) != len(set(pairs))
    assert h.m == 7 and simplify(h).m == 5


def test_contract_label_is_smaller():
    g = build_graph([("2", "10"), ("10", "3")])
    h = contract_edge(g, 0)
    assert "2" in h.vertices and "10" not in h.vertices


def test_subdivide():
    h = subdivide_edge(complete_graph(3), 0, 1)
    assert are_isomorphic(h, cycle_graph(4))
    with pytest.raises(BadCount):
        subdivide_edge(complete_graph(3), 0, 0)
    with pytest.raises(BadIndex):
        subdivide_edge(complete_graph(3), 5, 1)


def test_compose_h10_family():
    k = named_graph("K5perp")
    assert are_isomorphic(compose(k, k, {"5": "5", "6": "6"}, "n_sum"), named_graph("H10minus"))
    h10 = compose(k, k, {"5": "5", "6": "6"}, "clique_sum")
    assert (h10.n, h10.m) == (10, 21)
    assert are_isomorphic(h10, named_graph("H10"))


def test_compose_bowtie():
    g = compose(complete_graph(3), complete_graph(3), {"1": "1"}, "clique_sum")
    assert (g.n, g.m) == (5, 6)


def test_compose_errors():
    with pytest.raises(NotAClique):
        compose(cycle_graph(4), cycle_graph(4), {"1": "1", "3": "3"}, "clique_sum")
    with pytest.raises(SizeMismatch):
        compose(complete_graph(5), complete_graph(5), {str(i): str(i) for i in range(1, 5)})


@given(graphs(min_n=2, max_n=7, connected=True), st.data())
def test_subdivide_twice_is_sum_with_c4(g, data):
    f = data.draw(st.integers(0, g.m - 1))
    c4 = cycle_graph(4)
    assert are_isomorphic(subdivide_edge(g, f, 2), two_sum(g, c4, f, 0))


# --------------------------------------------------------------------------
# cuts, bonds, circuits


def test_triangle_cuts():
    cuts = enumerate_cuts(complete_graph(3))
    assert [c.incidence for c in cuts] == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]


@pytest.mark.parametrize("name,cuts,bonds", [
    ("K4", 8, 7), ("C4", 8, 6), ("K5perp", 32, 26), ("K6minusE", 32, 30),
    ("H10minus", 512, 151), ("W4", 16, 13), ("K3,3", 32, 24), ("P3", 4, 2),
])
def test_cut_and_bond_counts(name, cuts, bonds):
    g = named_graph(name)
    assert len(enumerate_cuts(g)) == cuts
    assert len(enumerate_bonds(g)) == bonds


@given(graphs(max_n=6))
def test_cuts_match_brute_force(g):
    assert {c.incidence for c in enumerate_cuts(g)} == brute_cuts(g)


@given(graphs(max_n=6))
def test_bonds_are_minimal_cuts(g):
    assert {c.incidence for c in enumerate_bonds(g)} == brute_bonds(g)


@given(graphs(max_n=7), st.data())
def test_cut_complement_symmetry(g, data):
    s = data.draw(st.sets(st.sampled_from(g.vertices)))
    assert cut_of(g, s).incidence == cut_of(g, set(g.vertices) - s).incidence


@given(graphs(max_n=7), st.data())
def test_cut_space_closed_under_symmetric_difference(g, data):
    s = data.draw(st.sets(st.sampled_from(g.vertices)))
    t = data.draw(st.sets(st.sampled_from(g.vertices)))
    a, b = cut_of(g, s).incidence, cut_of(g, t).incidence
    assert tuple(x ^ y for x, y in zip(a, b)) == cut_of(g, s ^ t).incidence


@given(graphs(max_n=8))
def test_cuts_peel_into_bonds(g):
    bonds = [b.incidence for b in enumerate_bonds(g)]
    assert set(bonds) <= {c.incidence for c in enumerate_cuts(g)}
    for c in enumerate_cuts(g):
        rest = list(c.incidence)
        while any(rest):
            b = next(b for b in bonds if all(x <= y for x, y in zip(b, rest)))
            rest = [y - x for x, y in zip(b, rest)]


def test_canonical_generator_is_smaller_side():
    c = cut_of(complete_graph(4), {"2", "3", "4"})
    assert c.generator == ("1",)


@pytest.mark.parametrize("name,count", [("K5", 6), ("K6minusE", 9), ("P5", 0), ("C7", 1)])
def test_cycle_basis_size(name, count):
    g = named_graph(name)
    basis = cycle_basis(g)
    assert len(basis) == count
    assert all(is_circuit(g, c.edges) for c in basis)


def test_circuit_enumeration_k5():
    circuits = enumerate_circuits(complete_graph(5))
    assert len(circuits) == 37
    assert sum(1 for c in circuits if len(c) == 3) == 10


@given(graphs(max_n=6))
def test_enumerated_circuits_are_circuits(g):
    for c in enumerate_circuits(g):
        assert is_circuit(g, c.edges)


# --------------------------------------------------------------------------
# connectivity


def test_connectivity_reports():
    assert connectivity_report(named_graph("K5perp")).three_connected
    r = connectivity_report(path_graph(3))
    assert r.connected and not r.two_connected
    r = connectivity_report(named_graph("H10minus"))
    assert r.two_connected and not r.three_connected
