import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuthilbert.builtins import builtin
from cuthilbert.errors import BadIndex, NotInCone, NotK5
from cuthilbert.geometry import (
    CYCLE,
    HYPERMETRIC,
    cycle_inequalities,
    dd_extreme_rays,
    dd_facets,
    feasibility_interval,
    hypermetric_k5,
    in_cone,
    nonneg_inequalities,
    override_entry,
    tight_set,
)
from cuthilbert.graph import complete_graph, cut_of, cycle_graph, enumerate_bonds, enumerate_cuts, named_graph
from cuthilbert.linalg import dot

from strategies import graphs

HALF = Fraction(1, 2)
K5_FREE = ["K4", "W4", "W5", "Prism", "K3,3", "C5", "K5minusE", "K2,3"]


def random_vector(rng, m, den=4, top=8):
    return tuple(Fraction(rng.randint(0, top), rng.randint(1, den)) for _ in range(m))


# --------------------------------------------------------------------------
# membership


def test_zero_vector_member():
    res = in_cone(complete_graph(4), [0] * 6)
    assert res.member and res.witness == {}


def test_k6e_half_witness():
    b = builtin("k6e")
    res = in_cone(b.graph, b.vector())
    assert res.member
    recon = [sum(c * cut.incidence[i] for cut, c in res.witness.items()) for i in range(b.graph.m)]
    assert tuple(recon) == b.vector()
    assert {cut.incidence for cut in res.witness} <= {c.incidence for c in b.cuts()}
    assert set(res.witness.values()) == {HALF}


def test_triangle_violation():
    assert not in_cone(complete_graph(3), [5, 1, 1]).member
    assert in_cone(complete_graph(3), [2, 1, 1]).member


def test_negative_entry_not_member():
    assert not in_cone(complete_graph(3), [-1, 1, 1]).member


# --------------------------------------------------------------------------
# rays and facets


@pytest.mark.parametrize("name,count", [("K3", 3), ("K4", 7), ("C4", 6)])
def test_extreme_ray_counts(name, count):
    assert len(dd_extreme_rays(named_graph(name))) == count


@settings(max_examples=25)
@given(graphs(max_n=6, max_m=10))
def test_extreme_rays_are_bonds(g):
    assert {c.incidence for c in dd_extreme_rays(g)} == {b.incidence for b in enumerate_bonds(g)}


def test_k3_facets_are_triangle_inequalities():
    fs = dd_facets(complete_graph(3))
    assert sorted(a.coefficients for a in fs) == [(-1, 1, 1), (1, -1, 1), (1, 1, -1)]
    assert all(a.kind == CYCLE for a in fs)


def test_k4_facets_are_seymour_subset():
    g = complete_graph(4)
    fs = dd_facets(g)
    allowed = {a.coefficients for a in nonneg_inequalities(g) + cycle_inequalities(g)}
    assert {a.coefficients for a in fs} <= allowed
    assert fs.is_irredundant()


def test_k5_facet_classes():
    g = complete_graph(5)
    fs = dd_facets(g)
    counts = fs.counts()
    assert counts[CYCLE] == 30 and counts[HYPERMETRIC] == 10
    triangles = {a.coefficients for a in cycle_inequalities(g) if sum(1 for v in a.coefficients if v) == 3}
    hyper = {a.coefficients for a in hypermetric_k5(g, g.vertices)}
    assert {a.coefficients for a in fs if a.kind == CYCLE} == triangles
    assert {a.coefficients for a in fs if a.kind == HYPERMETRIC} == hyper


@settings(max_examples=20)
@given(graphs(max_n=6, max_m=9))
def test_inequalities_valid_on_all_cuts(g):
    ineqs = nonneg_inequalities(g) + cycle_inequalities(g) + list(dd_facets(g))
    for a in ineqs:
        for c in enumerate_cuts(g):
            assert a.holds(c.incidence)


@settings(max_examples=20)
@given(graphs(max_n=6, max_m=10, connected=True), st.randoms(use_true_random=False))
def test_duality_round_trip(g, rnd):
    fs = dd_facets(g)
    for _ in range(8):
        x = random_vector(rnd, g.m)
        assert fs.contains(x) == in_cone(g, x).member


@pytest.mark.parametrize("name", K5_FREE)
def test_seymour_description(name):
    g = named_graph(name)
    rng = random.Random(name)
    cyc = cycle_inequalities(g)
    for _ in range(30):
        x = random_vector(rng, g.m)
        assert in_cone(g, x).member == all(a.holds(x) for a in cyc)


def test_cycle_inequality_counts():
    assert len(cycle_inequalities(complete_graph(3))) == 3
    assert len(cycle_inequalities(cycle_graph(4))) == 4
    k5 = cycle_inequalities(complete_graph(5))
    assert sum(1 for a in k5 if sum(1 for v in a.coefficients if v) == 3) == 30


def test_hypermetric_identity():
    g = complete_graph(5)
    labels = list(g.vertices)
    ineqs = hypermetric_k5(g, labels)
    assert len({a.coefficients for a in ineqs}) == 10
    for a in ineqs:
        b = a.provenance
        for r in range(6):
            for side in itertools.combinations(range(5), r):
                s = sum(b[i] for i in side)
                cut = cut_of(g, [labels[i] for i in side])
                # stored as -sum b_i b_j x_ij >= 0
                assert -a.value(cut.incidence) == s * (1 - s)


def test_hypermetric_example_strict():
    g = complete_graph(5)
    a = next(a for a in hypermetric_k5(g, g.vertices) if a.provenance == (1, 1, 1, -1, -1))
    assert a.value(cut_of(g, ["4", "5"]).incidence) == 6


def test_hypermetric_needs_k5():
    with pytest.raises(NotK5):
        hypermetric_k5(named_graph("K5minusE"), ["1", "2", "3", "4", "5"])


# --------------------------------------------------------------------------
# intervals


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("a", [1, 2])
def test_cycle_intervals(n, a):
    g = cycle_graph(n)
    y = [a] * n
    iv = feasibility_interval(g, y, 0)
    assert (iv.gamma_min, iv.gamma_max) == (0, (n - 1) * a)
    y2 = list(y)
    y2[1] = a + 1
    iv = feasibility_interval(g, y2, 0)
    assert (iv.gamma_min, iv.gamma_max) == (0, (n - 1) * a + 1)


def test_negative_entry_gives_empty_interval():
    iv = feasibility_interval(complete_graph(3), [-1, 1, 0], 2)
    assert iv.empty and iv.endpoints() == []


@settings(max_examples=25)
@given(graphs(max_n=6, max_m=10, connected=True), st.randoms(use_true_random=False), st.data())
def test_interval_endpoints_are_tight(g, rnd, data):
    f = data.draw(st.integers(0, g.m - 1))
    x = random_vector(rnd, g.m)
    iv = feasibility_interval(g, x, f)
    if iv.empty:
        return
    step = Fraction(1, 7)
    assert in_cone(g, override_entry(x, f, iv.gamma_min)).member
    if iv.gamma_min > 0:
        assert not in_cone(g, override_entry(x, f, iv.gamma_min - step)).member
    if iv.gamma_max != "inf":
        assert in_cone(g, override_entry(x, f, iv.gamma_max)).member
        assert not in_cone(g, override_entry(x, f, iv.gamma_max + step)).member


def test_override_entry():
    x = (Fraction(1), Fraction(2), Fraction(3))
    assert override_entry(x, 1, 2) == x
    assert override_entry([0, 0, 0], 2, 1) == (0, 0, 1)
    assert override_entry([1, 1, 0], 2, 2) == (1, 1, 2)
    assert in_cone(complete_graph(3), override_entry([1, 1, 0], 2, 2)).member
    with pytest.raises(BadIndex):
        override_entry(x, 3, 0)


# --------------------------------------------------------------------------
# tight sets


def test_k6e_tight_set():
    b = builtin("k6e")
    g = b.graph
    ts = tight_set(g, b.vector(), dd_facets(g, max_rays=64))
    assert ts.face_rank == 7
    assert {c.incidence for c in ts.tight_cuts} == {c.incidence for c in b.cuts()}


def test_interior_point_has_no_tight_facets():
    g = complete_graph(4)
    x = [sum(c.incidence[i] for c in enumerate_cuts(g)) for i in range(g.m)]
    ts = tight_set(g, x, dd_facets(g))
    assert ts.tight_facets == [] and ts.face_rank == 0


def test_h10minus_tight_cuts():
    b = builtin("h10minus")
    ts = tight_set(b.graph, b.vector())
    assert {c.incidence for c in ts.tight_cuts} == {c.incidence for c in b.cuts()}


def test_tight_set_rejects_outside():
    with pytest.raises(NotInCone):
        tight_set(complete_graph(3), [5, 1, 1], dd_facets(complete_graph(3)))
    with pytest.raises(NotInCone):
        tight_set(complete_graph(3), [5, 1, 1])


def test_tight_routes_agree_on_k4():
    g = complete_graph(4)
    fs = dd_facets(g)
    rng = random.Random(3)
    cuts = [c for c in enumerate_cuts(g) if c.size]
    for _ in range(10):
        pick = rng.sample(cuts, 3)
        x = [sum(c.incidence[i] for c in pick) for i in range(g.m)]
        a, b = tight_set(g, x, fs), tight_set(g, x)
        assert {c.incidence for c in a.tight_cuts} == {c.incidence for c in b.tight_cuts}
        assert a.face_rank == b.face_rank
    assert all(dot(a.coefficients, c.incidence) >= 0 for a in fs for c in cuts)
