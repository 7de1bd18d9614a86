import itertools
import random
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from cuthilbert.builtins import builtin
from cuthilbert.errors import NotPointed, PreconditionFailed
from cuthilbert.geometry import in_cone, override_entry
from cuthilbert.graph import complete_graph, cycle_graph, delete_edge, enumerate_bonds, enumerate_cuts, named_graph
from cuthilbert.hilbert import (
    NO,
    YES,
    UNKNOWN,
    in_intcone,
    integer_gamma,
    is_hilbert_basis,
    lep_check_endpoints,
    lep_probe,
    minimal_hilbert_basis,
)
from cuthilbert.lattice import almost_in_lattice, in_lattice_hnf
from cuthilbert.linalg import in_integer_lattice, lattice_basis
from cuthilbert.lp import OPTIMAL, solve_lp

from strategies import graphs

TOY = [(0, 1), (1, 1), (3, 1)]


def brute_intcone(g, x):
    """Does some multiset of nonzero cuts sum to x?  Plain memoised recursion."""
    cuts = [c.incidence for c in enumerate_cuts(g) if c.size]

    @lru_cache(maxsize=None)
    def reach(res):
        if not any(res):
            return True
        first = next(i for i, v in enumerate(res) if v)
        for c in cuts:
            # some cut in any decomposition covers the first nonzero coordinate
            if c[first] and all(a >= b for a, b in zip(res, c)):
                if reach(tuple(a - b for a, b in zip(res, c))):
                    return True
        return False

    return reach(tuple(x))


# --------------------------------------------------------------------------
# integer cone membership


def test_single_cut_is_member():
    g = named_graph("K5perp")
    for c in enumerate_cuts(g):
        res = in_intcone(g, c.incidence)
        assert res.member == YES
        assert res.witness.total(g.m) == c.incidence
    for b in enumerate_bonds(g):
        assert list(in_intcone(g, b.incidence).witness.coefficients) == [b]


@pytest.mark.parametrize("name", ["k6e", "h10minus"])
def test_counterexamples_not_members(name):
    b = builtin(name)
    assert in_intcone(b.graph, b.vector()).member == NO


def test_double_k6e_is_sum_of_face():
    b = builtin("k6e")
    x2 = [2 * v for v in b.vector()]
    res = in_intcone(b.graph, x2)
    assert res.member == YES
    assert res.witness.total(b.graph.m) == tuple(x2)
    # the witness lives on the same simplicial face, so it is one copy of each set
    assert sorted(res.witness.coefficients.values()) == [1] * 7
    assert {c.incidence for c in res.witness.coefficients} == {c.incidence for c in b.cuts()}


def test_rejects_fractional_and_negative():
    g = complete_graph(3)
    assert in_intcone(g, [Fraction(1, 2), Fraction(1, 2), 0]).member == NO
    assert in_intcone(g, [-1, 1, 0]).member == NO


def test_budget_gives_unknown():
    b = builtin("h11")
    assert in_intcone(b.graph, b.vector(), budget=1).member == UNKNOWN


@settings(max_examples=60)
@given(graphs(min_n=3, max_n=6, max_m=12, connected=True), st.data())
def test_intcone_vs_brute_force(g, data):
    x = data.draw(st.lists(st.integers(0, 4), min_size=g.m, max_size=g.m))
    res = in_intcone(g, x)
    assert res.member != UNKNOWN
    assert (res.member == YES) == brute_intcone(g, x)
    if res.member == YES:
        assert res.witness.total(g.m) == tuple(x)
        assert in_lattice_hnf(g, x)


@settings(max_examples=40)
@given(graphs(min_n=3, max_n=7, max_m=12, connected=True), st.data())
def test_built_members_found(g, data):
    cuts = [c for c in enumerate_cuts(g) if c.size]
    pick = data.draw(st.lists(st.sampled_from(cuts), min_size=1, max_size=5))
    x = [sum(c.incidence[i] for c in pick) for i in range(g.m)]
    res = in_intcone(g, x)
    assert res.member == YES and res.witness.total(g.m) == tuple(x)


def test_lp_prune_does_not_change_answers():
    from cuthilbert.hilbert import intcone_search

    rng = random.Random(1)
    g = named_graph("K5perp")
    gens = [c.incidence for c in enumerate_cuts(g) if c.size]
    for _ in range(30):
        x = [rng.randint(0, 3) for _ in range(g.m)]
        a = intcone_search(gens, x, lp_prune=True)[0]
        b = intcone_search(gens, x, lp_prune=False)[0]
        assert a == b


# --------------------------------------------------------------------------
# minimal Hilbert bases


def test_toy_quasi_element():
    rep = minimal_hilbert_basis(TOY)
    assert rep.quasi_elements == [(2, 1)]
    assert not rep.is_hilbert
    hits = [(a, b, c) for a, b, c in itertools.product(range(3), repeat=3)
            if (b + 3 * c, a + b + c) == (2, 1)]
    assert hits == []


def brute_hilbert_basis(gens):
    d = len(gens[0])
    top = [sum(g[i] for g in gens) for i in range(d)]
    basis = lattice_basis(gens)
    a = [[g[i] for g in gens] for i in range(d)]
    pts = []
    for p in itertools.product(*[range(t + 1) for t in top]):
        if any(p) and in_integer_lattice(basis, p) and solve_lp(a, list(p)).status == OPTIMAL:
            pts.append(p)
    members = set(pts)
    out = set()
    for p in pts:
        if not any(tuple(x - y for x, y in zip(p, q)) in members for q in pts if q != p):
            out.add(p)
    return out


@settings(max_examples=30)
@given(st.integers(2, 3).flatmap(lambda d: st.lists(
    st.lists(st.integers(0, 3), min_size=d, max_size=d).filter(any).map(tuple), min_size=1, max_size=4)))
def test_hilbert_basis_vs_brute_force(gens):
    rep = minimal_hilbert_basis(gens)
    assert set(rep.minimal_basis) == brute_hilbert_basis(gens)


@settings(max_examples=30)
@given(st.integers(2, 3).flatmap(lambda d: st.lists(
    st.lists(st.integers(0, 3), min_size=d, max_size=d).filter(any).map(tuple), min_size=1, max_size=5)),
    st.randoms(use_true_random=False))
def test_hilbert_basis_invariants(gens, rnd):
    rep = minimal_hilbert_basis(gens)
    # idempotent
    assert minimal_hilbert_basis(rep.minimal_basis).minimal_basis == rep.minimal_basis
    # order independent
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert minimal_hilbert_basis(shuffled).minimal_basis == rep.minimal_basis
    # every element lies in the cone and lattice of the generators
    d = len(gens[0])
    a = [[g[i] for g in gens] for i in range(d)]
    basis = lattice_basis(gens)
    for v in rep.minimal_basis:
        assert in_integer_lattice(basis, v)
        assert solve_lp(a, list(v)).status == OPTIMAL
    # one augmentation reaches a fixpoint
    aug = minimal_hilbert_basis(list(gens) + rep.quasi_elements)
    assert aug.is_hilbert and aug.minimal_basis == rep.minimal_basis


def test_not_pointed():
    with pytest.raises(NotPointed):
        minimal_hilbert_basis([(1, 0), (-1, 0), (0, 1)])


@pytest.mark.parametrize("name", ["K4", "K5", "C4", "W4"])
def test_small_graphs_hilbert(name):
    g = named_graph(name)
    rep = minimal_hilbert_basis([c.incidence for c in enumerate_cuts(g) if c.size])
    assert rep.quasi_elements == []


def test_is_hilbert_basis_verdicts():
    assert is_hilbert_basis(complete_graph(5)).verdict == YES
    assert is_hilbert_basis(cycle_graph(7)).verdict == YES
    k6e = is_hilbert_basis(named_graph("K6minusE"))
    assert k6e.verdict == NO and k6e.method == "stored-certificate"
    assert k6e.certificate == builtin("k6e").vector()
    assert is_hilbert_basis(named_graph("Petersen")).verdict == UNKNOWN


def test_k5perp_direct_hilbert_basis():
    res = is_hilbert_basis(named_graph("K5perp"))
    assert res.verdict == YES and res.certificate is None


# --------------------------------------------------------------------------
# lattice endpoint property


def test_c3_endpoints():
    g = complete_graph(3)
    res = lep_check_endpoints(g, 2, [1, 2, 0])
    assert [gm for gm, _ in res.endpoints_checked] == [1, 3]
    assert [tag for _, tag in res.endpoints_checked] == ["in_lattice", "in_lattice"]
    assert not res.property_violated


def test_lep_preconditions():
    k4 = complete_graph(4)
    x = [1, 0, 0, 0, 0, 0]
    with pytest.raises(PreconditionFailed):
        lep_check_endpoints(k4, 5, x)


@pytest.mark.parametrize("name", ["K4", "K5"])
def test_lep_holds(name):
    g = named_graph(name)
    for f in (0, g.m - 1):
        res = lep_probe(g, f, trials=100, seed=0)
        assert not res.property_violated
        assert res.trials + res.skipped == 100 and res.trials > 0


def test_lep_probe_k5perp_shape_and_determinism():
    g = named_graph("K5perp")
    f = g.edge_index("5", "6")
    a = lep_probe(g, f, trials=40, seed=7)
    b = lep_probe(g, f, trials=40, seed=7)
    assert a == b
    assert a.trials + a.skipped == 40
    assert len(a.endpoints_checked) >= a.trials
    assert a.property_violated == bool(a.violations)
    assert {tag for _, tag in a.endpoints_checked} <= {"zero", "in_lattice", "violation"}


@pytest.mark.parametrize("name,edge", [("K4", ("1", "2")), ("W4", ("1", "2"))])
def test_integer_gamma_realization(name, edge):
    g = named_graph(name)
    f = g.edge_index(*edge)
    assert is_hilbert_basis(delete_edge(g, f)).verdict == YES
    rng = random.Random(name)
    cuts = [c.incidence for c in enumerate_cuts(delete_edge(g, f)) if c.size]
    found = 0
    for _ in range(40):
        rest = [0] * (g.m - 1)
        for c in rng.sample(cuts, 3):
            k = rng.randint(1, 2)
            rest = [a + k * b for a, b in zip(rest, c)]
        x = rest[:f] + [0] + rest[f:]
        assert almost_in_lattice(g, x, f)
        res = integer_gamma(g, x, f)
        assert res is not None
        gamma, ic = res
        assert ic.witness.total(g.m) == tuple(override_entry(x, f, gamma))
        assert in_cone(g, override_entry(x, f, gamma)).member
        found += 1
    assert found == 40
