"""Named reproduction cases; each runs a script of checks and stops at the first failure."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import linalg
from .builtins import builtin
from .errors import UnknownCase
from .geometry import (
    CYCLE,
    HYPERMETRIC,
    NONNEG,
    bonds_of,
    cycle_inequalities,
    dd_extreme_rays,
    dd_facets,
    feasibility_interval,
    hypermetric_k5,
    in_cone,
    nonneg_inequalities,
    tight_set,
)
from .graph import (
    Graph,
    build_graph,
    complete_graph,
    compose,
    contract_edge,
    cycle_graph,
    enumerate_bonds,
    is_connected,
    named_graph,
)
from .hclass import IN, Classifier
from .hilbert import NO, YES, in_intcone, is_hilbert_basis, lep_probe, minimal_hilbert_basis
from .iso import IsoCache
from .lattice import in_lattice_hnf, in_lattice_parity
from .minors import is_minor_free


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CaseReport:
    case: str
    passed: bool
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0
    budget_s: float = 0.0
    error: str | None = None

    @property
    def within_budget(self) -> bool:
        return self.elapsed <= self.budget_s

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "budget_s": self.budget_s,
            "error": self.error,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
        }


class CaseFailed(AssertionError):
    pass


class Recorder:
    def __init__(self):
        self.checks: list[Check] = []

    def check(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))
        if not ok:
            raise CaseFailed(f"{name}: {detail}" if detail else name)


# --------------------------------------------------------------------------
# corpora shared with the acceptance suite


def connected_graphs_upto_iso(n: int) -> list[Graph]:
    """All connected simple graphs on vertices 1..n, one per isomorphism class."""
    labels = [str(i) for i in range(1, n + 1)]
    pairs = list(itertools.combinations(labels, 2))
    cache = IsoCache()
    out = []
    for mask in range(1, 1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if (mask >> i) & 1]
        if len(edges) < n - 1:
            continue
        g = build_graph(edges, labels)
        if not is_connected(g) or g in cache:
            continue
        cache.put(g, True)
        out.append(g)
    return out


def random_connected_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    labels = [str(i) for i in range(1, n + 1)]
    while True:
        edges = [(a, b) for a, b in itertools.combinations(labels, 2) if rng.random() < p]
        g = build_graph(edges, labels)
        if is_connected(g):
            return g


def k5_free_corpus(count: int, max_edges: int = 12, seed: int = 0) -> list[Graph]:
    """Named K5-minor-free graphs topped up with random ones."""
    out = [named_graph(k) for k in ("K4", "W4", "W5", "Prism", "K3,3", "K5minusE", "C6", "K2,4")]
    rng = random.Random(seed)
    while len(out) < count:
        n = rng.randint(4, 8)
        g = random_connected_graph(n, rng, 0.45)
        if g.m <= max_edges and is_minor_free(g, "K5"):
            out.append(g)
    return [g for g in out if g.m <= max_edges][:count]


def random_rational_vector(m: int, rng: random.Random) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(0, 6), rng.choice((1, 1, 2, 3))) for _ in range(m))


def bonds_match_rays(g: Graph) -> bool:
    return set(enumerate_bonds(g)) == set(dd_extreme_rays(g))


def seymour_agreement(g: Graph, vectors) -> tuple[int, int]:
    system = nonneg_inequalities(g) + cycle_inequalities(g)
    agree = 0
    for x in vectors:
        lp = in_cone(g, x).member
        ineq = all(a.holds(x) for a in system)
        agree += lp == ineq
    return agree, len(vectors)


def k5_paper_system(g: Graph) -> list:
    """Nonnegativity, triangle inequalities and the ten hypermetric ones."""
    tri = [a for a in cycle_inequalities(g) if sum(1 for c in a.coefficients if c) == 3]
    return nonneg_inequalities(g) + tri + hypermetric_k5(g, g.vertices)


# --------------------------------------------------------------------------
# cases


def case_k5_facets(r: Recorder):
    g = complete_graph(5)
    system = dd_facets(g)
    counts = system.counts()
    paper = k5_paper_system(g)
    r.check("hand-written system has 10/30/10 inequalities",
            [sum(a.kind == k for a in paper) for k in (NONNEG, CYCLE, HYPERMETRIC)] == [10, 30, 10])
    bonds = [b.incidence for b in bonds_of(g)]
    r.check("hand-written system valid on every bond", all(a.holds(b) for a in paper for b in bonds))
    normals = {a.coefficients for a in paper}
    r.check("every computed facet occurs in the hand-written system",
            all(a.coefficients in normals for a in system))
    r.check("computed system is irredundant", system.is_irredundant())
    r.check("facet count is 50, classified 10/30/10",
            len(system) == 50 and (counts[NONNEG], counts[CYCLE], counts[HYPERMETRIC]) == (10, 30, 10),
            f"computed {len(system)} facets: {counts[NONNEG]} nonnegativity, {counts[CYCLE]} triangle, "
            f"{counts[HYPERMETRIC]} hypermetric; the nonnegativity inequalities are sums of two "
            f"triangle inequalities and so are not facets")


def case_k5_hilbert(r: Recorder):
    g = complete_graph(5)
    bonds = bonds_of(g)
    r.check("K5 has 15 bonds", len(bonds) == 15)
    rep = minimal_hilbert_basis([b.incidence for b in bonds])
    r.check("no quasi-Hilbert elements", not rep.quasi_elements, f"{len(rep.quasi_elements)} found")
    r.check("minimal basis is the bond set", set(rep.minimal_basis) == {b.incidence for b in bonds})


def case_k6e(r: Recorder):
    bv = builtin("k6e")
    g, x, cuts = bv.graph, bv.vector(), bv.cuts()
    r.check("entry sum 26", sum(x) == 26, f"sum = {sum(x)}")
    half = [Fraction(0)] * g.m
    for c in cuts:
        for i, b in enumerate(c.incidence):
            half[i] += Fraction(1, 2) * b
    r.check("half on each S-cut reproduces x", tuple(half) == x)
    mem = in_cone(g, x)
    r.check("x in cone", mem.member)
    witness = {c.incidence: v for c, v in mem.witness.items()}
    r.check("LP witness is 1/2 on each S-cut",
            witness == {c.incidence: Fraction(1, 2) for c in cuts}, str(sorted(witness.values())))
    r.check("x in lattice (circuit parity)", in_lattice_parity(g, x).verdict)
    r.check("x in lattice (HNF)", in_lattice_hnf(g, x))
    res = in_intcone(g, x)
    r.check("x not in intcone", res.member == NO, res.member)
    facets = dd_facets(g)
    ts = tight_set(g, x, facets)
    r.check("tight cuts are exactly S", {c.incidence for c in ts.tight_cuts} == {c.incidence for c in cuts},
            f"{len(ts.tight_cuts)} tight cuts")
    r.check("tight facets have rank 7", ts.face_rank == 7, str(ts.face_rank))
    r.check("face is simplicial of dimension 7", linalg.rank([c.incidence for c in cuts]) == 7)
    sizes = sorted(c.size for c in cuts)
    r.check("S-cut sizes are 4 or 8", set(sizes) <= {4, 8}, str(sizes))
    two_x = sum(2 * v for v in x)
    r.check("mod 4 obstruction: 52/2 = 26 = 2 mod 4 while tight cuts are 0 mod 4",
            two_x == 52 and (two_x // 2) % 4 == 2 and all(s % 4 == 0 for s in sizes))


def case_h10minus(r: Recorder):
    bv = builtin("h10minus")
    g, x, cuts = bv.graph, bv.vector(), bv.cuts()
    heavy = {("1", "2"): 2, ("3", "4"): 2, ("7", "8"): 2, ("9", "10"): 2, ("1", "5"): 3, ("2", "5"): 3}
    expected = tuple(Fraction(heavy.get((u, v), heavy.get((v, u), 1))) for u, v in g.edges)
    r.check("x is half the sum of the eight cuts with the stated weights", x == expected)
    r.check("x in cone", in_cone(g, x).member)
    r.check("x in lattice", in_lattice_hnf(g, x) and in_lattice_parity(g, x).verdict)
    res = in_intcone(g, x)
    r.check("x not in intcone", res.member == NO, res.member)
    for c in cuts:
        rest = tuple(a - b for a, b in zip(x, c.incidence))
        r.check(f"x - delta({','.join(c.generator)}) not in cone", not in_cone(g, rest).member)


def case_h11(r: Recorder):
    y = builtin("h11").vector()
    x = builtin("h10minus").vector()
    g = builtin("h11").graph
    r.check("y restricted to H10minus equals x", y[:20] == x)
    r.check("y in cone", in_cone(g, y).member)
    r.check("y in lattice", in_lattice_hnf(g, y) and in_lattice_parity(g, y).verdict)
    res = in_intcone(g, y)
    r.check("y not in intcone", res.member == NO, res.member)


def case_bonds_rays(r: Recorder, max_n: int = 5, random_graphs: int = 5, seed: int = 0):
    for n in range(2, max_n + 1):
        graphs = connected_graphs_upto_iso(n)
        bad = [g for g in graphs if not bonds_match_rays(g)]
        r.check(f"bonds = extreme rays on all {len(graphs)} connected graphs with {n} vertices", not bad)
    rng = random.Random(seed)
    for k in range(random_graphs):
        g = random_connected_graph(max_n + 1, rng)
        r.check(f"bonds = extreme rays on random graph {k}", bonds_match_rays(g))


def case_interval_cn(r: Recorder):
    for n in range(4, 9):
        g = cycle_graph(n)
        f = n - 1
        for a in (1, 2, 5):
            x = [a] * n
            x[f] = 0
            iv = feasibility_interval(g, x, f)
            r.check(f"I(C{n}, {a}) = [0, {(n - 1) * a}]", (iv.gamma_min, iv.gamma_max) == (0, (n - 1) * a),
                    f"got [{iv.gamma_min}, {iv.gamma_max}]")
            x[0] = a + 1
            iv = feasibility_interval(g, x, f)
            r.check(f"I(C{n}, {a}, one entry raised) = [0, {(n - 1) * a + 1}]",
                    (iv.gamma_min, iv.gamma_max) == (0, (n - 1) * a + 1), f"got [{iv.gamma_min}, {iv.gamma_max}]")


def case_seymour(r: Recorder, graphs: int = 6, vectors: int = 25, seed: int = 0):
    rng = random.Random(seed)
    for g in k5_free_corpus(graphs, seed=seed):
        agree, total = seymour_agreement(g, [random_rational_vector(g.m, rng) for _ in range(vectors)])
        r.check(f"LP membership matches cycle inequalities on a {g.n}-vertex {g.m}-edge graph",
                agree == total, f"{agree}/{total}")


CONTRACT_CORPUS = ("K4", "W4", "C5", "K2,3", "K5minusE", "Prism", "K5")


def case_contract_closure(r: Recorder, names=CONTRACT_CORPUS):
    for name in names:
        g = named_graph(name)
        v = is_hilbert_basis(g)
        r.check(f"{name} computed yes", v.verdict == YES, v.verdict)
        for e in range(g.m):
            h = contract_edge(g, e, simplify_result=True)
            w = is_hilbert_basis(h)
            r.check(f"{name} / edge {e} computed yes", w.verdict == YES, w.verdict)


def case_two_sum_k4(r: Recorder):
    c = Classifier()
    k4 = named_graph("K4")
    chk = c.two_sum_rule_check(k4, k4, ("1", "2"))
    r.check("2-sum rule applies to K4 + K4", chk.applies, str(chk.failed_hypothesis))
    g = compose(k4, k4, {"1": "1", "2": "2"}, "n_sum")
    v = c.classify(g)
    r.check("K4 + K4 classified IN", v.status == IN, v.status)
    r.check("K4 + K4 is K5-minor-free (consistent with the rule)", is_minor_free(g, "K5"))
    w4, c4 = named_graph("W4"), cycle_graph(4)
    chk = c.two_sum_rule_check(w4, c4, ("1", "2"))
    r.check("2-sum rule applies to W4 + C4", chk.applies, str(chk.failed_hypothesis))
    k5p = named_graph("K5perp")
    chk = c.two_sum_rule_check(k5p, k5p, ("5", "6"))
    r.check("2-sum rule refuses K5perp + K5perp", not chk.applies and chk.failed_hypothesis is not None,
            str(chk.failed_hypothesis))


def case_lep_k4_k5(r: Recorder, trials: int = 100, seed: int = 0):
    g = complete_graph(3)
    iv = feasibility_interval(g, [1, 2, 0], 2)
    r.check("C3 with (1,2) off f has interval [1,3]", (iv.gamma_min, iv.gamma_max) == (1, 3))
    for name in ("K4", "K5"):
        res = lep_probe(named_graph(name), 0, trials, seed)
        r.check(f"{name}: no lattice endpoint violations in {res.trials} trials", not res.property_violated,
                str(res.violations[:1]))


@dataclass(frozen=True)
class Case:
    run: Callable[[Recorder], None]
    budget_s: float
    summary: str


CASES: dict[str, Case] = {
    "k5-facets": Case(case_k5_facets, 60, "facet description of the cut cone of K5"),
    "k5-hilbert": Case(case_k5_hilbert, 600, "the bonds of K5 form a Hilbert basis"),
    "k6e": Case(case_k6e, 60, "counterexample vector on K6 minus an edge"),
    "h10minus": Case(case_h10minus, 300, "counterexample vector on H10minus"),
    "h11": Case(case_h11, 300, "counterexample vector on H11"),
    "bonds-rays": Case(case_bonds_rays, 600, "bonds are exactly the extreme rays"),
    "interval-cn": Case(case_interval_cn, 30, "feasibility intervals on cycles"),
    "seymour": Case(case_seymour, 600, "cycle inequalities describe K5-minor-free cut cones"),
    "contract-closure": Case(case_contract_closure, 1200, "contractions of members are members"),
    "two-sum-k4": Case(case_two_sum_k4, 600, "2-sum rule on small graphs"),
    "lep-k4-k5": Case(case_lep_k4_k5, 600, "lattice endpoint probes on K4 and K5"),
}


def paper_verify(case: str) -> CaseReport:
    if case not in CASES:
        raise UnknownCase(f"unknown case {case!r}; choose from {', '.join(CASES)}")
    entry = CASES[case]
    rec = Recorder()
    start = time.perf_counter()
    error = None
    try:
        entry.run(rec)
        passed = True
    except CaseFailed as exc:
        passed, error = False, str(exc)
    elapsed = time.perf_counter() - start
    report = CaseReport(case, passed, rec.checks, elapsed, entry.budget_s, error)
    if passed and not report.within_budget:
        report.passed = False
        report.error = f"took {elapsed:.1f}s, budget {entry.budget_s}s"
    return report
