"""The cone side: membership with witnesses, facets, named inequality families,
feasibility intervals and tight sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg, polyhedra
from .errors import BadIndex, BudgetExceeded, DimensionMismatch, NotInCone, NotK5
from .graph import (
    DEFAULT_CUT_BUDGET,
    Circuit,
    Cut,
    Graph,
    enumerate_bonds,
    enumerate_circuits,
    enumerate_cuts,
    is_circuit,
)
from .lp import OPTIMAL, UNBOUNDED, solve_lp

NONNEG = "nonneg"
CYCLE = "cycle"
HYPERMETRIC = "hypermetric"
GENERAL = "general"


def edge_vector(g: Graph, values: Sequence) -> tuple[Fraction, ...]:
    """Validate and convert ``values`` into an exact vector over ``g``'s edges."""
    if len(values) != g.m:
        raise DimensionMismatch(f"vector of length {len(values)} for a graph with {g.m} edges")
    return tuple(Fraction(v) for v in values)


def is_integral(x: Sequence) -> bool:
    return all(Fraction(v).denominator == 1 for v in x)


@lru_cache(maxsize=256)
def bonds_of(g: Graph, budget: int = DEFAULT_CUT_BUDGET) -> tuple[Cut, ...]:
    return tuple(enumerate_bonds(g, budget))


@lru_cache(maxsize=256)
def cuts_of(g: Graph, budget: int = DEFAULT_CUT_BUDGET) -> tuple[Cut, ...]:
    return tuple(enumerate_cuts(g, budget))


def generator_matrix(gens: Sequence[Sequence[int]], m: int) -> list[list[int]]:
    return [[v[e] for v in gens] for e in range(m)]


# --------------------------------------------------------------------------
# membership


@dataclass
class ConeMembership:
    member: bool
    witness: dict[Cut, Fraction] | None = None


def cone_combination(gens: Sequence[Sequence[int]], x: Sequence) -> list[Fraction] | None:
    """Nonnegative coefficients c with sum c_i gens_i = x, or None."""
    m = len(x)
    if not gens:
        return [] if all(v == 0 for v in x) else None
    res = solve_lp(generator_matrix(gens, m), list(x))
    return res.x if res.status == OPTIMAL else None


def in_cone(g: Graph, x: Sequence, budget: int = DEFAULT_CUT_BUDGET) -> ConeMembership:
    """Exact LP membership of x in cone(B(g)) over the bond generators."""
    x = edge_vector(g, x)
    if any(v < 0 for v in x):
        return ConeMembership(False)
    bonds = bonds_of(g, budget)
    coeffs = cone_combination([b.incidence for b in bonds], x)
    if coeffs is None:
        return ConeMembership(False)
    return ConeMembership(True, {b: c for b, c in zip(bonds, coeffs) if c})


def face_generators(gens: Sequence[Sequence[int]], x: Sequence) -> list[int] | None:
    """Indices of generators lying in the minimal face of cone(gens) containing x.

    Those are exactly the generators that receive a positive coefficient in
    some nonnegative representation of x.  Found by repeated LPs, each
    maximising the total weight on generators not yet known to be in the face.
    Returns None when x is outside the cone.
    """
    m = len(x)
    a = generator_matrix(gens, m)
    first = solve_lp(a, list(x))
    if first.status != OPTIMAL:
        return None
    face = {j for j, c in enumerate(first.x) if c}
    while True:
        rest = [j for j in range(len(gens)) if j not in face]
        if not rest:
            break
        cost = [0] * len(gens)
        for j in rest:
            cost[j] = -1
        res = solve_lp(a, list(x), cost)
        if res.status != OPTIMAL or res.value == 0:
            break
        face |= {j for j in rest if res.x[j]}
    return sorted(face)


# --------------------------------------------------------------------------
# inequalities


@dataclass(frozen=True)
class Inequality:
    """``coefficients · x >= 0``."""

    kind: str
    coefficients: tuple[int, ...]
    provenance: tuple = ()

    def value(self, x: Sequence):
        return linalg.dot(self.coefficients, x)

    def holds(self, x: Sequence) -> bool:
        return self.value(x) >= 0

    def format(self) -> str:
        return f"{self.kind}  " + " ".join(str(a) for a in self.coefficients) + "  >= 0"


@dataclass
class FacetSystem:
    inequalities: list[Inequality]
    dimension: int
    equations: list[tuple[int, ...]] = field(default_factory=list)

    def __len__(self):
        return len(self.inequalities)

    def __iter__(self):
        return iter(self.inequalities)

    def contains(self, x: Sequence) -> bool:
        if any(linalg.dot(e, x) != 0 for e in self.equations):
            return False
        return all(a.holds(x) for a in self.inequalities)

    def counts(self) -> dict[str, int]:
        out = {NONNEG: 0, CYCLE: 0, HYPERMETRIC: 0, GENERAL: 0}
        for a in self.inequalities:
            out[a.kind] += 1
        return out

    def is_irredundant(self) -> bool:
        """Each inequality is violated by some point satisfying all the others."""
        for i, a in enumerate(self.inequalities):
            others = [b for j, b in enumerate(self.inequalities) if j != i]
            if not _can_violate(a, others, self.equations, self.dimension):
                return False
        return True


def _can_violate(a: Inequality, others, equations, dim) -> bool:
    # feasibility of {others >= 0, equations = 0, a·x = -1} with x free (x = p - q)
    rows, rhs = [], []
    n = dim
    for b in others:
        c = list(b.coefficients)
        rows.append(c + [-v for v in c] + [0] * len(others))
        rhs.append(0)
    # slack variables turn b·x >= 0 into b·x - s = 0
    for k in range(len(others)):
        rows[k][2 * n + k] = -1
    for e in equations:
        rows.append(list(e) + [-v for v in e] + [0] * len(others))
        rhs.append(0)
    c = list(a.coefficients)
    rows.append(c + [-v for v in c] + [0] * len(others))
    rhs.append(-1)
    return solve_lp(rows, rhs).status == OPTIMAL


def _classify(g: Graph, coeffs: tuple[int, ...]) -> tuple[str, tuple]:
    support = [i for i, v in enumerate(coeffs) if v]
    if len(support) == 1 and coeffs[support[0]] == 1:
        return NONNEG, (support[0],)
    neg = [i for i in support if coeffs[i] < 0]
    if (len(neg) == 1 and coeffs[neg[0]] == -1 and all(coeffs[i] == 1 for i in support if i != neg[0])
            and is_circuit(g, support)):
        return CYCLE, (tuple(support), neg[0])
    if len(support) == 10 and all(abs(coeffs[i]) == 1 for i in support):
        verts = sorted({x for i in support for x in g.edges[i]})
        if len(verts) == 5:
            for minus in itertools.combinations(verts, 2):
                b = {v: (-1 if v in minus else 1) for v in verts}
                if all(coeffs[i] == -b[g.edges[i][0]] * b[g.edges[i][1]] for i in support):
                    return HYPERMETRIC, tuple(b[v] for v in verts)
    return GENERAL, ()


def make_inequality(g: Graph, coeffs: Sequence[int]) -> Inequality:
    coeffs = tuple(linalg.primitive([int(v) for v in coeffs]))
    kind, prov = _classify(g, coeffs)
    return Inequality(kind, coeffs, prov)


def nonneg_inequalities(g: Graph) -> list[Inequality]:
    return [Inequality(NONNEG, tuple(int(i == e) for i in range(g.m)), (e,)) for e in range(g.m)]


def cycle_inequalities(g: Graph, max_edges: int = 16, max_circuits: int = 200_000) -> list[Inequality]:
    """x(C minus e) - x_e >= 0 for every circuit C and every e in C."""
    if g.m > max_edges:
        raise BudgetExceeded(f"{g.m} edges exceeds the circuit-enumeration budget {max_edges}")
    out = []
    for circ in enumerate_circuits(g, max_circuits):
        for e in circ.edges:
            coeffs = [0] * g.m
            for i in circ.edges:
                coeffs[i] = 1
            coeffs[e] = -1
            out.append(Inequality(CYCLE, tuple(coeffs), (circ.edges, e)))
    return out


def hypermetric_k5(g: Graph, labels: Sequence[str]) -> list[Inequality]:
    """The ten inequalities -sum b_i b_j x_ij >= 0, b a permutation of (1,1,1,-1,-1)."""
    labels = list(labels)
    if len(set(labels)) != 5 or any(v not in g.index for v in labels):
        raise NotK5("need five distinct vertices of the graph")
    pair_edge = {}
    for a, b in itertools.combinations(labels, 2):
        try:
            pair_edge[(a, b)] = g.edge_index(a, b)
        except BadIndex:
            raise NotK5(f"{a}-{b} is not an edge") from None
    out = []
    for minus in itertools.combinations(range(5), 2):
        b = [(-1 if k in minus else 1) for k in range(5)]
        coeffs = [0] * g.m
        for (i, u), (j, v) in itertools.combinations(enumerate(labels), 2):
            coeffs[pair_edge[(u, v)]] = -b[i] * b[j]
        out.append(Inequality(HYPERMETRIC, tuple(coeffs), tuple(b)))
    return out


# --------------------------------------------------------------------------
# double description on graphs


def dd_extreme_rays(g: Graph, budget: int = DEFAULT_CUT_BUDGET) -> list[Cut]:
    """Cuts spanning extreme rays of cone(B(g)).

    A nonzero cut is extreme exactly when it is not a nonnegative combination
    of the other nonzero cuts (cuts are distinct 0/1 vectors, so no two are
    parallel).  Decided by one exact LP per cut.
    """
    cuts = [c for c in cuts_of(g, budget) if c.size]
    out = []
    for k, c in enumerate(cuts):
        others = [d.incidence for j, d in enumerate(cuts) if j != k]
        if cone_combination(others, c.incidence) is None:
            out.append(c)
    return out


def dd_facets(g: Graph, max_dim: int = 15, max_rays: int = 64) -> FacetSystem:
    """Irredundant facet description of cone(B(g)) by double description.

    Bonds are inserted in canonical (incidence) order.  When the cone is not
    full-dimensional (parallel edges) the inequalities are written on a set
    of pivot coordinates and the span's equations are returned alongside.
    """
    rays = [b.incidence for b in bonds_of(g)]
    if g.m > max_dim or len(rays) > max_rays:
        raise BudgetExceeded(f"facet enumeration of {g.m} edges / {len(rays)} rays exceeds budget")
    if not rays:
        eqs = [tuple(int(i == j) for j in range(g.m)) for i in range(g.m)]
        return FacetSystem([], g.m, eqs)
    data = polyhedra.cone_data(rays, g.m)
    ineqs = [make_inequality(g, data.lift(a, g.m)) for a in data.facets]
    ineqs.sort(key=lambda a: ([NONNEG, CYCLE, HYPERMETRIC, GENERAL].index(a.kind), a.coefficients))
    return FacetSystem(ineqs, g.m, list(data.equations))


def facet_lines(system: FacetSystem) -> list[str]:
    return [a.format() for a in system.inequalities]


# --------------------------------------------------------------------------
# feasibility intervals and tight sets


INF = "inf"


@dataclass(frozen=True)
class FeasibilityInterval:
    status: str  # "empty" or "bounded" ("unbounded" when the top is infinite)
    gamma_min: Fraction | None = None
    gamma_max: Fraction | str | None = None

    @property
    def empty(self) -> bool:
        return self.status == "empty"

    def __contains__(self, gamma) -> bool:
        if self.empty:
            return False
        if gamma < self.gamma_min:
            return False
        return self.gamma_max == INF or gamma <= self.gamma_max

    def endpoints(self) -> list[Fraction]:
        if self.empty:
            return []
        pts = [self.gamma_min]
        if self.gamma_max != INF and self.gamma_max != self.gamma_min:
            pts.append(self.gamma_max)
        return pts


def override_entry(x: Sequence, f: int, gamma) -> tuple[Fraction, ...]:
    if not isinstance(f, int) or not 0 <= f < len(x):
        raise BadIndex(f"edge index {f!r} out of range")
    out = [Fraction(v) for v in x]
    out[f] = Fraction(gamma)
    return tuple(out)


def feasibility_interval(g: Graph, x: Sequence, f: int,
                         budget: int = DEFAULT_CUT_BUDGET) -> FeasibilityInterval:
    """All gamma with x(gamma) in cone(B(g)), by two exact LPs.

    The coordinate at f of a cut combination is the total weight on bonds
    containing f, so gamma is optimised directly over the bond coefficients
    subject to matching x off f.
    """
    if not isinstance(f, int) or not 0 <= f < g.m:
        raise BadIndex(f"edge index {f!r} out of range")
    x = edge_vector(g, x)
    bonds = bonds_of(g, budget)
    rows = [e for e in range(g.m) if e != f]
    a = [[b.incidence[e] for b in bonds] for e in rows]
    rhs = [x[e] for e in rows]
    through_f = [b.incidence[f] for b in bonds]
    low = solve_lp(a, rhs, through_f)
    if low.status not in (OPTIMAL, UNBOUNDED):
        return FeasibilityInterval("empty")
    high = solve_lp(a, rhs, [-v for v in through_f])
    top = INF if high.status == UNBOUNDED else -high.value
    return FeasibilityInterval("bounded" if top != INF else "unbounded", low.value, top)


@dataclass
class TightSet:
    tight_facets: list[int]
    tight_cuts: list[Cut]
    face_rank: int


def tight_set(g: Graph, x: Sequence, facets: FacetSystem | None = None,
              budget: int = DEFAULT_CUT_BUDGET) -> TightSet:
    """Facets tight at x, the nonzero cuts on all of them, and the normals' rank.

    Without a facet system the minimal face of x is found by LP instead and
    ``face_rank`` is the codimension of that face inside the span of the cuts.
    """
    x = edge_vector(g, x)
    bonds = bonds_of(g, budget)
    cuts = [c for c in cuts_of(g, budget) if c.size]
    if facets is not None:
        if not facets.contains(x):
            raise NotInCone("vector is not in the cone")
        idx = [i for i, a in enumerate(facets.inequalities) if a.value(x) == 0]
        normals = [facets.inequalities[i].coefficients for i in idx]
        tight = [c for c in cuts if all(linalg.dot(a, c.incidence) == 0 for a in normals)]
        return TightSet(idx, tight, linalg.rank(normals) if normals else 0)
    face = face_generators([b.incidence for b in bonds], x)
    if face is None:
        raise NotInCone("vector is not in the cone")
    face_bonds = [bonds[j].incidence for j in face]
    full = linalg.rank([b.incidence for b in bonds]) if bonds else 0
    face_dim = linalg.rank(face_bonds) if face_bonds else 0
    # a cut lies in the face iff it is a sum of face bonds (cuts are disjoint unions of bonds)
    tight = [c for c in cuts if cone_combination(face_bonds, c.incidence) is not None]
    return TightSet([], tight, full - face_dim)


def vector_sum(vectors: Sequence[Sequence], scale=1) -> tuple[Fraction, ...]:
    vectors = list(vectors)
    out = [Fraction(0)] * len(vectors[0])
    for v in vectors:
        for i, a in enumerate(v):
            out[i] += a
    return tuple(Fraction(scale) * v for v in out)


def circuit_from_edges(edges: Sequence[int]) -> Circuit:
    return Circuit(tuple(sorted(edges)))
