"""The integer-cone side.

``in_intcone`` is an exact depth-first search over cut multisets.  The
minimal Hilbert basis is computed by triangulating the cone, listing lattice
points of each fundamental parallelepiped, and discarding reducible points.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg, polyhedra
from .errors import BudgetExceeded, PreconditionFailed
from .geometry import (
    bonds_of,
    cone_combination,
    cuts_of,
    edge_vector,
    face_generators,
    feasibility_interval,
    in_cone,
    is_integral,
    override_entry,
)
from .graph import DEFAULT_CUT_BUDGET, Cut, Graph, delete_edge
from .lattice import almost_in_lattice, in_lattice_hnf

YES, NO, UNKNOWN = "yes", "no", "unknown"
DEFAULT_NODE_BUDGET = 10_000_000


@dataclass
class CutDecomposition:
    coefficients: dict[Cut, int]

    def total(self, m: int) -> tuple[int, ...]:
        out = [0] * m
        for cut, k in self.coefficients.items():
            for i, b in enumerate(cut.incidence):
                out[i] += k * b
        return tuple(out)


@dataclass
class IntconeResult:
    member: str
    witness: CutDecomposition | None = None
    nodes: int = 0


class _Exhausted(Exception):
    pass


def intcone_search(gens: Sequence[Sequence[int]], x: Sequence[int], node_budget: int = DEFAULT_NODE_BUDGET,
                   lp_prune: bool = True) -> tuple[str, dict[int, int] | None, int]:
    """Nonnegative integer combination of ``gens`` (0/1 vectors) equal to x.

    Branches on the coordinate with the smallest positive residual: some
    generator covering it must be used.  Siblings are explored with the
    previously tried generators forbidden, so each multiset is met once.
    A node is cut off when its residual leaves cone(allowed generators).
    Returns (verdict, coefficients by generator index, nodes visited).
    """
    x = [int(v) for v in x]
    m = len(x)
    masks = [sum(1 << i for i in range(m) if g[i]) for g in gens]
    nodes = 0
    failed: set[tuple[tuple[int, ...], int]] = set()
    chosen: list[int] = []
    full = (1 << len(gens)) - 1

    def search(res: list[int], allowed: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise _Exhausted
        if not any(res):
            return True
        key = (tuple(res), allowed)
        if key in failed:
            return False
        support = 0
        for i, v in enumerate(res):
            if v:
                support |= 1 << i
        usable = [j for j in range(len(gens)) if (allowed >> j) & 1 and masks[j] & ~support == 0]
        covered = 0
        for j in usable:
            covered |= masks[j]
        if covered != support:
            failed.add(key)
            return False
        if lp_prune and cone_combination([gens[j] for j in usable], res) is None:
            failed.add(key)
            return False
        e = min((i for i in range(m) if res[i]), key=lambda i: (res[i], i))
        branch = [j for j in usable if (masks[j] >> e) & 1]
        local = allowed
        for j in branch:
            nxt = [r - b for r, b in zip(res, gens[j])]
            chosen.append(j)
            if search(nxt, local):
                return True
            chosen.pop()
            local &= ~(1 << j)
        failed.add(key)
        return False

    try:
        found = search(list(x), full)
    except _Exhausted:
        return UNKNOWN, None, nodes
    if not found:
        return NO, None, nodes
    coeffs: dict[int, int] = {}
    for j in chosen:
        coeffs[j] = coeffs.get(j, 0) + 1
    return YES, coeffs, nodes


def in_intcone(g: Graph, x: Sequence, budget: int = DEFAULT_NODE_BUDGET,
               cut_budget: int = DEFAULT_CUT_BUDGET) -> IntconeResult:
    """Is x a nonnegative integer combination of cuts of g?

    Only bonds in the minimal face of cone(B(g)) containing x can occur in
    any decomposition, so the search starts from those; bonds are tried
    largest first.
    """
    x = edge_vector(g, x)
    if not is_integral(x) or any(v < 0 for v in x):
        return IntconeResult(NO)
    if not any(x):
        return IntconeResult(YES, CutDecomposition({}))
    bonds = list(bonds_of(g, cut_budget))
    face = face_generators([b.incidence for b in bonds], x)
    if face is None:
        return IntconeResult(NO)
    order = sorted(face, key=lambda j: (-bonds[j].size, bonds[j].incidence))
    gens = [bonds[j].incidence for j in order]
    verdict, coeffs, nodes = intcone_search(gens, [int(v) for v in x], budget)
    witness = None
    if verdict == YES:
        witness = CutDecomposition({bonds[order[j]]: k for j, k in coeffs.items()})
        assert witness.total(g.m) == tuple(int(v) for v in x)
    return IntconeResult(verdict, witness, nodes)


# --------------------------------------------------------------------------
# minimal Hilbert bases


def _canonical(vectors) -> list[tuple[int, ...]]:
    return sorted({tuple(v) for v in vectors}, key=lambda v: (sum(v), v))


@dataclass
class HilbertReport:
    minimal_basis: list[tuple[int, ...]]
    quasi_elements: list[tuple[int, ...]]
    is_hilbert: bool
    simplices: int = 0
    candidates: int = 0
    facets: int = 0


def minimal_hilbert_basis(generators: Sequence[Sequence[int]], max_dim: int = 12,
                          max_points: int = 2_000_000) -> HilbertReport:
    """Unique minimal Hilbert basis of the monoid cone(X) ∩ lattice(X).

    The cone is triangulated over its extreme rays (placing order = sorted
    rays), the lattice points of every half-open fundamental parallelepiped
    are collected, and the union is reduced to its irreducible elements.
    """
    gens = [tuple(int(v) for v in g) for g in generators]
    if not gens:
        return HilbertReport([], [], True)
    ambient = len(gens[0])
    if any(v < 0 for g in gens for v in g):
        polyhedra.check_pointed(gens)
    nonzero = [g for g in gens if any(g)]
    if not nonzero:
        return HilbertReport([], [], True)
    data = polyhedra.cone_data(nonzero, ambient)
    if data.dim > max_dim:
        raise BudgetExceeded(f"cone dimension {data.dim} exceeds Hilbert budget {max_dim}")
    rays = sorted({linalg.primitive(data.generators[i]) for i in polyhedra.extreme_generators(data)})
    # a primitive ray direction may not itself be a lattice point; use the shortest generator on it
    ray_gens = []
    for r in rays:
        on_ray = [g for g in nonzero if linalg.primitive(g) == r]
        ray_gens.append(min(on_ray, key=lambda g: (sum(map(abs, g)), g)))
    ray_gens.sort()
    projected = [tuple(data.project(r)) for r in ray_gens]
    simplices = polyhedra.placing_triangulation(projected)
    lat = linalg.lattice_basis(nonzero)
    lat_proj = [data.project(v) for v in lat]

    candidates = set(ray_gens) | set(nonzero)
    for simplex in simplices:
        rows = [projected[i] for i in simplex]
        full_rows = [ray_gens[i] for i in simplex]
        pts = polyhedra.parallelepiped_points(rows, lat_proj, full_rows, limit=max_points)
        candidates.update(p for p in pts if any(p))
        if len(candidates) > max_points:
            raise BudgetExceeded("too many parallelepiped points")
    basis = _canonical(polyhedra.irreducible_elements(list(candidates), data))
    gen_set = set(nonzero)
    quasi = [v for v in basis if v not in gen_set]
    return HilbertReport(basis, quasi, not quasi, len(simplices), len(candidates), len(data.facets))


@dataclass
class HilbertVerdict:
    verdict: str
    certificate: tuple[Fraction, ...] | None = None
    report: HilbertReport | None = None
    method: str = ""


def is_hilbert_basis(g: Graph, budget: int = DEFAULT_NODE_BUDGET, max_dim: int = 12) -> HilbertVerdict:
    """Do the cuts of g form a Hilbert basis?

    Within the dimension budget the minimal Hilbert basis of the bonds is
    computed; otherwise only the stored counterexamples are tried.
    """
    if g.m == 0:
        return HilbertVerdict(YES, method="empty")
    if g.m <= max_dim:
        report = minimal_hilbert_basis([b.incidence for b in bonds_of(g)], max_dim=max_dim)
        cert = tuple(Fraction(v) for v in report.quasi_elements[0]) if report.quasi_elements else None
        return HilbertVerdict(YES if report.is_hilbert else NO, cert, report, "hilbert-basis")
    from .certificates import known_certificate

    cert = known_certificate(g, budget)
    if cert is not None:
        return HilbertVerdict(NO, cert, None, "stored-certificate")
    return HilbertVerdict(UNKNOWN, method="over-budget")


# --------------------------------------------------------------------------
# lattice endpoint property


@dataclass
class LepProbeResult:
    endpoints_checked: list[tuple[Fraction, str]] = field(default_factory=list)
    property_violated: bool = False
    trials: int = 0
    skipped: int = 0
    violations: list[tuple[tuple[Fraction, ...], Fraction]] = field(default_factory=list)


def lep_check_endpoints(g: Graph, f: int, x: Sequence) -> LepProbeResult:
    """Classify both endpoints of I(g, x, f) as zero / in_lattice / violation."""
    x = edge_vector(g, x)
    if not almost_in_lattice(g, x, f):
        raise PreconditionFailed("x is not almost in the lattice with respect to f")
    interval = feasibility_interval(g, x, f)
    if interval.empty:
        raise PreconditionFailed("feasibility interval is empty")
    out = LepProbeResult(trials=1)
    for gamma in interval.endpoints():
        if gamma == 0:
            tag = "zero"
        elif in_lattice_hnf(g, override_entry(x, f, gamma)):
            tag = "in_lattice"
        else:
            tag = "violation"
            out.property_violated = True
            out.violations.append((x, gamma))
        out.endpoints_checked.append((gamma, tag))
    return out


def random_lattice_vector(cuts: Sequence[Sequence[int]], rng: random.Random, low: int = 0,
                          high: int = 12, attempts: int = 200) -> list[int] | None:
    """Random integer combination of cuts with every entry in [low, high]."""
    m = len(cuts[0])
    for _ in range(attempts):
        k = rng.randint(1, 6)
        vec = [0] * m
        for _ in range(k):
            c = cuts[rng.randrange(len(cuts))]
            coef = rng.choice((-1, 1, 1, 2, 3))
            for i in range(m):
                vec[i] += coef * c[i]
        if all(low <= v <= high for v in vec):
            return vec
    return None


def lep_probe(g: Graph, f: int, trials: int = 100, seed: int = 0) -> LepProbeResult:
    """Randomised search for lattice-endpoint violations (evidence only)."""
    rng = random.Random(seed)
    h = delete_edge(g, f)
    cuts = [c.incidence for c in cuts_of(h) if c.size]
    out = LepProbeResult()
    for _ in range(trials):
        rest = random_lattice_vector(cuts, rng) if cuts else [0] * h.m
        if rest is None:
            out.skipped += 1
            continue
        x = rest[:f] + [0] + rest[f:]
        if feasibility_interval(g, x, f).empty:
            out.skipped += 1
            continue
        res = lep_check_endpoints(g, f, x)
        out.trials += 1
        out.endpoints_checked.extend(res.endpoints_checked)
        out.violations.extend(res.violations)
        out.property_violated |= res.property_violated
    return out


def integer_gamma(g: Graph, x: Sequence, f: int, budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, IntconeResult] | None:
    """Some integer gamma >= 0 with x(gamma) in intcone(B(g)), scanning I(g, x, f)."""
    interval = feasibility_interval(g, x, f)
    if interval.empty:
        return None
    lo = max(0, math.ceil(interval.gamma_min))
    hi = math.floor(interval.gamma_max) if interval.gamma_max != "inf" else lo + sum(abs(int(v)) for v in x)
    for gamma in range(lo, hi + 1):
        res = in_intcone(g, override_entry(x, f, gamma), budget)
        if res.member == YES:
            return gamma, res
    return None


def validate_certificate(g: Graph, x: Sequence, budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """x in cone and lattice but not in the integer cone (search completed)."""
    return (in_cone(g, x).member and in_lattice_hnf(g, x)
            and in_intcone(g, x, budget).member == NO)
