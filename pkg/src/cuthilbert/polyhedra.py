"""Exact polyhedral cones given by generators.

* :func:`double_description` turns generators into facet normals.
* :func:`placing_triangulation` splits the cone into simplicial cones.
* :func:`parallelepiped_points` lists lattice points of a half-open
  fundamental parallelepiped via the finite group ``L / lattice(simplex)``.

Cones need not be full-dimensional: everything runs in a set of pivot
coordinates on which projection is injective over the linear span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .errors import BudgetExceeded, NotPointed
from .lp import feasible

Vector = tuple[int, ...]


@dataclass
class ConeData:
    generators: list[Vector]  # full coordinates
    coords: list[int]  # pivot coordinates spanning the cone's linear hull
    equations: list[Vector]  # basis of the orthogonal complement of the span
    facets: list[Vector] = field(default_factory=list)  # normals in ``coords``

    @property
    def dim(self) -> int:
        return len(self.coords)

    def project(self, x: Sequence) -> list:
        return [x[c] for c in self.coords]

    def lift(self, a: Sequence[int], ambient: int) -> Vector:
        out = [0] * ambient
        for c, v in zip(self.coords, a):
            out[c] = v
        return tuple(out)

    def contains(self, x: Sequence) -> bool:
        if any(linalg.dot(e, x) != 0 for e in self.equations):
            return False
        xp = self.project(x)
        return all(linalg.dot(a, xp) >= 0 for a in self.facets)


def span_data(generators: Sequence[Sequence[int]], ambient: int) -> ConeData:
    gens = [tuple(int(v) for v in g) for g in generators]
    coords = linalg.pivot_columns(gens) if gens else []
    eqs = [tuple(e) for e in linalg.nullspace(gens, ambient)] if gens else \
        [tuple(int(i == j) for j in range(ambient)) for i in range(ambient)]
    return ConeData(gens, coords, eqs)


def check_pointed(generators: Sequence[Sequence[int]]):
    """Raise NotPointed when some nonzero nonnegative combination vanishes."""
    gens = [g for g in generators if any(g)]
    if not gens:
        return
    d = len(gens[0])
    a = [[g[i] for g in gens] for i in range(d)] + [[1] * len(gens)]
    b = [0] * d + [1]
    if feasible(a, b) is not None:
        raise NotPointed("generators do not span a pointed cone")


# --------------------------------------------------------------------------
# double description


def double_description(rays: Sequence[Sequence[int]], max_generators: int = 200_000) -> list[Vector]:
    """Facet normals ``a`` (primitive, ``a·r >= 0``) of cone(rays) in full dimension.

    ``rays`` must span the whole space.  Rays are inserted in the given order
    after an initial basis picked greedily in that order; two polar
    generators are adjacent when the rays tight at both have rank ``d - 2``.
    """
    rays = [tuple(r) for r in rays]
    d = len(rays[0])
    basis_idx = linalg.independent_rows(rays)
    if len(basis_idx) != d:
        raise ValueError("rays are not full-dimensional")
    inv = linalg.inverse([rays[i] for i in basis_idx])
    gens: list[tuple[Vector, int]] = []
    inserted = 0
    for i in basis_idx:
        inserted |= 1 << i
    for j in range(d):
        col = [inv[i][j] for i in range(d)]
        a = linalg.primitive(linalg.integerize_row(col))
        zero = inserted & ~(1 << basis_idx[j])
        gens.append((a, zero))

    rank_cache: dict[int, int] = {}

    def tight_rank(mask: int) -> int:
        r = rank_cache.get(mask)
        if r is None:
            rows = [rays[k] for k in range(len(rays)) if (mask >> k) & 1]
            r = linalg.rank(rows) if rows else 0
            rank_cache[mask] = r
        return r

    order = [k for k in range(len(rays)) if k not in set(basis_idx)]
    for k in order:
        r = rays[k]
        pos, neg, zer = [], [], []
        for a, z in gens:
            s = linalg.dot(a, r)
            if s > 0:
                pos.append((a, z, s))
            elif s < 0:
                neg.append((a, z, s))
            else:
                zer.append((a, z | (1 << k)))
        inserted |= 1 << k
        if not neg:
            gens = [(a, z) for a, z, _ in pos] + zer
            continue
        new = []
        for ap, zp, sp in pos:
            for an, zn, sn in neg:
                common = zp & zn
                if common.bit_count() < d - 2:
                    continue
                if tight_rank(common) != d - 2:
                    continue
                v = tuple(sp * x - sn * y for x, y in zip(an, ap))
                new.append((linalg.primitive(v), common | (1 << k)))
        gens = [(a, z) for a, z, _ in pos] + zer + new
        if len(gens) > max_generators:
            raise BudgetExceeded("double description grew past its budget")
    return sorted({a for a, _ in gens})


def cone_data(generators: Sequence[Sequence[int]], ambient: int | None = None) -> ConeData:
    """Span data plus facets (in pivot coordinates) of cone(generators)."""
    gens = [tuple(int(v) for v in g) for g in generators]
    ambient = ambient if ambient is not None else len(gens[0])
    data = span_data(gens, ambient)
    nonzero = [g for g in gens if any(g)]
    if data.dim == 0:
        return data
    projected = [tuple(data.project(g)) for g in nonzero]
    data.facets = double_description(projected)
    return data


def tight_rank_of(data: ConeData, x: Sequence) -> int:
    xp = data.project(x)
    rows = [a for a in data.facets if linalg.dot(a, xp) == 0]
    return linalg.rank(rows) if rows else 0


def extreme_generators(data: ConeData) -> list[int]:
    """Indices of generators spanning distinct extreme rays (first of each)."""
    out = []
    seen = set()
    for i, g in enumerate(data.generators):
        if not any(g):
            continue
        key = linalg.primitive(g)
        if key in seen:
            continue
        if tight_rank_of(data, g) == data.dim - 1:
            seen.add(key)
            out.append(i)
    return out


# --------------------------------------------------------------------------
# triangulation and fundamental parallelepipeds


def _hyperplane(rows: Sequence[Sequence[int]], d: int, interior: Sequence[int]) -> Vector:
    ns = linalg.nullspace(rows, d)
    assert len(ns) == 1
    a = ns[0]
    if linalg.dot(a, interior) < 0:
        a = [-x for x in a]
    return tuple(a)


def placing_triangulation(rays: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Simplicial cones (as sorted ray-index tuples) covering cone(rays).

    ``rays`` live in full dimension.  Start from a greedy basis, then place
    the remaining rays in order: each new ray is coned over the boundary
    facets it sees.
    """
    rays = [tuple(r) for r in rays]
    d = len(rays[0])
    basis = linalg.independent_rows(rays)
    if len(basis) != d:
        raise ValueError("rays are not full-dimensional")
    interior = [sum(rays[i][c] for i in basis) for c in range(d)]
    simplices = [tuple(sorted(basis))]
    boundary: dict[frozenset, Vector] = {}
    for j in basis:
        face = frozenset(i for i in basis if i != j)
        boundary[face] = _hyperplane([rays[i] for i in face], d, interior) if face else \
            tuple(linalg.primitive(linalg.integerize_row(interior)))
    in_basis = set(basis)
    for k, r in enumerate(rays):
        if k in in_basis:
            continue
        visible = [f for f, a in boundary.items() if linalg.dot(a, r) < 0]
        if not visible:
            continue
        ridges: dict[frozenset, int] = {}
        for f in visible:
            simplices.append(tuple(sorted(f | {k})))
            for drop in f:
                ridge = f - {drop}
                ridges[ridge] = ridges.get(ridge, 0) + 1
        for f in visible:
            del boundary[f]
        for ridge, count in ridges.items():
            if count == 1:
                face = ridge | {k}
                boundary[face] = _hyperplane([rays[i] for i in face], d, interior)
    return sorted(simplices)


def parallelepiped_points(simplex_rows: Sequence[Sequence[int]],
                          lattice_rows: Sequence[Sequence[int]],
                          full_rows: Sequence[Sequence[int]] | None = None,
                          limit: int = 1_000_000) -> list[Vector]:
    """Points ``sum λ_i r_i`` with ``λ in [0,1)^d`` lying in the lattice.

    ``simplex_rows`` (square, invertible) and ``lattice_rows`` (a generating
    set of the lattice, which must contain the simplex rays) are given in
    the same projected coordinates.  ``full_rows`` are the simplex rays in
    ambient coordinates used to report the points; defaults to
    ``simplex_rows``.
    """
    full_rows = full_rows if full_rows is not None else simplex_rows
    d = len(simplex_rows)
    det = linalg.det(simplex_rows)
    big = abs(det)
    inv = linalg.inverse(simplex_rows)
    adj = [[int(x * big) for x in row] for row in inv]  # adj = |det| * R^{-1}

    def coords_of(b):
        return tuple(sum(b[i] * adj[i][j] for i in range(d)) % big for j in range(d))

    steps = [coords_of(b) for b in lattice_rows]
    steps = [s for s in set(steps) if any(s)]
    zero = tuple([0] * d)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for u in frontier:
            for s in steps:
                w = tuple((x + y) % big for x, y in zip(u, s))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > limit:
                        raise BudgetExceeded("fundamental parallelepiped too large")
        frontier = nxt
    out = []
    amb = len(full_rows[0])
    for u in sorted(seen):
        p = []
        for c in range(amb):
            num = sum(u[i] * full_rows[i][c] for i in range(d))
            assert num % big == 0
            p.append(num // big)
        out.append(tuple(p))
    return out


def irreducible_elements(candidates: Sequence[Vector], data: ConeData) -> list[Vector]:
    """Elements of ``candidates`` not of the form y + (monoid element), y another candidate.

    Candidates must generate the monoid cone ∩ lattice.  Elements are
    processed by increasing value of a linear form positive on the cone, so
    only already-accepted irreducibles need to be tested as summands.
    """
    weight = [sum(col) for col in zip(*data.facets)] if data.facets else [0] * data.dim

    def w(x):
        return linalg.dot(weight, data.project(x))

    uniq = sorted({tuple(c) for c in candidates if any(c)}, key=lambda x: (w(x), sum(x), x))
    facets = data.facets
    basis: list[Vector] = []
    proj: list[list[int]] = []
    for x in uniq:
        xp = data.project(x)
        wx = w(x)
        reducible = False
        for y, yp in zip(basis, proj):
            if linalg.dot(weight, yp) >= wx:
                continue
            diff = [a - b for a, b in zip(xp, yp)]
            if all(linalg.dot(a, diff) >= 0 for a in facets):
                reducible = True
                break
        if not reducible:
            basis.append(x)
            proj.append(xp)
    return basis

