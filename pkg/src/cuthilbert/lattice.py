"""The lattice side: circuit parity, HNF membership, and "almost in the lattice"."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .errors import BadIndex, NotSimple
from .geometry import bonds_of, edge_vector, is_integral
from .graph import DEFAULT_CUT_BUDGET, Circuit, Graph, cycle_basis, delete_edge


@dataclass(frozen=True)
class ParityCertificate:
    verdict: bool
    violating_circuit: Circuit | None = None

    def __bool__(self):
        return self.verdict


def in_lattice_parity(g: Graph, x: Sequence) -> ParityCertificate:
    """Integral x is in lattice(B(g)) iff x(C) is even on every circuit (simple g).

    Checking a cycle basis suffices: parity of x(C) is additive under
    symmetric difference of circuits.
    """
    if not g.is_simple():
        raise NotSimple("parity criterion needs a simple graph; use in_lattice_hnf")
    x = edge_vector(g, x)
    if not is_integral(x):
        return ParityCertificate(False)
    for circ in cycle_basis(g):
        if sum(int(x[i]) for i in circ.edges) % 2:
            return ParityCertificate(False, circ)
    return ParityCertificate(True)


@lru_cache(maxsize=256)
def cut_lattice_basis(g: Graph, budget: int = DEFAULT_CUT_BUDGET) -> tuple[tuple[int, ...], ...]:
    """HNF basis of lattice(B(g)); bonds generate the same lattice as all cuts."""
    gens = [b.incidence for b in bonds_of(g, budget)]
    return tuple(tuple(v) for v in linalg.lattice_basis(gens))


def in_lattice_hnf(g: Graph, x: Sequence, budget: int = DEFAULT_CUT_BUDGET) -> bool:
    """Membership in lattice(B(g)) by integer solvability; valid for multigraphs."""
    x = edge_vector(g, x)
    if not is_integral(x):
        return False
    basis = cut_lattice_basis(g, budget)
    if not basis:
        return all(v == 0 for v in x)
    return linalg.integer_solve(linalg.transpose(basis), [int(v) for v in x]) is not None


def lattice_coefficients(g: Graph, x: Sequence, budget: int = DEFAULT_CUT_BUDGET) -> dict | None:
    """Integer coefficients over the bonds reproducing x, or None."""
    x = edge_vector(g, x)
    if not is_integral(x):
        return None
    bonds = bonds_of(g, budget)
    a = [[b.incidence[e] for b in bonds] for e in range(g.m)]
    s = linalg.integer_solve(a, [int(v) for v in x])
    if s is None:
        return None
    return {b: c for b, c in zip(bonds, s) if c}


def almost_in_lattice(g: Graph, x: Sequence, f: int, budget: int = DEFAULT_CUT_BUDGET) -> bool:
    """The restriction of x to E minus f lies in lattice(B(g minus f))."""
    if not isinstance(f, int) or not 0 <= f < g.m:
        raise BadIndex(f"edge index {f!r} out of range")
    x = [Fraction(v) for v in x]
    rest = x[:f] + x[f + 1:]
    return in_lattice_hnf(delete_edge(g, f), rest, budget)
