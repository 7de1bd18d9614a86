"""Budgets shared by the engines, the classifier and the command line."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DEFAULT_CUT_BUDGET
from .hilbert import DEFAULT_NODE_BUDGET
from .minors import DEFAULT_MINOR_BUDGET


@dataclass(frozen=True)
class Budgets:
    intcone_nodes: int = DEFAULT_NODE_BUDGET
    minor_nodes: int = DEFAULT_MINOR_BUDGET
    cut_vertices: int = DEFAULT_CUT_BUDGET
    hilbert_dim: int = 12  # largest edge count handed to minimal_hilbert_basis
    direct_edges: int = 11  # largest edge count for the classifier's direct computation
    three_clique_sums: bool = True
