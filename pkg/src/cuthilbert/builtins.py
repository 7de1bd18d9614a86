"""Counterexample vectors stored as half-sums of cuts and materialised on load.

K6 minus (5,6): the seven sets below generate a simplicial face; their
half-sum has entry sum 26, which is 2 mod 4, while every cut of the face
has size 4 or 8.  H10minus / H11 use the sets listed for those graphs under
the catalog labeling (second K4 on 7..10, subdivision vertex 11).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownName
from .graph import Cut, Graph, cut_of, named_graph

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BuiltinVector:
    name: str
    graph_name: str
    sides: tuple[tuple[str, ...], ...]
    coefficient: Fraction = HALF

    @property
    def graph(self) -> Graph:
        return named_graph(self.graph_name)

    def cuts(self) -> list[Cut]:
        g = self.graph
        return [cut_of(g, s) for s in self.sides]

    def vector(self) -> tuple[Fraction, ...]:
        g = self.graph
        out = [Fraction(0)] * g.m
        for c in self.cuts():
            for i, b in enumerate(c.incidence):
                out[i] += self.coefficient * b
        return tuple(out)


def _sides(*sets: str) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(s.split(",")) for s in sets)


BUILTINS = {
    "k6e": BuiltinVector("k6e", "K6minusE",
                         _sides("1,4", "2,4", "3,4", "1,4,6", "2,4,6", "3,4,6", "6")),
    "h10minus": BuiltinVector("h10minus", "H10minus",
                              _sides("1,4", "2,3", "1,3", "2,4", "5,7,9", "5,8,10", "5,7,10", "5,8,9")),
    "h11": BuiltinVector("h11", "H11",
                         _sides("1,4", "2,3", "1,3", "2,4", "5,7,9", "5,8,10,11", "5,7,10,11",
                                "5,8,9,11", "11")),
}


def builtin(name: str) -> BuiltinVector:
    key = name.removeprefix("builtin:")
    if key not in BUILTINS:
        raise UnknownName(name)
    return BUILTINS[key]
