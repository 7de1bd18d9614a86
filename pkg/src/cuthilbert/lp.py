"""Exact two-phase simplex for ``min c·x  s.t.  A x = b, x >= 0``.

The tableau is kept integral with a common positive denominator and updated
by fraction-free (Bareiss/Edmonds) pivots, so every division is exact.  Bland's
rule picks entering and leaving variables, which guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import DimensionMismatch

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    value: Fraction | None = None


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], den: int = 1):
        self.t = rows  # last row is the objective, last column the rhs
        self.basis = basis
        self.den = den

    def pivot(self, r: int, s: int):
        t = self.t
        piv = t[r][s]
        den = self.den
        row_r = t[r]
        for i, row in enumerate(t):
            if i == r:
                continue
            f = row[s]
            if f == 0:
                if piv != den:
                    t[i] = [(x * piv) // den for x in row]
                continue
            t[i] = [(x * piv - f * y) // den for x, y in zip(row, row_r)]
        self.den = piv
        if piv < 0:
            self.t = [[-x for x in row] for row in self.t]
            self.den = -piv
        self.basis[r] = s

    def run(self, allowed: int) -> str:
        """Bland's rule over columns ``< allowed``; returns OPTIMAL or UNBOUNDED."""
        while True:
            obj = self.t[-1]
            s = next((j for j in range(allowed) if obj[j] < 0), None)
            if s is None:
                return OPTIMAL
            best = None
            for i in range(len(self.t) - 1):
                a = self.t[i][s]
                if a <= 0:
                    continue
                rhs = self.t[i][-1]
                if best is None:
                    best = i
                    continue
                # compare rhs/a with rhs_b/a_b, ties broken by smallest basic index
                b_rhs, b_a = self.t[best][-1], self.t[best][s]
                lhs, rhs_cmp = rhs * b_a, b_rhs * a
                if lhs < rhs_cmp or (lhs == rhs_cmp and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return UNBOUNDED
            self.pivot(best, s)


def _scale_rows(a, b):
    rows = []
    for row, bi in zip(a, b):
        den = Fraction(bi).denominator
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        ir = [int(Fraction(x) * den) for x in row]
        ib = int(Fraction(bi) * den)
        if ib < 0:
            ir = [-x for x in ir]
            ib = -ib
        rows.append((ir, ib))
    return rows


def solve_lp(a: Sequence[Sequence], b: Sequence, c: Sequence | None = None) -> LPResult:
    """Minimise ``c·x`` over ``{x >= 0 : a x = b}``; ``c=None`` checks feasibility."""
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != m:
        raise DimensionMismatch("rhs length does not match row count")
    if m == 0:
        if c is not None and any(Fraction(v) < 0 for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, [Fraction(0)] * n, Fraction(0))
    scaled = _scale_rows(a, b)

    # phase 1: artificial column per row
    rows = []
    for i, (ir, ib) in enumerate(scaled):
        rows.append(ir + [int(i == k) for k in range(m)] + [ib])
    obj = [0] * (n + m + 1)
    for ir, ib in scaled:
        for j in range(n):
            obj[j] -= ir[j]
        obj[-1] -= ib
    rows.append(obj)
    tab = _Tableau(rows, [n + i for i in range(m)])
    tab.run(n + m)
    if tab.t[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.basis):
        if tab.basis[i] >= n:
            s = next((j for j in range(n) if tab.t[i][j] != 0), None)
            if s is None:
                del tab.t[i]
                del tab.basis[i]
                continue
            tab.pivot(i, s)
        i += 1
    tab.t = [row[:n] + [row[-1]] for row in tab.t]

    if c is None:
        return LPResult(OPTIMAL, _solution(tab, n), Fraction(0))

    cden = 1
    for v in c:
        cden = lcm(cden, Fraction(v).denominator)
    ic = [int(Fraction(v) * cden) for v in c]
    obj = [ic[j] * tab.den for j in range(n)] + [0]
    for r, bj in enumerate(tab.basis):
        cb = ic[bj]
        if cb:
            row = tab.t[r]
            for j in range(n):
                obj[j] -= cb * row[j]
            obj[-1] -= cb * row[-1]
    tab.t[-1] = obj
    status = tab.run(n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    value = Fraction(-tab.t[-1][-1], tab.den * cden)
    return LPResult(OPTIMAL, _solution(tab, n), value)


def _solution(tab: _Tableau, n: int) -> list[Fraction]:
    x = [Fraction(0)] * n
    for r, j in enumerate(tab.basis):
        x[j] = Fraction(tab.t[r][-1], tab.den)
    return x


def feasible(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    res = solve_lp(a, b)
    return res.x if res.status == OPTIMAL else None
