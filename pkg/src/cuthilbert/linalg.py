"""Exact rational and integer linear algebra.

Matrices are plain lists of rows.  Entries may be ``int`` or ``Fraction``;
nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DimensionMismatch, ParseError

Rat = Fraction
Matrix = list[list]


def parse_rat(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``."""
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/", 1)
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


def format_rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def shape(a: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise DimensionMismatch("ragged matrix")
    return rows, cols


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def integerize_row(row: Sequence) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g in (0, 1):
        return tuple(vec)
    return tuple(x // g for x in vec)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [dot(row, v) for row in a]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * piv - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(a: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free Gaussian elimination."""
    if not a or not a[0]:
        return 0
    shape(a)
    rows = [integerize_row(r) for r in a]
    return len(_bareiss_echelon(rows)[1])


def pivot_columns(a: Sequence[Sequence]) -> list[int]:
    """Columns carrying pivots in the row echelon form (a column basis)."""
    if not a or not a[0]:
        return []
    rows = [integerize_row(r) for r in a]
    return _bareiss_echelon(rows)[1]


def independent_rows(a: Sequence[Sequence]) -> list[int]:
    """Greedy indices of a maximal independent set of rows, in input order."""
    return pivot_columns(transpose(a)) if a else []


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Some exact solution of a·s = b (free variables set to 0), or None."""
    rows, cols = shape(a) if a else (0, 0)
    if len(b) != rows:
        raise DimensionMismatch(f"{rows} rows but right-hand side of length {len(b)}")
    if rows == 0:
        return []
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots = rref(aug)
    if cols in pivots:
        return None
    s = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        s[c] = m[r][cols]
    return s


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[list[int]]:
    """Integer basis of {s : a·s = 0}."""
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return identity(cols)
    m, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        basis.append(list(primitive(integerize_row(v))))
    return basis


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in m]


def det(a: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant (Bareiss on row-integerized entries)."""
    n = len(a)
    if n == 0:
        return 1
    scale = 1
    m = []
    for r in a:
        den = 1
        for x in r:
            den = lcm(den, Fraction(x).denominator)
        scale *= den
        m.append([int(Fraction(x) * den) for x in r])
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = piv
    value = Fraction(sign * m[n - 1][n - 1], scale)
    return int(value) if value.denominator == 1 else value


# --------------------------------------------------------------------------
# Hermite normal form


@dataclass
class HNF:
    """Column-style Hermite form: ``a · u == h``, ``u`` unimodular."""

    h: Matrix
    u: Matrix | None
    pivots: list[tuple[int, int]]  # (row, column) of each pivot

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(a: Sequence[Sequence[int]], transform: bool = True) -> HNF:
    """Lower-triangular column Hermite normal form by unimodular column operations.

    Each pivot is positive; entries left of a pivot in its row are reduced
    into ``[0, pivot)``; columns right of the last pivot are zero.
    """
    rows, cols = shape(a) if a else (0, 0)
    # work on columns: cols_h[j] is column j of h
    ch = [[int(a[i][j]) for i in range(rows)] for j in range(cols)]
    cu = [[int(i == j) for i in range(cols)] for j in range(cols)] if transform else None
    pivots = []
    k = 0
    for i in range(rows):
        if k == cols:
            break
        nz = [j for j in range(k, cols) if ch[j][i] != 0]
        if not nz:
            continue
        # bring a nonzero entry to column k
        if nz[0] != k:
            j = nz[0]
            ch[k], ch[j] = ch[j], ch[k]
            if cu is not None:
                cu[k], cu[j] = cu[j], cu[k]
        for j in range(k + 1, cols):
            b = ch[j][i]
            if b == 0:
                continue
            a_ = ch[k][i]
            g, p, q = _xgcd(a_, b)
            ag, bg = a_ // g, b // g
            ck, cj = ch[k], ch[j]
            ch[k] = [p * x + q * y for x, y in zip(ck, cj)]
            ch[j] = [-bg * x + ag * y for x, y in zip(ck, cj)]
            if cu is not None:
                uk, uj = cu[k], cu[j]
                cu[k] = [p * x + q * y for x, y in zip(uk, uj)]
                cu[j] = [-bg * x + ag * y for x, y in zip(uk, uj)]
        if ch[k][i] < 0:
            ch[k] = [-x for x in ch[k]]
            if cu is not None:
                cu[k] = [-x for x in cu[k]]
        piv = ch[k][i]
        for j in range(k):
            q = ch[j][i] // piv
            if q:
                ch[j] = [x - q * y for x, y in zip(ch[j], ch[k])]
                if cu is not None:
                    cu[j] = [x - q * y for x, y in zip(cu[j], cu[k])]
        pivots.append((i, k))
        k += 1
    h = transpose(ch) if cols else [[] for _ in range(rows)]
    u = transpose(cu) if cu is not None and cols else ([] if cu is not None else None)
    return HNF(h, u, pivots)


def lattice_basis(generators: Sequence[Sequence[int]]) -> list[list[int]]:
    """A basis (list of vectors) of the integer lattice spanned by ``generators``."""
    gens = [list(map(int, g)) for g in generators]
    if not gens:
        return []
    res = hnf(transpose(gens), transform=False)
    cols = transpose(res.h)
    return [cols[k] for _, k in res.pivots]


def integer_solve(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """An integer vector s with a·s = b, or None when none exists."""
    rows, cols = shape(a) if a else (0, 0)
    if len(b) != rows:
        raise DimensionMismatch(f"{rows} rows but right-hand side of length {len(b)}")
    if any(Fraction(x).denominator != 1 for x in b):
        return None
    b = [int(x) for x in b]
    res = hnf(a, transform=True)
    h = res.h
    t = [0] * cols
    for i, k in res.pivots:
        rest = b[i] - sum(h[i][j] * t[j] for j in range(k))
        q, r = divmod(rest, h[i][k])
        if r:
            return None
        t[k] = q
    # rows without pivots must be reproduced by the pivot columns already fixed
    for i in range(rows):
        if sum(h[i][j] * t[j] for j in range(cols)) != b[i]:
            return None
    return mat_vec(res.u, t) if cols else []


def in_integer_lattice(basis: Sequence[Sequence[int]], x: Sequence) -> bool:
    """Membership of x in the lattice spanned by ``basis`` (list of vectors)."""
    if any(Fraction(v).denominator != 1 for v in x):
        return False
    if not basis:
        return all(v == 0 for v in x)
    return integer_solve(transpose(basis), [int(v) for v in x]) is not None
