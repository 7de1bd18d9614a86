import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from cuthilbert.errors import DimensionMismatch, ParseError
from cuthilbert.linalg import (
    det,
    format_rat,
    hnf,
    in_integer_lattice,
    integer_solve,
    inverse,
    lattice_basis,
    mat_mul,
    mat_vec,
    nullspace,
    parse_rat,
    primitive,
    rank,
    rref,
    solve_rational,
    transpose,
)


def matrices(max_rows=5, max_cols=5, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_parse_and_format():
    assert parse_rat("3/6") == Fraction(1, 2)
    assert parse_rat(" -4 ") == -4
    assert format_rat(Fraction(26, 2)) == "13"
    assert format_rat(Fraction(-1, 2)) == "-1/2"
    for bad in ["", "1/0", "x", "1.5"]:
        with pytest.raises(ParseError):
            parse_rat(bad)


def test_primitive():
    assert primitive([4, -6, 0]) == (2, -3, 0)
    assert primitive([0, 0]) == (0, 0)


@given(matrices())
def test_rank_matches_sympy(a):
    assert rank(a) == sympy.Matrix(a).rank()


@given(matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation(a, rnd):
    rows = a[:]
    rnd.shuffle(rows)
    perm = list(range(len(a[0])))
    rnd.shuffle(perm)
    b = [[r[j] for j in perm] for r in rows]
    assert rank(a) == rank(b) == rank(transpose(a))


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_and_inverse_match_sympy(a):
    assert det(a) == sympy.Matrix(a).det()
    if det(a) != 0:
        inv = inverse(a)
        n = len(a)
        assert mat_mul(a, inv) == [[int(i == j) for j in range(n)] for i in range(n)]


@given(matrices())
def test_rref_matches_sympy(a):
    r, piv = rref(a)
    sr, spiv = sympy.Matrix(a).rref()
    assert tuple(piv) == spiv
    assert [[Fraction(x) for x in row] for row in r[:len(piv)]] == \
        [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in sr.row(i)]
         for i in range(len(spiv))]


@given(matrices())
def test_nullspace(a):
    ns = nullspace(a)
    assert len(ns) == len(a[0]) - rank(a)
    for v in ns:
        assert all(x == 0 for x in mat_vec(a, v))


@given(matrices(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_rational(a, s):
    b = mat_vec(a, s[:len(a[0])])
    x = solve_rational(a, b)
    assert x is not None and mat_vec(a, x) == b


def test_solve_rational_inconsistent():
    assert solve_rational([[1, 1], [1, 1]], [1, 2]) is None


@given(matrices(max_rows=4, max_cols=5))
def test_hnf_shape(a):
    res = hnf(a)
    assert mat_mul(a, res.u) == res.h
    assert abs(det(res.u)) == 1
    assert res.rank == rank(a)
    h = res.h
    last = -1
    for i, k in res.pivots:
        assert k == last + 1
        last = k
        assert h[i][k] > 0
        assert all(0 <= h[i][j] < h[i][k] for j in range(k))
        assert all(h[r][k] == 0 for r in range(i))
    for j in range(res.rank, len(a[0])):
        assert all(h[r][j] == 0 for r in range(len(a)))


def box_solution(a, b, radius=5):
    cols = len(a[0])
    for s in itertools.product(range(-radius, radius + 1), repeat=cols):
        if mat_vec(a, s) == b:
            return s
    return None


@given(matrices(max_rows=3, max_cols=3, lo=-3, hi=3), st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_integer_solve_vs_box(a, b):
    b = b[:len(a)]
    sol = integer_solve(a, b)
    if sol is not None:
        assert mat_vec(a, sol) == b
    elif rank(a) == len(a[0]):
        # full column rank: the solution is unique, so the box search is a complete oracle
        rat = solve_rational(a, b)
        assume(rat is None or all(abs(x) <= 5 for x in rat))
        assert box_solution(a, b) is None
    if box_solution(a, b) is not None:
        assert sol is not None


def test_integer_solve_examples():
    assert integer_solve([[2, 4]], [6]) is not None
    assert integer_solve([[2, 4]], [3]) is None
    assert integer_solve([[1, 0]], [Fraction(1, 2)]) is None
    with pytest.raises(DimensionMismatch):
        integer_solve([[1, 0]], [1, 2])


def test_lattice_membership():
    basis = lattice_basis([[2, 0], [0, 2], [1, 1]])
    assert len(basis) == 2
    assert in_integer_lattice(basis, [1, 1])
    assert in_integer_lattice(basis, [3, 5])
    assert not in_integer_lattice(basis, [1, 0])
    assert not in_integer_lattice(basis, [Fraction(1, 2), Fraction(1, 2)])
    assert in_integer_lattice([], [0, 0]) and not in_integer_lattice([], [0, 1])


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_lattice_contains_integer_combinations(gens, coeffs):
    x = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3)]
    assert in_integer_lattice(lattice_basis(gens), x)


def test_large_entries_stay_exact():
    rnd = random.Random(5)
    a = [[rnd.randint(-10**6, 10**6) for _ in range(6)] for _ in range(6)]
    assert det(a) == sympy.Matrix(a).det()
