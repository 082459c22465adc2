from fractions import Fraction

from hypothesis import given, strategies as st

from charvar.intmat import (
    IntegerMatrix,
    hermite_normal_form,
    integer_solve_mod,
    saturate_columns,
    smith_normal_form,
    unimodular_inverse,
)
from oracles import determinantal_invariants


@st.composite
def matrices(draw, max_dim=4, bound=6):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m))
    return IntegerMatrix.from_rows(rows, n)


def _diag(d):
    return [d[i, i] for i in range(min(d.shape))]


def test_known_smith_form():
    a = IntegerMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    u, d, v = smith_normal_form(a)
    assert _diag(d) == [2, 6, 12]
    assert u @ a @ v == d


def test_smith_form_of_cycling_input():
    # once made the elimination loop cycle on a negative pivot
    a = IntegerMatrix.from_rows([[1, -1], [1, 1], [0, 0]])
    u, d, v = smith_normal_form(a.hstack(-IntegerMatrix.from_rows([[1], [1], [0]])))
    assert _diag(d)[:2] == [1, 2]


@given(matrices())
def test_smith_properties(a):
    u, d, v = smith_normal_form(a)
    assert u @ a @ v == d
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    diag = _diag(d)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert diag[:len(nz)] == nz
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    for i in range(d.nrows):
        for j in range(d.ncols):
            if i != j:
                assert d[i, j] == 0


@given(matrices(max_dim=3, bound=5))
def test_smith_matches_determinantal_divisors(a):
    _, d, _ = smith_normal_form(a)
    assert [x for x in _diag(d) if x] == determinantal_invariants(a.tolist(), a.nrows, a.ncols)


@given(matrices())
def test_hermite_is_canonical(a):
    h = hermite_normal_form(a)
    assert hermite_normal_form(h) == h
    # right multiplication by a unimodular matrix does not change H
    _, _, v = smith_normal_form(a)
    assert hermite_normal_form(a @ v) == h


@given(matrices())
def test_unimodular_inverse(a):
    u, _, v = smith_normal_form(a)
    assert u @ unimodular_inverse(u) == IntegerMatrix.identity(u.nrows)
    assert unimodular_inverse(v) @ v == IntegerMatrix.identity(v.nrows)


def test_saturation():
    e = IntegerMatrix.from_columns([(2, 0, 2)], 3)
    assert saturate_columns(e).columns() == [(1, 0, 1)]
    e = IntegerMatrix.from_columns([(1, 1, 0), (1, -1, 0)], 3)
    sat = saturate_columns(e)
    assert sorted(sat.columns()) == [(0, 1, 0), (1, 0, 0)]


@given(matrices(max_dim=3, bound=4), st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_solve_mod(a, num):
    b = [Fraction(x, 6) for x in num[:a.nrows]] + [Fraction(0)] * max(0, a.nrows - 3)
    sol = integer_solve_mod(a, b)
    if sol is None:
        return
    v, d, c, r = sol
    w = [Fraction(-c[i], d[i, i]) for i in range(r)] + [Fraction(0)] * (a.ncols - r)
    x = v.apply(w)
    res = [Fraction(y) - bb for y, bb in zip(a.apply(x), b)]
    # A x = b mod Z^n up to sign of the parametrisation
    res2 = [Fraction(y) + bb for y, bb in zip(a.apply(x), b)]
    assert all(t.denominator == 1 for t in res) or all(t.denominator == 1 for t in res2)
