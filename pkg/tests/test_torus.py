from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from charvar.intmat import IntegerMatrix
from charvar.presentation import CharvarError, Presentation, character_from_assignment
from charvar.torus import (
    AmbientMismatch,
    TranslatedSubtorus,
    component_subtorus,
    contains,
    intersect,
    point_order,
    same_subtorus,
    shadow,
    subtorus_equal,
)
from oracles import OracleSubtorus

F2 = Presentation.from_strings(["s", "t"], [])
F3 = Presentation.from_strings(["x", "y", "z"], [])


def test_saturation_on_construction():
    v = TranslatedSubtorus.build(F2, [0, 0], [[2, 2]])
    assert v.exponents.columns() == [(1, 1)]


def test_validation():
    p = Presentation.from_strings(["mu1", "mu2"], ["mu1^2", "mu2^3"])
    with pytest.raises(CharvarError):
        TranslatedSubtorus.build(p, [Fraction(1, 3), 0])
    with pytest.raises(CharvarError):
        TranslatedSubtorus.build(p, [0, 0], [[1, 0]])
    with pytest.raises(CharvarError):
        TranslatedSubtorus.build(F2, [0, 0], [[1, 1], [2, 2]])


def test_known_intersections():
    a = TranslatedSubtorus.build(F2, [0, 0], [[1, -1]])
    b = TranslatedSubtorus.build(F2, [0, 0], [[1, 1]])
    res = intersect(a, b)
    assert res.dim == 0 and res.points == ((0, 0), (Fraction(1, 2), Fraction(1, 2)))
    c = TranslatedSubtorus.build(F2, [0, 0], [[1, 3]])
    d = TranslatedSubtorus.build(F2, [0, 0], [[3, 1]])
    res = intersect(c, d)
    assert len(res.points) == 8 and {point_order(p) for p in res.points} <= {1, 2, 4, 8}
    e = TranslatedSubtorus.build(F2, [Fraction(1, 2), 0], [[1, 1]])
    assert intersect(b, e).empty


def test_positive_dimensional_intersection():
    a = TranslatedSubtorus.build(F3, [0, 0, 0], [[1, 0, 0], [0, 1, 0]])
    b = TranslatedSubtorus.build(F3, [0, 0, 0], [[0, 1, 0], [0, 0, 2]])
    res = intersect(a, b)
    assert res.dim == 1 and len(res.pieces) == 1
    assert res.pieces[0].exponents.columns() == [(0, 1, 0)]


def test_shadow_and_equality():
    v = TranslatedSubtorus.build(F2, [Fraction(1, 2), 0], [[1, 1]])
    w = TranslatedSubtorus.build(F2, [0, Fraction(1, 2)], [[1, 1]])
    assert same_subtorus(v, w)
    assert subtorus_equal(v, shadow(v)) and not same_subtorus(v, shadow(v))
    assert v.canonical_translation() == w.canonical_translation()


def test_contains_characters_and_mismatch():
    v = component_subtorus(F2)
    assert contains(v, character_from_assignment(F2, ["1/7", "2/7"]))
    with pytest.raises(AmbientMismatch):
        intersect(v, component_subtorus(F3))
    with pytest.raises(AmbientMismatch):
        contains(v, (0, 0, 0))


def test_component_subtorus_with_torsion():
    p = Presentation.from_strings(["x", "y"], ["x^2 y^-2"])
    ab = p.abelianization
    assert ab.rank == 1 and ab.invariants == (2,)
    v = component_subtorus(p)
    assert v.dim == 1


@st.composite
def subtorus(draw, n):
    d = draw(st.integers(0, n))
    while True:
        cols = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=d, max_size=d))
        if IntegerMatrix.from_columns(cols, n).rank() == d:
            break
    rho = draw(st.lists(st.integers(0, 5), min_size=n, max_size=n))
    return [Fraction(x, 6) for x in rho], cols


@given(st.sampled_from([1, 2, 3]).flatmap(lambda n: st.tuples(st.just(n), subtorus(n), subtorus(n))))
def test_intersect_symmetry_and_oracle(data):
    n, (r1, c1), (r2, c2) = data
    p = [None, Presentation(("x",)), F2, F3][n]
    a = TranslatedSubtorus.build(p, r1, c1)
    b = TranslatedSubtorus.build(p, r2, c2)
    ab, ba = intersect(a, b), intersect(b, a)
    assert ab.dim == ba.dim
    assert set(ab.points) == set(ba.points)
    oa, ob = OracleSubtorus(r1, c1, n), OracleSubtorus(r2, c2, n)
    for k in product(range(6), repeat=n):
        x = [Fraction(v, 6) for v in k]
        on_both = oa.contains(x) and ob.contains(x)
        assert on_both == (contains(a, x) and contains(b, x))
        if ab.dim == 0:
            assert on_both == (tuple(x) in set(ab.points))
        elif ab.dim > 0:
            assert on_both == any(contains(pc, x) for pc in ab.pieces)
