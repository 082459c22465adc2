from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from charvar.cyclotomic import cyclo_root
from charvar.laurent import LaurentPolynomial
from charvar.presentation import (
    GENERIC,
    Presentation,
    PresentationError,
    RelatorViolation,
    character_from_assignment,
    character_order,
    format_word,
    free_reduce,
    invert_word,
    parse_word,
    torus_components,
    trivial_character,
)
from strategies import presentations, words


def test_parse_and_format():
    g = ["a", "b", "mu1"]
    assert parse_word("a b a^-1 b^-1", g) == ((0, 1), (1, 1), (0, -1), (1, -1))
    assert parse_word("mu1^3", g) == ((2, 1),) * 3
    assert parse_word("(a b)^2", g) == ((0, 1), (1, 1), (0, 1), (1, 1))
    assert parse_word("(a b)^-1", g) == ((1, -1), (0, -1))
    assert parse_word("a a^-1", g) == ()
    assert parse_word("1", g) == ()
    assert format_word(parse_word("a^2 b^-1", g), g) == "a^2 b^-1"


@pytest.mark.parametrize("bad", ["a c", "a^", "(a b", "a b)", "a^x"])
def test_parse_errors(bad):
    with pytest.raises(PresentationError):
        parse_word(bad, ["a", "b"])


def test_duplicate_generators():
    with pytest.raises(PresentationError):
        Presentation(("a", "a"))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), words(n, 12))))
def test_word_roundtrip(nw):
    n, w = nw
    names = [f"g{i}" for i in range(n)]
    w = free_reduce(w)
    assert parse_word(format_word(w, names), names) == w
    assert free_reduce(w + invert_word(w)) == ()


@pytest.mark.parametrize("gens,rels,rank,tors", [
    (["a", "b"], [], 2, ()),
    (["mu1", "mu2"], ["mu1^2", "mu2^3"], 0, (6,)),
    (["a", "b", "c"], ["a b a^-1 b^-1", "(a c)^2 (c a)^-2", "(b c)^2 (c b)^-2"], 3, ()),
    (["x", "y"], ["x^2 y^-5"], 1, ()),
    (["a", "b"], ["a^4", "b^6", "a b a^-1 b^-1"], 0, (2, 12)),
])
def test_abelianization(gens, rels, rank, tors):
    ab = Presentation.from_strings(gens, rels).abelianization
    assert ab.rank == rank and ab.invariants == tors
    assert len(torus_components(ab)) == ab.torsion_order


@given(presentations())
def test_abelianization_class_map(p):
    ab = p.abelianization
    # every relator maps to zero in Z^r + torsion
    for row in p.relation_matrix.rows:
        img = [sum(row[i] * ab.class_map[i, j] for i in range(p.ngens)) for j in range(ab.class_map.ncols)]
        assert all(x == 0 for x in img[:ab.rank])
        assert all(x % d == 0 for x, d in zip(img[ab.rank:], ab.invariants))


def test_torus_components_are_characters():
    p = Presentation.from_strings(["a", "b"], ["a^4", "b^6", "a b a^-1 b^-1"])
    for comp in torus_components(p.abelianization):
        character_from_assignment(p, list(comp.roots))


def test_character_forms_and_violation():
    p = Presentation.from_strings(["mu1", "mu2"], ["mu1^2", "mu2^3"])
    chi = character_from_assignment(p, ["1/2", cyclo_root(1, 3)])
    assert chi.roots == (Fraction(1, 2), Fraction(1, 3))
    assert character_order(chi) == 6
    with pytest.raises(RelatorViolation):
        character_from_assignment(p, ["1/3", "0"])
    q = Presentation.from_strings(["a", "b"], [])
    gen = character_from_assignment(q, [LaurentPolynomial.variable(0, 1), (Fraction(1, 2), (0,))])
    assert character_order(gen) is GENERIC
    assert not gen.is_torsion
    assert trivial_character(q).is_trivial()


def test_inverse_and_conjugate():
    p = Presentation.from_strings(["a", "b"], [])
    chi = character_from_assignment(p, ["1/5", "2/3"])
    assert chi.inverse().roots == (Fraction(4, 5), Fraction(1, 3))
    assert chi.conjugate() == chi.inverse()
