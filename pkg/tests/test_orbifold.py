from fractions import Fraction

import pytest

from charvar.fox import dim_h1
from charvar.orbifold import (
    ComponentLabel,
    OrbifoldSurface,
    component_generic_dim,
    enumerate_labels,
    generic_character,
    label_of_character,
    multiplicity_gcd,
    orbifold_dim_h1,
    puncture_reduction,
    representative_character,
    sigma_k,
)
from charvar.presentation import CharvarError, character_from_assignment


def test_presentations():
    o = OrbifoldSurface.closed(1, (2, 2))
    p = o.presentation
    assert p.generators == ("a1", "b1", "mu1", "mu2")
    assert p.format(p.relators[0]) == "a1 b1 a1^-1 b1^-1 mu2^-1 mu1^-1"
    assert OrbifoldSurface.free(0, (2, 3)).presentation.abelianization.invariants == (6,)
    assert OrbifoldSurface.free(2).presentation.abelianization.rank == 2


def test_invalid_orbifolds():
    with pytest.raises(CharvarError):
        OrbifoldSurface.free(1, (1, 3))
    with pytest.raises(CharvarError):
        OrbifoldSurface.closed(-1)
    with pytest.raises(CharvarError):
        ComponentLabel(OrbifoldSurface.closed(0, (3, 3, 3)), (1, 1, 0))


def test_sigma_examples():
    s = sigma_k(OrbifoldSurface.closed(0, (3, 3, 3)), 1)
    assert not s.contains_trivial and len(s.labels) == 2
    s = sigma_k(OrbifoldSurface.free(2), 2)
    assert s.contains_trivial and not s.labels
    assert sigma_k(OrbifoldSurface.closed(1), 3).is_empty()
    s = sigma_k(OrbifoldSurface.free(0, (2, 3)), 1)
    assert [lab.roots for lab in s.labels] == [(Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 2), Fraction(2, 3))]


@pytest.mark.parametrize("n,count", [(3, 2), (4, 6), (5, 12), (6, 20)])
def test_fermat_label_counts(n, count):
    o = OrbifoldSurface.closed(0, (n, n, n))
    s1 = sigma_k(o, 1)
    assert len(s1.labels) == count == (n - 1) * (n - 2)
    assert all(lab.length == 3 for lab in s1.labels)
    assert sigma_k(o, 2).is_empty()


def test_closed_forms_against_fox_engine():
    cases = [OrbifoldSurface.free(1, (2, 4)), OrbifoldSurface.closed(1, (3, 3)), OrbifoldSurface.closed(0, (2, 3, 6)),
             OrbifoldSurface.free(2, (5,)), OrbifoldSurface.closed(2)]
    for o in cases:
        p = o.presentation
        for lab in enumerate_labels(o):
            rep = representative_character(o, lab)
            assert dim_h1(p, rep) == orbifold_dim_h1(o, lab, rep.is_trivial())
            assert dim_h1(p, generic_character(o, lab)) == component_generic_dim(o, lab)


def test_label_roundtrip_and_inverse():
    o = OrbifoldSurface.closed(0, (2, 4, 4))
    for lab in enumerate_labels(o):
        chi = representative_character(o, lab)
        assert label_of_character(o, chi) == lab
        assert lab.inverse().inverse() == lab
    chi = character_from_assignment(o.presentation, ["1/2", "1/4", "1/4"])
    assert label_of_character(o, chi).exponents == (1, 1, 1)


def test_puncture_reduction():
    o = OrbifoldSurface.closed(1, (2, 3, 6))
    lab = ComponentLabel(o, (1, 1, 1))
    y = puncture_reduction(o, lab)
    assert y.removed == 3 and y.euler_characteristic == -3 and y.dim_h1 == 3
    assert y.dim_h1 == orbifold_dim_h1(o, lab, False)


def test_multiplicity_gcd():
    assert multiplicity_gcd([[2, 4], [3], [1, 5]]) == (2, 3)
    with pytest.raises(CharvarError):
        multiplicity_gcd([[]])
