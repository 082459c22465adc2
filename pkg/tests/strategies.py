"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from charvar.presentation import Presentation


@st.composite
def words(draw, ngens, max_len=8):
    letters = draw(st.lists(st.tuples(st.integers(0, ngens - 1), st.sampled_from([1, -1])),
                            min_size=0, max_size=max_len))
    return tuple(letters)


@st.composite
def presentations(draw, max_gens=3, max_rels=3, max_len=8):
    n = draw(st.integers(1, max_gens))
    rels = draw(st.lists(words(n, max_len), min_size=0, max_size=max_rels))
    names = tuple(f"x{i + 1}" for i in range(n))
    return Presentation(names, tuple(rels))


def commutator(i, j):
    return ((i, 1), (j, 1), (i, -1), (j, -1))
