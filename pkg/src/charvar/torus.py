"""Torsion-translated subtori of a character torus, in logarithmic coordinates.

A point of the character torus is stored through its generator values
x_i = exp(2 pi i p_i); for torsion points p is a rational vector mod 1.  A
translated subtorus is rho * S with S = { s^E : s in (C*)^d }, i.e. the
points with log-coordinates rho + E w (mod Z^n) for complex w.  The image of
s -> s^E is always the connected subtorus of the saturated lattice, so E is
replaced by the Hermite basis of its saturation when the object is built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Sequence

from .intmat import (IntegerMatrix, integer_solve_mod, saturate_columns,
                     smith_normal_form, unimodular_inverse)
from .presentation import Character, CharvarError, Presentation, TorusComponent, torus_components

__all__ = [
    "TranslatedSubtorus",
    "IntersectionResult",
    "AmbientMismatch",
    "shadow",
    "subtorus_equal",
    "same_subtorus",
    "intersect",
    "contains",
    "torsion_points_of_dim0",
    "point_order",
    "point_character",
    "component_subtorus",
]

Point = tuple[Fraction, ...]


class AmbientMismatch(CharvarError):
    pass


def _reduce_point(p: Sequence) -> Point:
    return tuple(Fraction(x) % 1 for x in p)


def point_order(p: Sequence[Fraction]) -> int:
    return lcm(1, *(Fraction(x).denominator for x in p))


@dataclass(frozen=True)
class TranslatedSubtorus:
    presentation: Presentation = field(repr=False)
    translation: Point
    exponents: IntegerMatrix

    def __post_init__(self):
        p = self.presentation
        n = p.ngens
        rho = _reduce_point(self.translation)
        if len(rho) != n:
            raise CharvarError(f"translation has {len(rho)} entries, the torus has {n} coordinates")
        e = self.exponents
        if not isinstance(e, IntegerMatrix):
            e = IntegerMatrix.from_rows(e, len(e[0]) if len(e) else 0)
        if e.nrows != n:
            raise CharvarError(f"exponent matrix has {e.nrows} rows, expected {n}")
        if e.ncols and e.rank() != e.ncols:
            raise CharvarError("exponent matrix columns are not independent")
        a = p.relation_matrix
        if e.ncols and p.nrels and not (a @ e).is_zero():
            raise CharvarError("subtorus directions violate the relators")
        for k, v in enumerate(a.apply(rho)):
            if Fraction(v).denominator != 1:
                raise CharvarError(f"translation violates relator {k}")
        sat = saturate_columns(e) if e.ncols else IntegerMatrix.zeros(n, 0)
        object.__setattr__(self, "translation", rho)
        object.__setattr__(self, "exponents", sat)

    @classmethod
    def build(cls, p: Presentation, translation: Sequence, columns: Sequence[Sequence[int]] = ()):
        """Constructor taking the exponent matrix by columns."""
        e = IntegerMatrix.from_columns(columns, p.ngens)
        return cls(p, tuple(Fraction(x) for x in translation), e)

    @classmethod
    def point(cls, p: Presentation, translation: Sequence) -> "TranslatedSubtorus":
        return cls(p, tuple(Fraction(x) for x in translation), IntegerMatrix.zeros(p.ngens, 0))

    @property
    def dim(self) -> int:
        return self.exponents.ncols

    @property
    def n(self) -> int:
        return self.presentation.ngens

    def point_at(self, w: Sequence) -> Point:
        """Log-coordinates of the point with rational parameters w."""
        return _reduce_point(r + x for r, x in zip(self.translation, self.exponents.apply(w)))

    def generic_character(self) -> Character:
        rows = tuple(tuple(r) for r in self.exponents.rows)
        return Character(self.presentation, self.translation, rows, self.dim)

    def canonical_translation(self) -> Point:
        """A translation depending only on the set rho * S."""
        if not self.dim:
            return self.translation
        u, d, v = smith_normal_form(self.exponents)
        c = u.apply(self.translation)
        # in Smith coordinates the subtorus occupies the first dim rows
        reduced = [Fraction(0)] * self.dim + [x % 1 for x in c[self.dim:]]
        back = unimodular_inverse(u).apply(reduced)
        return _reduce_point(back)

    def key(self) -> tuple:
        return (self.canonical_translation(), self.exponents.rows)

    def __str__(self):
        rho = ", ".join(str(x) for x in self.translation)
        cols = "; ".join(",".join(str(x) for x in c) for c in self.exponents.columns())
        return f"[{rho}] + <{cols}>"


def _same_ambient(a: TranslatedSubtorus, b) -> None:
    pb = b.presentation if isinstance(b, TranslatedSubtorus) else b
    if a.presentation != pb:
        raise AmbientMismatch("subtori live in different character tori")


def shadow(v: TranslatedSubtorus) -> TranslatedSubtorus:
    return TranslatedSubtorus(v.presentation, (Fraction(0),) * v.n, v.exponents)


def subtorus_equal(a: TranslatedSubtorus, b: TranslatedSubtorus) -> bool:
    """Equality of the shadows (the connected subtori through 1)."""
    _same_ambient(a, b)
    return a.exponents == b.exponents


def same_subtorus(a: TranslatedSubtorus, b: TranslatedSubtorus) -> bool:
    """Equality of the translated subtori as point sets."""
    _same_ambient(a, b)
    return a.exponents == b.exponents and contains(a, b.translation)


def contains(v: TranslatedSubtorus, p: Sequence) -> bool:
    """Is the torsion point with log-coordinates p on v?"""
    if isinstance(p, Character):
        _same_ambient(v, p.presentation)
        if not p.is_torsion:
            raise CharvarError("containment is decided for torsion points only")
        p = p.roots
    if len(p) != v.n:
        raise AmbientMismatch(f"point has {len(p)} coordinates, torus has {v.n}")
    diff = [Fraction(x) - r for x, r in zip(p, v.translation)]
    if not v.dim:
        return all(x.denominator == 1 for x in diff)
    return integer_solve_mod(v.exponents, diff) is not None


@dataclass(frozen=True)
class IntersectionResult:
    """dim is -1 for an empty intersection; points are listed only when dim == 0."""

    dim: int
    points: tuple[Point, ...] = ()
    pieces: tuple[TranslatedSubtorus, ...] = ()

    @property
    def empty(self) -> bool:
        return self.dim < 0


def intersect(a: TranslatedSubtorus, b: TranslatedSubtorus) -> IntersectionResult:
    """Exact intersection via the Smith form of [E_a | -E_b].

    Solving rho_a + E_a u = rho_b + E_b v (mod Z^n): with U M V = D and
    w = V y, rows i < r give y_i = (c_i + z_i) / d_i for z_i mod d_i, rows
    i >= r need c_i integral, and the remaining y are free.
    """
    _same_ambient(a, b)
    n, da = a.n, a.dim
    m = a.exponents.hstack(-b.exponents)
    rhs = [y - x for x, y in zip(a.translation, b.translation)]
    if m.ncols == 0:
        ok = all(Fraction(x).denominator == 1 for x in rhs)
        return IntersectionResult(0, (a.translation,), (a,)) if ok else IntersectionResult(-1)
    sol = integer_solve_mod(m, rhs)
    if sol is None:
        return IntersectionResult(-1)
    v, d, c, r = sol
    k = m.ncols
    # directions: columns r.. of V restricted to the u-block, mapped by E_a
    free_dirs = [[v[i, j] for i in range(da)] for j in range(r, k)]
    dir_vectors = [a.exponents.apply(f) for f in free_dirs]
    dmat = IntegerMatrix.from_columns(dir_vectors, n) if dir_vectors else IntegerMatrix.zeros(n, 0)
    if dmat.ncols:
        sat = saturate_columns(dmat)
        cols = [col for col in sat.columns() if any(col)]
        dmat = IntegerMatrix.from_columns(cols, n) if cols else IntegerMatrix.zeros(n, 0)
    dim = dmat.ncols
    diag = [d[i, i] for i in range(r)]
    found: list[Point] = []
    for z in product(*(range(x) for x in diag)):
        y = [(c[i] + z[i]) / diag[i] for i in range(r)] + [Fraction(0)] * (k - r)
        w = v.apply(y)
        found.append(a.point_at(w[:da]))
    if dim == 0:
        pts = sorted(set(found))
        pieces = tuple(TranslatedSubtorus.point(a.presentation, p) for p in pts)
        return IntersectionResult(0, tuple(pts), pieces)
    pieces: list[TranslatedSubtorus] = []
    for p in found:
        piece = TranslatedSubtorus(a.presentation, p, dmat)
        if not any(contains(q, p) for q in pieces):
            pieces.append(piece)
    pieces.sort(key=lambda t: t.canonical_translation())
    return IntersectionResult(dim, (), tuple(pieces))


def torsion_points_of_dim0(res: IntersectionResult) -> list[tuple[Point, int]]:
    if res.dim > 0:
        raise CharvarError("intersection is positive-dimensional")
    return [(p, point_order(p)) for p in res.points]


def point_character(p: Presentation, point: Sequence) -> Character:
    """Character with generator values exp(2 pi i point_i), checked against the relators."""
    from .presentation import character_from_assignment

    return character_from_assignment(p, [Fraction(x) for x in point])


def component_subtorus(p: Presentation, comp: TorusComponent | None = None) -> TranslatedSubtorus:
    """The connected component of the character torus through ``comp``'s representative."""
    ab = p.abelianization
    if comp is None:
        comp = torus_components(ab)[0]
    return TranslatedSubtorus(p, comp.roots, ab.free_part())
