"""Orbifold surface groups and their characteristic varieties in closed form.

Non-compact case: F^r_m = < a_1..a_r, mu_1..mu_n | mu_j^{m_j} >.
Compact case:     G^g_m = < a_i, b_i, mu_j | prod [a_i, b_i] = prod mu_j, mu_j^{m_j} >.

A connected component of the character torus is labelled by the values
lambda_j = exp(2 pi i a_j / m_j) on the meridians (with sum a_j / m_j an
integer in the compact case); the free generators range over C*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd
from typing import Sequence

from .cyclotomic import CyclotomicNumber
from .presentation import Character, CharvarError, Presentation

__all__ = [
    "OrbifoldSurface",
    "ComponentLabel",
    "SigmaStratum",
    "PunctureReduction",
    "orbifold_presentation",
    "orbifold_dim_h1",
    "component_generic_dim",
    "enumerate_labels",
    "sigma_k",
    "puncture_reduction",
    "multiplicity_gcd",
    "representative_character",
    "generic_character",
    "label_of_character",
]


@dataclass(frozen=True)
class OrbifoldSurface:
    """``g`` is the genus when compact and the free rank otherwise."""

    compact: bool
    g: int
    multiplicities: tuple[int, ...] = ()

    def __post_init__(self):
        if self.g < 0:
            raise CharvarError("genus / rank must be nonnegative")
        m = tuple(int(x) for x in self.multiplicities)
        if any(x < 2 for x in m):
            raise CharvarError(f"orbifold multiplicities must be >= 2, got {m}")
        object.__setattr__(self, "multiplicities", m)

    @classmethod
    def free(cls, rank: int, multiplicities: Sequence[int] = ()) -> "OrbifoldSurface":
        return cls(False, rank, tuple(multiplicities))

    @classmethod
    def closed(cls, genus: int, multiplicities: Sequence[int] = ()) -> "OrbifoldSurface":
        return cls(True, genus, tuple(multiplicities))

    @property
    def n(self) -> int:
        return len(self.multiplicities)

    @property
    def degenerate(self) -> bool:
        """Compact with 2g + n < 2: the orbifold group is trivial."""
        return self.compact and 2 * self.g + self.n < 2

    @property
    def free_rank(self) -> int:
        """Number of free (non-meridian) generators: r, or 2g when compact."""
        return 2 * self.g if self.compact else self.g

    @property
    def betti(self) -> int:
        return self.free_rank

    @property
    def underlying_euler(self) -> int:
        return 2 - 2 * self.g if self.compact else 1 - self.g

    @property
    def euler_characteristic(self) -> Fraction:
        """Orbifold Euler characteristic (diagnostic only)."""
        return self.underlying_euler - sum(1 - Fraction(1, m) for m in self.multiplicities)

    @cached_property
    def presentation(self) -> Presentation:
        return orbifold_presentation(self)

    def __str__(self):
        kind = "G" if self.compact else "F"
        return f"{kind}^{self.g}_{self.multiplicities}"


@dataclass(frozen=True)
class ComponentLabel:
    """Meridian exponents a_j mod m_j (lambda_j = exp(2 pi i a_j / m_j))."""

    orbifold: OrbifoldSurface
    exponents: tuple[int, ...]

    def __post_init__(self):
        ms = self.orbifold.multiplicities
        if len(self.exponents) != len(ms):
            raise CharvarError("label length differs from the number of orbifold points")
        ex = tuple(int(a) % m for a, m in zip(self.exponents, ms))
        object.__setattr__(self, "exponents", ex)
        if self.orbifold.compact and sum(Fraction(a, m) for a, m in zip(ex, ms)).denominator != 1:
            raise CharvarError(f"compact label {ex} does not have product 1")

    @property
    def roots(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, m) for a, m in zip(self.exponents, self.orbifold.multiplicities))

    def values(self) -> tuple[CyclotomicNumber, ...]:
        return tuple(CyclotomicNumber.root(q) for q in self.roots)

    @property
    def length(self) -> int:
        return sum(1 for a in self.exponents if a)

    def is_trivial(self) -> bool:
        return self.length == 0

    def inverse(self) -> "ComponentLabel":
        return ComponentLabel(self.orbifold, tuple(-a for a in self.exponents))

    conjugate = inverse

    def __str__(self):
        return "(" + ", ".join(f"e({q})" if q else "1" for q in self.roots) + ")"


@dataclass(frozen=True)
class SigmaStratum:
    depth: int
    contains_trivial: bool
    labels: tuple[ComponentLabel, ...]

    def is_empty(self) -> bool:
        return not self.contains_trivial and not self.labels


def orbifold_presentation(o: OrbifoldSurface) -> Presentation:
    if o.compact:
        gens = [x for i in range(1, o.g + 1) for x in (f"a{i}", f"b{i}")]
    else:
        gens = [f"a{i}" for i in range(1, o.g + 1)]
    nfree = len(gens)
    gens += [f"mu{j}" for j in range(1, o.n + 1)]
    rels = []
    if o.compact:
        surface = []
        for i in range(o.g):
            a, b = 2 * i, 2 * i + 1
            surface += [(a, 1), (b, 1), (a, -1), (b, -1)]
        for j in reversed(range(o.n)):
            surface.append((nfree + j, -1))
        rels.append(tuple(surface))
    for j, m in enumerate(o.multiplicities):
        rels.append(((nfree + j, 1),) * m)
    return Presentation(tuple(gens), tuple(rels), str(o))


def enumerate_labels(o: OrbifoldSurface) -> list[ComponentLabel]:
    out = []
    for ex in product(*(range(m) for m in o.multiplicities)):
        if o.compact and sum(Fraction(a, m) for a, m in zip(ex, o.multiplicities)).denominator != 1:
            continue
        out.append(ComponentLabel(o, ex))
    return out


def orbifold_dim_h1(o: OrbifoldSurface, label: ComponentLabel, trivial: bool) -> int:
    """Closed-form dim H^1 on the component of ``label``.

    ``trivial`` selects the trivial character itself (which requires the
    trivial label); otherwise the value is the one taken by every
    nontrivial character of the component.
    """
    ell = label.length
    if trivial:
        if ell:
            raise CharvarError("the trivial character has the trivial label")
        return o.betti
    if o.compact:
        assert ell != 1, "a compact label cannot have exactly one nontrivial coordinate"
        return max(0, 2 * o.g + ell - 2)
    return max(0, o.g + ell - 1)


def component_generic_dim(o: OrbifoldSurface, label: ComponentLabel) -> int:
    """dim H^1 at the generic point of the component.

    The identity component of an orbifold with no free generators is the
    single point 1, so its generic point is the trivial character.
    """
    if label.is_trivial() and o.free_rank == 0:
        return orbifold_dim_h1(o, label, True)
    return orbifold_dim_h1(o, label, False)


def sigma_k(o: OrbifoldSurface, k: int) -> SigmaStratum:
    if k < 1:
        raise ValueError("depth must be positive")
    labels = tuple(lab for lab in enumerate_labels(o) if component_generic_dim(o, lab) >= k)
    return SigmaStratum(k, k <= o.betti, labels)


def representative_character(o: OrbifoldSurface, label: ComponentLabel) -> Character:
    """The torsion point of the component with all free generators sent to 1."""
    p = o.presentation
    roots = (Fraction(0),) * o.free_rank + label.roots
    return Character(p, roots, ((),) * p.ngens, 0)


def generic_character(o: OrbifoldSurface, label: ComponentLabel) -> Character:
    """The component's generic point: free generator i goes to the variable s_i."""
    p = o.presentation
    d = o.free_rank
    monos = tuple(tuple(int(i == j) for j in range(d)) for i in range(d)) + ((0,) * d,) * o.n
    roots = (Fraction(0),) * d + label.roots
    return Character(p, roots, monos, d)


def label_of_character(o: OrbifoldSurface, chi: Character) -> ComponentLabel:
    d = o.free_rank
    ex = []
    for q, m in zip(chi.roots[d:], o.multiplicities):
        a = q * m
        if a.denominator != 1:
            raise CharvarError(f"meridian value e({q}) is not an {m}-th root of unity")
        ex.append(int(a))
    return ComponentLabel(o, tuple(ex))


@dataclass(frozen=True)
class PunctureReduction:
    """The surface Y obtained by deleting the orbifold points where lambda is nontrivial."""

    compact: bool
    genus_or_rank: int
    removed: int
    euler_characteristic: int
    dim_h1: int | None


def puncture_reduction(o: OrbifoldSurface, label: ComponentLabel) -> PunctureReduction:
    ell = label.length
    chi_y = o.underlying_euler - ell
    if ell == 0:
        y = PunctureReduction(o.compact, o.g, 0, chi_y, None)
        if o.free_rank:
            y = PunctureReduction(o.compact, o.g, 0, chi_y, -chi_y)
        return y
    # a punctured surface has free fundamental group of rank 1 - chi(Y)
    dim = -chi_y
    assert dim == orbifold_dim_h1(o, label, False), "puncture reduction disagrees with the closed form"
    return PunctureReduction(False, 1 - chi_y, ell, chi_y, dim)


def multiplicity_gcd(fibers: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Orbifold multiplicities from the component multiplicities of special fibres."""
    out = []
    for comps in fibers:
        comps = list(comps)
        if not comps or any(c < 1 for c in comps):
            raise CharvarError("each fibre needs at least one component multiplicity >= 1")
        g = 0
        for c in comps:
            g = gcd(g, c)
        if g > 1:
            out.append(g)
    return tuple(out)
