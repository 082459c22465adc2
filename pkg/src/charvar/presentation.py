"""Finitely presented groups, abelianization and characters.

A word is a tuple of letters ``(generator index, sign)`` with sign +1 or -1.
Characters are stored in logarithmic form: for each generator a rational
root exponent q (value exp(2 pi i q)) and an integer exponent vector over
the d generic parameters, so the value of generator i is
``exp(2 pi i q_i) * s^{E_i}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .cyclotomic import CyclotomicNumber
from .intmat import IntegerMatrix, smith_normal_form
from .laurent import LaurentPolynomial

__all__ = [
    "Word",
    "Presentation",
    "AbelianizationData",
    "TorusComponent",
    "Character",
    "CharvarError",
    "PresentationError",
    "RelatorViolation",
    "free_reduce",
    "invert_word",
    "parse_word",
    "format_word",
    "abelianize",
    "torus_components",
    "character_from_assignment",
    "character_order",
    "trivial_character",
    "GENERIC",
]

Letter = tuple[int, int]
Word = tuple[Letter, ...]

GENERIC = "generic"


class CharvarError(Exception):
    """Base class for semantic errors raised by this package."""


class PresentationError(CharvarError, ValueError):
    pass


class RelatorViolation(CharvarError, ValueError):
    def __init__(self, index: int, relator: Word, value, presentation=None):
        self.index = index
        self.relator = relator
        self.value = value
        text = format_word(relator, presentation.generators) if presentation else str(relator)
        super().__init__(f"relator {index} ({text}) evaluates to {value}, not 1")


def free_reduce(letters: Iterable[Letter], ngens: int | None = None) -> Word:
    """Freely reduce a letter sequence (stack-based, linear time)."""
    out: list[Letter] = []
    for g, s in letters:
        if s not in (1, -1):
            raise PresentationError(f"letter sign must be +1 or -1, got {s}")
        if g < 0 or (ngens is not None and g >= ngens):
            raise PresentationError(f"invalid generator index {g}")
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def invert_word(w: Word) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


def power_word(w: Word, k: int) -> Word:
    base = w if k >= 0 else invert_word(w)
    return free_reduce(base * abs(k))


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)(?:\s*\^\s*(-?\d+))?\s*")


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """Parse letter-exponent syntax such as ``a b a^-1 b^-1`` or ``mu1^2``.

    Parenthesised groups with an exponent, e.g. ``(a c)^2``, are accepted.
    An empty string or ``1`` is the empty word.
    """
    index = {g: i for i, g in enumerate(generators)}
    text = text.strip()
    if text in ("", "1"):
        return ()
    pos = 0

    def parse_seq(end_char):
        nonlocal pos
        letters: list[Letter] = []
        while pos < len(text):
            if text[pos].isspace() or text[pos] == "*":
                pos += 1
                continue
            if text[pos] == ")":
                if end_char != ")":
                    raise PresentationError(f"unbalanced ')' at {pos} in {text!r}")
                return letters
            if text[pos] == "(":
                pos += 1
                inner = parse_seq(")")
                if pos >= len(text) or text[pos] != ")":
                    raise PresentationError(f"missing ')' in {text!r}")
                pos += 1
                k = _parse_exponent()
                letters.extend(power_word(free_reduce(inner), k))
                continue
            m = _TOKEN.match(text, pos)
            if not m:
                raise PresentationError(f"cannot parse {text[pos:]!r} in {text!r}")
            name, exp = m.group(1), m.group(2)
            if name not in index:
                raise PresentationError(f"unknown generator {name!r} in {text!r}")
            pos = m.end()
            k = int(exp) if exp is not None else 1
            g = index[name]
            letters.extend([(g, 1 if k > 0 else -1)] * abs(k))
        if end_char == ")":
            raise PresentationError(f"missing ')' in {text!r}")
        return letters

    def _parse_exponent():
        nonlocal pos
        m = re.compile(r"\s*\^\s*(-?\d+)").match(text, pos)
        if m:
            pos = m.end()
            return int(m.group(1))
        return 1

    return free_reduce(parse_seq(None))


def format_word(w: Word, generators: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        g, s = w[i]
        j = i
        while j < len(w) and w[j] == (g, s):
            j += 1
        k = (j - i) * s
        parts.append(generators[g] if k == 1 else f"{generators[g]}^{k}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise PresentationError("duplicate generator names")
        rels = []
        for r in self.relators:
            rels.append(free_reduce(r, n))
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def from_strings(cls, generators: Sequence[str], relators: Sequence[str], name: str = ""):
        gens = tuple(generators)
        return cls(gens, tuple(parse_word(r, gens) for r in relators), name)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def nrels(self) -> int:
        return len(self.relators)

    @cached_property
    def relation_matrix(self) -> IntegerMatrix:
        """s x n matrix of relator exponent sums."""
        rows = []
        for r in self.relators:
            v = [0] * self.ngens
            for g, s in r:
                v[g] += s
            rows.append(v)
        return IntegerMatrix.from_rows(rows, self.ngens)

    @cached_property
    def abelianization(self) -> "AbelianizationData":
        return abelianize(self)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, w: Word) -> str:
        return format_word(w, self.generators)

    def permuted(self, perm: Sequence[int]) -> "Presentation":
        """Relabel: new generator k is old generator perm[k]."""
        inv = {old: new for new, old in enumerate(perm)}
        gens = tuple(self.generators[p] for p in perm)
        rels = tuple(tuple((inv[g], s) for g, s in r) for r in self.relators)
        return Presentation(gens, rels, self.name)

    def __str__(self):
        rels = ", ".join(self.format(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True)
class AbelianizationData:
    """H_1 = Z^r + Z/d_1 + ... + Z/d_t with an explicit Smith basis.

    ``class_map`` is n x (r + t): row i gives the class of generator i, the
    first r columns in the free part and the last t columns reduced mod d_j.
    ``u`` and ``v`` are the unimodular Smith witnesses of the relation matrix
    A (u @ A @ v diagonal).
    """
    rank: int
    invariants: tuple[int, ...]
    class_map: IntegerMatrix
    u: IntegerMatrix
    v: IntegerMatrix

    @property
    def torsion_order(self) -> int:
        return reduce(lambda a, b: a * b, self.invariants, 1)

    @property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.invariants, 1)

    def free_part(self) -> IntegerMatrix:
        return self.class_map.select_columns(list(range(self.rank)))


def abelianize(p: Presentation) -> AbelianizationData:
    a = p.relation_matrix
    n = p.ngens
    if p.nrels == 0:
        a = IntegerMatrix.zeros(0, n)
    u, d, v = smith_normal_form(a)
    diag = [d[i, i] for i in range(min(d.shape))]
    rk = sum(1 for x in diag if x)
    # generator j has class e_j V in Z^n / rowspace(D)
    tors_idx = [i for i in range(rk) if diag[i] > 1]
    free_idx = list(range(rk, n))
    invariants = tuple(diag[i] for i in tors_idx)
    rows = []
    for j in range(n):
        vrow = v.rows[j]
        rows.append([vrow[k] for k in free_idx] + [vrow[k] % diag[k] for k in tors_idx])
    cmap = IntegerMatrix.from_rows(rows, len(free_idx) + len(tors_idx))
    return AbelianizationData(len(free_idx), invariants, cmap, u, v)


@dataclass(frozen=True)
class TorusComponent:
    """A connected component of the character torus.

    ``label`` lists a_j mod d_j: the component's characters send the j-th
    torsion basis class to exp(2 pi i a_j / d_j).  ``roots`` is the
    distinguished torsion representative (free coordinates set to 1).
    """
    label: tuple[int, ...]
    roots: tuple[Fraction, ...]


def torus_components(ab: AbelianizationData) -> list[TorusComponent]:
    r = ab.rank
    out = []
    for label in product(*(range(d) for d in ab.invariants)):
        roots = []
        for row in ab.class_map.rows:
            q = sum((Fraction(a * row[r + j], d) for j, (a, d) in enumerate(zip(label, ab.invariants))),
                    Fraction(0))
            roots.append(q % 1)
        out.append(TorusComponent(tuple(label), tuple(roots)))
    return out


@dataclass(frozen=True)
class Character:
    """A character of a presentation in logarithmic form (see module docs)."""
    presentation: Presentation = field(compare=False, repr=False)
    roots: tuple[Fraction, ...]
    monomials: tuple[tuple[int, ...], ...]
    nparams: int = 0

    @property
    def is_torsion(self) -> bool:
        return not any(any(m) for m in self.monomials)

    @property
    def conductor(self) -> int:
        n = 1
        for q in self.roots:
            n = n * q.denominator // gcd(n, q.denominator)
        return n

    def is_trivial(self) -> bool:
        return self.is_torsion and not any(self.roots)

    def value(self, i: int) -> LaurentPolynomial:
        return LaurentPolynomial.monomial(self.monomials[i], CyclotomicNumber.root(self.roots[i]))

    def root_value(self, i: int) -> CyclotomicNumber:
        return CyclotomicNumber.root(self.roots[i])

    def evaluate_word(self, w: Word) -> tuple[Fraction, tuple[int, ...]]:
        q = Fraction(0)
        e = [0] * self.nparams
        for g, s in w:
            q += s * self.roots[g]
            m = self.monomials[g]
            for k in range(self.nparams):
                e[k] += s * m[k]
        return q % 1, tuple(e)

    def inverse(self) -> "Character":
        return Character(self.presentation, tuple((-q) % 1 for q in self.roots),
                         tuple(tuple(-x for x in m) for m in self.monomials), self.nparams)

    def conjugate(self) -> "Character":
        """Complex conjugate; generic parameters are taken to be unitary."""
        return self.inverse()

    def __str__(self):
        parts = []
        for i, g in enumerate(self.presentation.generators):
            q = self.roots[i]
            m = self.monomials[i]
            mono = "*".join(f"s{k}" + (f"^{e}" if e != 1 else "") for k, e in enumerate(m) if e)
            root = f"e({q})" if q else ""
            val = "*".join(x for x in (root, mono) if x) or "1"
            parts.append(f"{g}->{val}")
        return "(" + ", ".join(parts) + ")"


def _value_to_log(v, nparams: int | None):
    """Accept a value in one of the supported forms; return (root, monomial)."""
    if isinstance(v, tuple) and len(v) == 2:
        q, m = v
        return Fraction(q) % 1, tuple(int(x) for x in m)
    if isinstance(v, (Fraction, int)):
        return Fraction(v) % 1, None
    if isinstance(v, str):
        return Fraction(v) % 1, None
    if isinstance(v, CyclotomicNumber):
        q = v.root_exponent()
        if q is None:
            raise CharvarError(f"value {v} is not a root of unity")
        return q, None
    if isinstance(v, LaurentPolynomial):
        if not v.is_monomial():
            raise CharvarError(f"value {v} is not a root of unity times a monomial")
        (e, c), = v.terms.items()
        q = c.root_exponent()
        if q is None:
            raise CharvarError(f"coefficient {c} is not a root of unity")
        return q, e
    raise CharvarError(f"unsupported character value {v!r}")


def character_from_assignment(p: Presentation, values: Sequence, nparams: int | None = None) -> Character:
    """Build a character from one value per generator and check every relator.

    Values may be rational root exponents (``Fraction`` or ``"1/6"``, meaning
    exp(2 pi i / 6)), roots of unity as ``CyclotomicNumber``, monomials as
    ``LaurentPolynomial`` or ``(root exponent, exponent tuple)`` pairs.
    """
    if len(values) != p.ngens:
        raise CharvarError(f"expected {p.ngens} values, got {len(values)}")
    logs = [_value_to_log(v, nparams) for v in values]
    d = nparams
    for _, m in logs:
        if m is not None:
            if d is None:
                d = len(m)
            elif len(m) != d:
                raise CharvarError("inconsistent parameter counts")
    d = d or 0
    roots = tuple(q for q, _ in logs)
    monos = tuple(m if m is not None else (0,) * d for _, m in logs)
    chi = Character(p, roots, monos, d)
    for k, r in enumerate(p.relators):
        q, e = chi.evaluate_word(r)
        if q or any(e):
            val = LaurentPolynomial.monomial(e, CyclotomicNumber.root(q)) if d else CyclotomicNumber.root(q)
            raise RelatorViolation(k, r, val, p)
    return chi


def trivial_character(p: Presentation) -> Character:
    return Character(p, (Fraction(0),) * p.ngens, ((),) * p.ngens, 0)


def character_order(chi: Character):
    """Order of a torsion character, or ``GENERIC`` if any value is a nonconstant monomial."""
    if not chi.is_torsion:
        return GENERIC
    return chi.conductor
