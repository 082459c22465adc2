"""Fox calculus and twisted first cohomology of finitely presented groups.

dim H^1(G; C_chi) is computed from the cocycle description: cocycles are
the kernel of the evaluated Fox matrix (relators x generators) and the
coboundaries are spanned by (chi(x_i) - 1)_i, so

    dim H^1 = n - rank(Fox(chi)) - [chi != 1].
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, prod

import numpy as np

from . import _kernels
from .cyclotomic import CyclotomicNumber
from .laurent import LaurentPolynomial
from .linalg import modular_prime, rank_cyclotomic, rank_mod_p_lower_bound, rank_over_fraction_field
from .presentation import (
    Character,
    CharvarError,
    Presentation,
    Word,
    free_reduce,
    trivial_character,
)

__all__ = [
    "GroupRingElement",
    "TwistedComplexData",
    "EnumerationCapExceeded",
    "fox_derivative",
    "evaluate",
    "fox_matrix",
    "twisted_complex",
    "fox_identity_residues",
    "dim_h1",
    "sigma_membership",
    "generic_dim",
    "scan_torsion",
    "scan_size",
    "DEFAULT_SCAN_CAP",
]

DEFAULT_SCAN_CAP = 200_000


class EnumerationCapExceeded(CharvarError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"torsion enumeration needs {size} characters, cap is {cap}")


def _check_enabled() -> bool:
    return os.environ.get("CHARVAR_CHECK", "0") not in ("", "0")


class GroupRingElement:
    """An integer combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            w = free_reduce(w)
            c = clean.get(w, 0) + c
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        self.terms = clean

    @classmethod
    def word(cls, w: Word, coeff: int = 1) -> "GroupRingElement":
        return cls({tuple(w): coeff})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElement(terms)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = free_reduce(w1 + w2)
                terms[w] = terms.get(w, 0) + c1 * c2
        return GroupRingElement(terms)

    def left_multiply(self, w: Word) -> "GroupRingElement":
        return GroupRingElement({free_reduce(tuple(w) + v): c for v, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"GroupRingElement({self.terms!r})"


def fox_derivative(w: Word, i: int) -> GroupRingElement:
    """Fox derivative d w / d x_i.

    Uses d(uv) = du + u dv, dx_i/dx_i = 1 and dx_i^-1/dx_i = -x_i^-1.
    """
    terms: dict = {}
    prefix: list = []
    for g, s in w:
        if g == i:
            if s > 0:
                key = free_reduce(prefix)
                terms[key] = terms.get(key, 0) + 1
            else:
                key = free_reduce(prefix + [(g, -1)])
                terms[key] = terms.get(key, 0) - 1
        prefix.append((g, s))
    return GroupRingElement(terms)


def _word_monomial(chi: Character, w: Word, modulus: int) -> tuple[int, tuple[int, ...]]:
    q, e = chi.evaluate_word(w)
    return int(q * modulus) % modulus, e


def evaluate(e: GroupRingElement, chi: Character):
    """Linear extension of chi; a CyclotomicNumber for torsion chi, else a LaurentPolynomial."""
    n = chi.conductor
    acc: dict = {}
    for w, c in e.terms.items():
        k, mono = _word_monomial(chi, w, n)
        counts = acc.setdefault(mono, [0] * n)
        counts[k] += c
    if chi.is_torsion:
        counts = acc.get((), [0] * n)
        return CyclotomicNumber.from_exponent_counts(n, counts)
    return LaurentPolynomial(chi.nparams, {m: CyclotomicNumber.from_exponent_counts(n, c)
                                           for m, c in acc.items()})


@lru_cache(maxsize=256)
def _flat_relators(p: Presentation):
    gens, signs, starts = [], [], [0]
    for r in p.relators:
        for g, s in r:
            gens.append(g)
            signs.append(s)
        starts.append(len(gens))
    return (np.array(gens, dtype=np.int64), np.array(signs, dtype=np.int64),
            np.array(starts, dtype=np.int64))


def _torsion_exponents(chi: Character, modulus: int) -> np.ndarray:
    return np.array([int(q * modulus) % modulus for q in chi.roots], dtype=np.int64)


def _counts_to_matrix(counts: np.ndarray, modulus: int) -> list[list[CyclotomicNumber]]:
    return [[CyclotomicNumber.from_exponent_counts(modulus, [int(x) for x in counts[r, g]])
             for g in range(counts.shape[1])] for r in range(counts.shape[0])]


def _generic_fox(p: Presentation, chi: Character) -> list[list[LaurentPolynomial]]:
    n_mod = chi.conductor
    exps = [int(q * n_mod) % n_mod for q in chi.roots]
    d = chi.nparams
    out = []
    for r in p.relators:
        acc = [dict() for _ in range(p.ngens)]
        pe, pm = 0, [0] * d
        for g, s in r:
            m = chi.monomials[g]
            if s > 0:
                key = tuple(pm)
                cnt = acc[g].setdefault(key, [0] * n_mod)
                cnt[pe] += 1
                pe = (pe + exps[g]) % n_mod
                for k in range(d):
                    pm[k] += m[k]
            else:
                pe = (pe - exps[g]) % n_mod
                for k in range(d):
                    pm[k] -= m[k]
                key = tuple(pm)
                cnt = acc[g].setdefault(key, [0] * n_mod)
                cnt[pe] -= 1
        out.append([LaurentPolynomial(d, {mono: CyclotomicNumber.from_exponent_counts(n_mod, c)
                                          for mono, c in a.items()}) for a in acc])
    return out


def fox_matrix(p: Presentation, chi: Character):
    """s x n matrix with entry (k, i) = chi(dR_k / dx_i)."""
    if chi.is_torsion:
        n_mod = chi.conductor
        gens, signs, starts = _flat_relators(p)
        counts = _kernels.fox_counts(gens, signs, starts, _torsion_exponents(chi, n_mod)[None, :],
                                     n_mod, p.ngens)[0]
        mat = _counts_to_matrix(counts, n_mod)
    else:
        mat = _generic_fox(p, chi)
    if _check_enabled():
        bad = [k for k, v in enumerate(fox_identity_residues(p, chi, mat)) if not v.is_zero()]
        assert not bad, f"fundamental Fox identity fails on relators {bad}"
    return mat


def boundary_one(chi: Character) -> list:
    """Twisted boundary d_1(x_i) = (chi(x_i) - 1) P of the presentation complex."""
    if chi.is_torsion:
        return [chi.root_value(i) - 1 for i in range(len(chi.roots))]
    return [chi.value(i) - 1 for i in range(len(chi.roots))]


@dataclass(frozen=True)
class TwistedComplexData:
    boundary1: tuple
    fox: tuple


def twisted_complex(p: Presentation, chi: Character) -> TwistedComplexData:
    return TwistedComplexData(tuple(boundary_one(chi)), tuple(tuple(r) for r in fox_matrix(p, chi)))


def fox_identity_residues(p: Presentation, chi: Character, mat=None) -> list:
    """sum_i chi(dR/dx_i) (chi(x_i) - 1) for every relator; all must vanish."""
    if mat is None:
        mat = fox_matrix(p, chi)
    b1 = boundary_one(chi)
    out = []
    for row in mat:
        acc = None
        for x, b in zip(row, b1):
            t = x * b
            acc = t if acc is None else acc + t
        if acc is None:
            acc = CyclotomicNumber.zero()
        out.append(acc)
    return out


def _rank_upper_bound(p: Presentation, nontrivial: bool) -> int:
    return min(p.nrels, p.ngens - (1 if nontrivial else 0))


def _torsion_rank_from_counts(p: Presentation, counts: np.ndarray, modulus: int, nontrivial: bool) -> int:
    if p.nrels == 0 or p.ngens == 0:
        return 0
    ub = _rank_upper_bound(p, nontrivial)
    prime, w = modular_prime(modulus)
    wpow = np.array([pow(w, e, prime) for e in range(modulus)], dtype=np.int64)
    red = (counts % prime) @ wpow % prime
    if _kernels.rank_mod_p(red, prime) == ub:
        return ub
    return rank_cyclotomic(_counts_to_matrix(counts, modulus))


def fox_rank(p: Presentation, chi: Character) -> int:
    """Exact rank of the evaluated Fox matrix over the fraction field."""
    if p.nrels == 0 or p.ngens == 0:
        return 0
    nontrivial = not chi.is_trivial()
    if chi.is_torsion:
        n_mod = chi.conductor
        gens, signs, starts = _flat_relators(p)
        counts = _kernels.fox_counts(gens, signs, starts, _torsion_exponents(chi, n_mod)[None, :],
                                     n_mod, p.ngens)[0]
        return _torsion_rank_from_counts(p, counts, n_mod, nontrivial)
    mat = fox_matrix(p, chi)
    ub = _rank_upper_bound(p, nontrivial)
    lb = rank_mod_p_lower_bound(mat, chi.conductor)
    if lb == ub:
        return ub
    return rank_over_fraction_field(mat)


def dim_h1(p: Presentation, chi: Character) -> int:
    """Exact dim H^1(G; C_chi)."""
    nontrivial = not chi.is_trivial()
    return p.ngens - fox_rank(p, chi) - (1 if nontrivial else 0)


def sigma_membership(p: Presentation, chi: Character, k: int) -> bool:
    return dim_h1(p, chi) >= k


def generic_dim(p: Presentation, v) -> int:
    """dim H^1 at the generic point of a translated subtorus of the character torus.

    The subtorus parameters are independent variables, so the rank is taken
    over the fraction field; by semicontinuity this is the minimum over V.
    """
    from .torus import TranslatedSubtorus, AmbientMismatch

    if not isinstance(v, TranslatedSubtorus):
        raise TypeError("expected a TranslatedSubtorus")
    if v.presentation != p:
        raise AmbientMismatch("subtorus does not live in this presentation's character torus")
    return dim_h1(p, v.generic_character())


def scan_size(p: Presentation, order: int) -> int:
    ab = p.abelianization
    return order ** ab.rank * prod(gcd(d, order) for d in ab.invariants)


def _scan_exponents(p: Presentation, order: int) -> np.ndarray:
    """Exponents mod `order` of every character in Hom(H, Z/order), in enumeration order."""
    ab = p.abelianization
    r = ab.rank
    cm = np.array(ab.class_map.tolist(), dtype=object).reshape(p.ngens, r + len(ab.invariants))
    tors_ranges = [range(gcd(d, order)) for d in ab.invariants]
    scale = [order // gcd(d, order) for d in ab.invariants]
    rows = []
    for b in product(*tors_ranges):
        for c in product(range(order), repeat=r):
            e = []
            for i in range(p.ngens):
                x = sum(c[f] * int(cm[i, f]) for f in range(r))
                x += sum(b[j] * scale[j] * int(cm[i, r + j]) for j in range(len(b)))
                e.append(x % order)
            rows.append(e)
    return np.array(rows, dtype=np.int64).reshape(len(rows), p.ngens)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CHARVAR_THREADS", "1")))
    except ValueError:
        return 1


def scan_torsion(p: Presentation, order: int, depth: int, cap: int = DEFAULT_SCAN_CAP,
                 include_trivial: bool = False):
    """Every nontrivial character of order dividing `order` with dim H^1 >= depth.

    Enumerates Hom(H_1, Z/order) through the Smith basis; the result is a
    list of (Character, dim) in enumeration order.  The trivial character
    (whose dim is the first Betti number) is skipped unless asked for.
    """
    if order < 1:
        raise ValueError("order bound must be positive")
    size = scan_size(p, order)
    if size > cap:
        raise EnumerationCapExceeded(size, cap)
    exps = _scan_exponents(p, order)
    gens, signs, starts = _flat_relators(p)
    chunk = 1024

    def work(lo: int):
        block = exps[lo:lo + chunk]
        counts = _kernels.fox_counts(gens, signs, starts, block, order, p.ngens) if p.nrels else None
        found = []
        for b in range(block.shape[0]):
            nontrivial = bool(block[b].any())
            if not nontrivial and not include_trivial:
                continue
            if counts is None or p.ngens == 0:
                rank = 0
            else:
                rank = _torsion_rank_from_counts(p, counts[b], order, nontrivial)
            dim = p.ngens - rank - (1 if nontrivial else 0)
            if dim >= depth:
                chi = Character(p, tuple(Fraction(int(x), order) for x in block[b]),
                                tuple(() for _ in range(p.ngens)), 0)
                found.append((lo + b, chi, dim))
        return found

    starts_idx = list(range(0, exps.shape[0], chunk))
    nthreads = _threads()
    if nthreads > 1 and len(starts_idx) > 1:
        with ThreadPoolExecutor(nthreads) as pool:
            parts = list(pool.map(work, starts_idx))
    else:
        parts = [work(lo) for lo in starts_idx]
    merged = sorted((x for part in parts for x in part), key=lambda t: t[0])
    if exps.shape[0] == 0 and include_trivial:
        # zero generators: the trivial group still has its trivial character
        chi = trivial_character(p)
        return [(chi, 0)] if depth <= 0 else []
    return [(chi, dim) for _, chi, dim in merged]
