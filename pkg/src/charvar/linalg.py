"""Exact rank over Q(zeta_N) and over fractions of Laurent polynomial rings."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels
from .cyclotomic import CyclotomicNumber
from .laurent import LaurentPolynomial, grlex_key

__all__ = [
    "rank_over_fraction_field",
    "rank_cyclotomic",
    "modular_prime",
    "rank_mod_p_lower_bound",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def modular_prime(conductor: int, index: int = 0) -> tuple[int, int]:
    """A prime p = 1 mod N below 2^31 and a primitive N-th root of unity mod p."""
    k = (1 << 30) // conductor + 1
    found = -1
    while True:
        p = k * conductor + 1
        if p >= 1 << 31:
            raise ValueError(f"no suitable prime for conductor {conductor}")
        if _is_prime(p):
            found += 1
            if found == index:
                break
        k += 1
    qs = _prime_factors(conductor)
    a = 2
    while True:
        w = pow(a, (p - 1) // conductor, p)
        if all(pow(w, conductor // q, p) != 1 for q in qs):
            return p, w
        a += 1


def rank_cyclotomic(rows: Sequence[Sequence[CyclotomicNumber]]) -> int:
    """Rank by Gaussian elimination in the field; exact."""
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    for c in range(n):
        piv = None
        best = None
        for i in range(rank, m):
            x = a[i][c]
            if not x.is_zero():
                w = sum(1 for t in x.coeffs if t)
                if best is None or w < best:
                    piv, best = i, w
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = a[rank][c].inverse()
        prow = [x * inv if not x.is_zero() else x for x in a[rank]]
        a[rank] = prow
        for i in range(rank + 1, m):
            f = a[i][c]
            if not f.is_zero():
                row = a[i]
                for j in range(c, n):
                    if not prow[j].is_zero():
                        row[j] = row[j] - f * prow[j]
        rank += 1
        if rank == m:
            break
    return rank


def _as_poly(x, nvars: int) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    return LaurentPolynomial.constant(x, nvars)


def _row_to_polynomials(row: list[LaurentPolynomial]) -> list[LaurentPolynomial]:
    """Multiply a row by a unit so entries are polynomials with unit content stripped."""
    nz = [p for p in row if not p.is_zero()]
    if not nz:
        return row
    d = nz[0].nvars
    shift = tuple(-min(min(e[i] for e in p.terms) for p in nz) for i in range(d))
    row = [p.shift(shift) if not p.is_zero() else p for p in row]
    _, lc = next(p for p in row if not p.is_zero()).leading_term()
    if not lc.is_one():
        inv = lc.inverse()
        row = [p.scale(inv) for p in row]
    return row


def _bareiss_rank(a: list[list[LaurentPolynomial]]) -> int:
    m, n = len(a), len(a[0])
    d = a[0][0].nvars
    prev = LaurentPolynomial.constant(1, d)
    rank = 0
    rowperm = list(range(m))
    colperm = list(range(n))
    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                x = a[i][j]
                if not x.is_zero():
                    w = (len(x), grlex_key(x.leading_term()[0]))
                    if best is None or w < best[0]:
                        best = (w, i, j)
        if best is None:
            break
        _, pi, pj = best
        a[k], a[pi] = a[pi], a[k]
        rowperm[k], rowperm[pi] = rowperm[pi], rowperm[k]
        if pj != k:
            for r in a:
                r[k], r[pj] = r[pj], r[k]
            colperm[k], colperm[pj] = colperm[pj], colperm[k]
        piv = a[k][k]
        for i in range(k + 1, m):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = piv * a[i][j]
                if not aik.is_zero() and not a[k][j].is_zero():
                    num = num - aik * a[k][j]
                a[i][j] = num.exact_divide(prev) if not num.is_zero() else num
            a[i][k] = LaurentPolynomial(d)
        prev = piv
        rank += 1
    return rank


def rank_over_fraction_field(matrix) -> int:
    """Rank of a matrix of Laurent polynomials over the fraction field.

    Constant matrices use field elimination over Q(zeta_N); otherwise rows
    are scaled by units to polynomials and a fraction-free (Bareiss)
    elimination with full pivoting is run.  No floating point is used.
    """
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    nvars = 0
    for r in rows:
        for x in r:
            if isinstance(x, LaurentPolynomial):
                nvars = x.nvars
                break
    polys = [[_as_poly(x, nvars) for x in r] for r in rows]
    if all(p.is_constant() for r in polys for p in r):
        return rank_cyclotomic([[p.constant_value() if not p.is_zero() else CyclotomicNumber.zero()
                                 for p in r] for r in polys])
    polys = [_row_to_polynomials(r) for r in polys]
    polys = [r for r in polys if any(not p.is_zero() for p in r)]
    if not polys:
        return 0
    return _bareiss_rank(polys)


def _cyclo_mod_p(z: CyclotomicNumber, p: int, w: int) -> int | None:
    """Image of z under zeta_N -> w in F_p, None if the denominator vanishes mod p."""
    if z.den % p == 0:
        return None
    acc, pw = 0, 1
    for c in z.coeffs:
        if c:
            acc = (acc + c * pw) % p
        pw = pw * w % p
    return acc * pow(z.den, p - 2, p) % p


def rank_mod_p_lower_bound(matrix, conductor: int, seed: int = 0) -> int | None:
    """A certified lower bound for the rank over the fraction field.

    Reduces modulo a prime of Z[zeta_N] and substitutes random nonzero
    residues for the variables; ranks can only drop under a ring
    homomorphism.  Returns None if some denominator vanishes mod p.
    """
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    p, w = modular_prime(conductor)
    rng = random.Random(seed)
    nvars = 0
    for r in rows:
        for x in r:
            if isinstance(x, LaurentPolynomial):
                nvars = x.nvars
                break
    svals = [rng.randrange(2, p - 1) for _ in range(nvars)]
    sinv = [pow(s, p - 2, p) for s in svals]
    out = np.zeros((len(rows), len(rows[0])), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if isinstance(x, LaurentPolynomial):
                acc = 0
                for e, c in x.terms.items():
                    if c.conductor != conductor and conductor % c.conductor:
                        return None
                    cv = _cyclo_mod_p(c.lift(conductor), p, w)
                    if cv is None:
                        return None
                    for k, ek in enumerate(e):
                        if ek:
                            cv = cv * pow(svals[k] if ek > 0 else sinv[k], abs(ek), p) % p
                    acc = (acc + cv) % p
                out[i, j] = acc
            else:
                z = x if isinstance(x, CyclotomicNumber) else CyclotomicNumber.from_rational(x)
                if conductor % z.conductor:
                    return None
                v = _cyclo_mod_p(z.lift(conductor), p, w)
                if v is None:
                    return None
                out[i, j] = v
    return _kernels.rank_mod_p(out, p)
