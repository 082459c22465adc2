"""Multivariate Laurent polynomials and rational functions over cyclotomic fields."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .cyclotomic import CyclotomicNumber

__all__ = ["LaurentPolynomial", "RationalFunction", "grlex_key", "NonExactDivision"]

Exponent = tuple[int, ...]


class NonExactDivision(ArithmeticError):
    pass


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


def _as_cyclo(c) -> CyclotomicNumber:
    if isinstance(c, CyclotomicNumber):
        return c
    return CyclotomicNumber.from_rational(Fraction(c))


class LaurentPolynomial:
    """Finite sum of cyclotomic coefficients times monomials s^e, e in Z^d.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = _as_cyclo(c)
                if not c.is_zero():
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentPolynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c, nvars: int = 0) -> "LaurentPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff=1) -> "LaurentPolynomial":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "LaurentPolynomial":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    # -- queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> CyclotomicNumber:
        """The value of a constant polynomial (the d = 0 degenerate case)."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        if not self.terms:
            return CyclotomicNumber.zero()
        return next(iter(self.terms.values()))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_term(self) -> tuple[Exponent, CyclotomicNumber]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def min_exponents(self) -> Exponent:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return LaurentPolynomial.constant(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return LaurentPolynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return LaurentPolynomial._raw(self.nvars, {})
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + c
                else:
                    terms[e] = c
        return LaurentPolynomial._raw(self.nvars, {e: c for e, c in terms.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            (e, c), = self.terms.items()
            return LaurentPolynomial._raw(self.nvars, {tuple(x * k for x in e): c ** k})
        result = LaurentPolynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Exponent) -> "LaurentPolynomial":
        """Multiply by the monomial s^exps."""
        return LaurentPolynomial._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def scale(self, c) -> "LaurentPolynomial":
        c = _as_cyclo(c)
        if c.is_zero():
            return LaurentPolynomial._raw(self.nvars, {})
        return LaurentPolynomial._raw(self.nvars, {e: x * c for e, x in self.terms.items()})

    def exact_divide(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Quotient q with self == q * other in the Laurent ring.

        Both operands are first shifted into the polynomial ring with no
        variable dividing them; a Laurent quotient then has no negative
        exponents, so leading-term division decides exactness.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPolynomial._raw(self.nvars, {})
        if other.is_monomial():
            (e0, c0), = other.terms.items()
            inv = c0.inverse()
            return LaurentPolynomial._raw(
                self.nvars,
                {tuple(a - b for a, b in zip(e, e0)): c * inv for e, c in self.terms.items()})
        lo_s, lo_o = self.min_exponents(), other.min_exponents()
        num = self.shift(tuple(-x for x in lo_s))
        den = other.shift(tuple(-x for x in lo_o))
        lt_e, lt_c = den.leading_term()
        inv = lt_c.inverse()
        rem = dict(num.terms)
        quot: dict = {}
        while rem:
            e = max(rem, key=grlex_key)
            d = tuple(a - b for a, b in zip(e, lt_e))
            if any(x < 0 for x in d):
                raise NonExactDivision("leading monomial not divisible")
            c = rem[e] * inv
            quot[d] = c
            for e2, c2 in den.terms.items():
                t = tuple(a + b for a, b in zip(e2, d))
                v = rem.get(t)
                v = -(c * c2) if v is None else v - c * c2
                if v.is_zero():
                    rem.pop(t, None)
                else:
                    rem[t] = v
        back = tuple(a - b for a, b in zip(lo_s, lo_o))
        return LaurentPolynomial._raw(self.nvars, quot).shift(back)

    def substitute(self, values) -> CyclotomicNumber:
        """Evaluate at cyclotomic values of the variables (nonzero)."""
        total = CyclotomicNumber.zero()
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * (v ** k)
            total = total + term
        return total

    def conjugate(self) -> "LaurentPolynomial":
        """Conjugate coefficients and invert variables (unitary conjugation)."""
        return LaurentPolynomial._raw(
            self.nvars, {tuple(-x for x in e): c.conjugate() for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self.terms == LaurentPolynomial.constant(other, self.nvars).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPolynomial({self.nvars}, {self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"s{i}" + (f"^{k}" if k != 1 else "") for i, k in enumerate(e) if k)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


class RationalFunction:
    """numerator / denominator with the denominator's grlex-leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial, den: LaurentPolynomial | None = None):
        if den is None:
            den = LaurentPolynomial.constant(1, num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            raise ValueError("variable count mismatch")
        _, lc = den.leading_term()
        if not lc.is_one():
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPolynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return RationalFunction(LaurentPolynomial.constant(other, self.nvars))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __repr__(self):
        return f"RationalFunction({self.num!s} / {self.den!s})"
