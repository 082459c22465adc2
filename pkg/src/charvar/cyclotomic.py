"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) of
Q[x]/(Phi_N) as an integer numerator vector over a positive common
denominator.  Mixed-conductor arithmetic lifts both operands to the lcm.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CyclotomicNumber",
    "cyclo_root",
    "cyclo_conjugate",
    "cyclotomic_polynomial",
    "euler_phi",
    "reduction_table",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _exact_divide_monic(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide_monic(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dq = len(den) - 1
    q = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            q[i - dq] = c
            for j, b in enumerate(den):
                num[i - dq + j] -= c * b
    assert not any(num), "non-exact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the power-basis coordinates of zeta_n^e, 0 <= e < n."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * poly[j]
    return tuple(rows)


def _normalize(coeffs: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        coeffs = [-c for c in coeffs]
        den = -den
    g = den
    for c in coeffs:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if not any(coeffs):
        return tuple(0 for _ in coeffs), 1
    if g > 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    return tuple(coeffs), den


class CyclotomicNumber:
    """An element of Q(zeta_N) in canonical reduced form.

    ``conductor`` is the N the element is expressed over; it need not be
    minimal.  Equality and hashing are conductor independent.
    """

    __slots__ = ("conductor", "coeffs", "den", "_hash")

    def __init__(self, conductor: int, coeffs, den: int = 1, *, _reduced: bool = False):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor
        phi = euler_phi(conductor)
        if _reduced:
            c = list(coeffs)
        else:
            c = _reduce_poly([*coeffs], conductor)
        if len(c) != phi:
            raise ValueError(f"expected {phi} coefficients, got {len(c)}")
        fr = [x for x in c if isinstance(x, Fraction)]
        if fr:
            lcd = 1
            for x in fr:
                lcd = _lcm(lcd, x.denominator)
            c = [int(Fraction(x) * lcd) for x in c]
            den *= lcd
        self.coeffs, self.den = _normalize([int(x) for x in c], den)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rational(cls, q, conductor: int = 1) -> "CyclotomicNumber":
        q = Fraction(q)
        phi = euler_phi(conductor)
        return cls(conductor, [q.numerator] + [0] * (phi - 1), q.denominator, _reduced=True)

    @classmethod
    def zero(cls, conductor: int = 1) -> "CyclotomicNumber":
        return cls(conductor, [0] * euler_phi(conductor), _reduced=True)

    @classmethod
    def one(cls, conductor: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, conductor)

    @classmethod
    def from_exponent_counts(cls, conductor: int, counts) -> "CyclotomicNumber":
        """sum_e counts[e] * zeta^e for a length-``conductor`` count vector."""
        table = reduction_table(conductor)
        phi = euler_phi(conductor)
        out = [0] * phi
        for e, c in enumerate(counts):
            if c:
                row = table[e]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return cls(conductor, out, _reduced=True)

    @classmethod
    def root(cls, q) -> "CyclotomicNumber":
        """exp(2 pi i q) for rational q."""
        q = Fraction(q) % 1
        return cyclo_root(q.numerator, q.denominator)

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.coeffs[0], self.den)

    def is_one(self) -> bool:
        return self.den == 1 and self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def lift(self, conductor: int) -> "CyclotomicNumber":
        """Re-express over Q(zeta_M) for a multiple M of the conductor."""
        n = self.conductor
        if conductor == n:
            return self
        if conductor % n:
            raise ValueError(f"{conductor} is not a multiple of {n}")
        step = conductor // n
        table = reduction_table(conductor)
        phi = euler_phi(conductor)
        out = [0] * phi
        for k, c in enumerate(self.coeffs):
            if c:
                row = table[(k * step) % conductor]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CyclotomicNumber(conductor, out, self.den, _reduced=True)

    def _common(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.conductor == self.conductor:
                return self, other
            m = _lcm(self.conductor, other.conductor)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicNumber.from_rational(other, self.conductor)
        return None, None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        if a.den == b.den:
            coeffs = [x + y for x, y in zip(a.coeffs, b.coeffs)]
            return CyclotomicNumber(a.conductor, coeffs, a.den, _reduced=True)
        coeffs = [x * b.den + y * a.den for x, y in zip(a.coeffs, b.coeffs)]
        return CyclotomicNumber(a.conductor, coeffs, a.den * b.den, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.conductor, [-x for x in self.coeffs], self.den, _reduced=True)

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber(
                self.conductor, [x * q.numerator for x in self.coeffs],
                self.den * q.denominator, _reduced=True)
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        n = a.conductor
        phi = len(a.coeffs)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber(n, _reduce_poly(prod, n), a.den * b.den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.conductor
        inv = _poly_inverse_mod([Fraction(c, self.den) for c in self.coeffs],
                                [Fraction(c) for c in cyclotomic_polynomial(n)])
        return CyclotomicNumber(n, inv + [Fraction(0)] * (euler_phi(n) - len(inv)), _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicNumber.one(self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """Image under zeta_N -> zeta_N^-1 (complex conjugation)."""
        n = self.conductor
        counts = [0] * n
        for k, c in enumerate(self.coeffs):
            counts[(-k) % n] += c
        out = CyclotomicNumber.from_exponent_counts(n, counts)
        return CyclotomicNumber(n, out.coeffs, self.den, _reduced=True)

    def galois(self, a: int) -> "CyclotomicNumber":
        """Image under zeta_N -> zeta_N^a, gcd(a, N) = 1."""
        n = self.conductor
        if gcd(a, n) != 1:
            raise ValueError("exponent must be a unit modulo the conductor")
        counts = [0] * n
        for k, c in enumerate(self.coeffs):
            counts[(a * k) % n] += c
        out = CyclotomicNumber.from_exponent_counts(n, counts)
        return CyclotomicNumber(n, out.coeffs, self.den, _reduced=True)

    def normalized_trace(self) -> Fraction:
        """Tr_{Q(zeta_N)/Q}(z) / phi(N); invariant under lifting."""
        n = self.conductor
        total = Fraction(0)
        for k, c in enumerate(self.coeffs):
            if c:
                m = n // gcd(k, n)
                total += c * Fraction(_mobius(m), euler_phi(m))
        return total / self.den

    def root_exponent(self) -> Fraction | None:
        """q in [0, 1) with self == exp(2 pi i q), or None if not a root of unity."""
        if self.den != 1:
            return None
        n = self.conductor
        table = reduction_table(n)
        neg = tuple(-c for c in self.coeffs)
        for e, row in enumerate(table):
            if row == self.coeffs:
                return Fraction(e, n)
            if row == neg:
                return (Fraction(e, n) + Fraction(1, 2)) % 1
        return None

    def order(self) -> int | None:
        """Multiplicative order when this is a root of unity."""
        q = self.root_exponent()
        return None if q is None else q.denominator

    # -- comparison --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.coeffs[0], self.den) == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            t = self.normalized_trace()
            self._hash = hash(t) if self.is_rational() else hash(("cyc", t))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CyclotomicNumber({self.conductor}, {list(self.coeffs)}, {self.den})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            q = Fraction(c, self.den)
            if k == 0:
                terms.append(str(q))
            else:
                z = f"z{self.conductor}" + (f"^{k}" if k > 1 else "")
                terms.append(z if q == 1 else ("-" + z if q == -1 else f"{q}*{z}"))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _reduce_poly(coeffs: list, n: int) -> list:
    """Reduce an integer/rational coefficient list modulo Phi_n."""
    phi = euler_phi(n)
    if len(coeffs) <= phi:
        return list(coeffs) + [0] * (phi - len(coeffs))
    table = reduction_table(n)
    out = list(coeffs[:phi])
    for e in range(phi, len(coeffs)):
        c = coeffs[e]
        if c:
            row = table[e % n]
            for j in range(phi):
                if row[j]:
                    out[j] += c * row[j]
    return out


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        _poly_trim(a)
    return q, a


def _poly_sub(a: list, b: list) -> list:
    m = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(m)])


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_inverse_mod(a: list, m: list) -> list:
    """Inverse of a modulo m in Q[x] via the extended Euclidean algorithm."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def cyclo_root(k: int, n: int) -> CyclotomicNumber:
    """zeta_n^k in reduced form over Q(zeta_n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return CyclotomicNumber(n, reduction_table(n)[k % n], _reduced=True)


def cyclo_conjugate(z: CyclotomicNumber) -> CyclotomicNumber:
    return z.conjugate()
