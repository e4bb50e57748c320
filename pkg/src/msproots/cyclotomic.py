"""Exact arithmetic in rings of cyclotomic integers.

Values are elements of Z[zeta_n] for a fixed order n, held as length-n
integer coefficient vectors in the working quotient Z[x]/(x^n - 1), where
addition is a vector add and multiplication is a cyclic convolution.
Reduction modulo the n-th cyclotomic polynomial happens only at
comparison and readout time; since {1, zeta, ..., zeta^(phi(n)-1)} is a
basis of Z[zeta_n], the reduced form is canonical and makes equality and
zero tests exact and decidable.

All integers are arbitrary precision throughout; there is no rounding
path anywhere in this module.
"""
from __future__ import annotations

from functools import lru_cache


class IntegralityViolation(ArithmeticError):
    """A value that was required to be a rational integer is not one."""


class IntPolynomial:
    """Dense univariate polynomial with exact integer coefficients.

    Index i of ``coeffs`` holds the coefficient of x^i; the sequence is
    normalized so its last entry is nonzero (the zero polynomial stores
    an empty tuple).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __divmod__(self, other):
        """Long division by a monic divisor; stays in integer arithmetic."""
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if not other.is_monic():
            raise ValueError("divisor must be monic for exact integer division")
        db = other.degree
        if self.degree < db:
            return IntPolynomial(), self
        rem = list(self.coeffs)
        quot = [0] * (self.degree - db + 1)
        for i in range(self.degree, db - 1, -1):
            c = rem[i]
            if c:
                quot[i - db] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - db + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _x_pow_minus_one(n):
    return IntPolynomial([-1] + [0] * (n - 1) + [1])


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, monic of degree phi(n).

    Computed by exact division of x^n - 1 by the product of the
    polynomials at all proper divisors of n, memoized per process (the
    cache is safe for concurrent read/insert). A nonzero remainder can
    only come from broken arithmetic and aborts loudly.
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    if n == 1:
        return IntPolynomial((-1, 1))
    den = IntPolynomial((1,))
    for d in _divisors(n)[:-1]:
        den = den * cyclotomic_poly(d)
    quo, rem = divmod(_x_pow_minus_one(n), den)
    if not rem.is_zero():
        raise AssertionError(f"cyclotomic division left a remainder at n={n}; arithmetic is broken")
    return quo


class CyclotomicInt:
    """An element of Z[zeta_n], immutable and safe to share across threads.

    ``coeffs[j]`` multiplies zeta_n^j in the working representation
    Z[x]/(x^n - 1). Mixed arithmetic with plain ints is supported; two
    values are equal exactly when their canonical forms agree.
    """

    __slots__ = ("order", "coeffs", "_canonical")

    def __init__(self, order, coeffs=None):
        if order < 1:
            raise ValueError("order must be a positive integer")
        if coeffs is None:
            vec = (0,) * order
        else:
            vec = tuple(coeffs)
            if len(vec) != order:
                raise ValueError(f"expected {order} coefficients, got {len(vec)}")
        self.order = order
        self.coeffs = vec
        self._canonical = None

    @classmethod
    def from_int(cls, order, value):
        return cls(order, (value,) + (0,) * (order - 1))

    def _coerce(self, other):
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.order, other)
        if isinstance(other, CyclotomicInt):
            if other.order != self.order:
                raise ValueError(f"cannot combine values of orders {self.order} and {other.order}")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicInt(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicInt(self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.order, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.order
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[(i + j) % n] += a * b
        return CyclotomicInt(n, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta_n]")
        result = CyclotomicInt.from_int(self.order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def canonical_form(self) -> tuple:
        """Coefficients on the power basis 1, zeta, ..., zeta^(phi(n)-1).

        The remainder of the working polynomial modulo the order-n
        cyclotomic polynomial, zero-padded to length phi(n).
        """
        if self._canonical is None:
            phi_poly = cyclotomic_poly(self.order)
            rem = IntPolynomial(self.coeffs) % phi_poly
            self._canonical = rem.coeffs + (0,) * (phi_poly.degree - len(rem.coeffs))
        return self._canonical

    def is_zero(self) -> bool:
        return not any(self.canonical_form())

    def is_integer(self) -> bool:
        return not any(self.canonical_form()[1:])

    def to_integer(self) -> int:
        """Read the value out as a plain integer.

        Raises IntegralityViolation when any higher basis coefficient
        survives reduction; callers rely on this to abort loudly.
        """
        cf = self.canonical_form()
        if any(cf[1:]):
            raise IntegralityViolation(
                f"value of order {self.order} is not a rational integer: canonical form {list(cf)}")
        return cf[0]

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            cf = self.canonical_form()
            return not any(cf[1:]) and cf[0] == other
        if isinstance(other, CyclotomicInt):
            if self.order == other.order:
                return self.canonical_form() == other.canonical_form()
            return (self.is_integer() and other.is_integer()
                    and self.canonical_form()[0] == other.canonical_form()[0])
        return NotImplemented

    def __hash__(self):
        cf = self.canonical_form()
        if not any(cf[1:]):
            return hash(cf[0])
        return hash((self.order, cf))

    def __repr__(self):
        return f"CyclotomicInt({self.order}, {list(self.coeffs)})"


def root_power(n: int, e: int) -> CyclotomicInt:
    """zeta_n^e as an exact value; the exponent is reduced modulo n."""
    if n < 1:
        raise ValueError("order must be a positive integer")
    vec = [0] * n
    vec[e % n] = 1
    return CyclotomicInt(n, vec)
