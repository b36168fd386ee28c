"""Polynomials in t over a finite field, backed by FLINT.

Coefficients are exposed as integer codes (see ``fields``); the FLINT object
does the heavy lifting for products, division, gcds and modular powers.
"""

from __future__ import annotations

import itertools

from ..errors import DomainError
from .fields import FiniteField, FqElem


class Poly:
    """Immutable polynomial over ``field``, in the variable t."""

    __slots__ = ("field", "_f", "_codes", "_hash")

    def __init__(self, field, coeffs=()):
        """``coeffs`` are element codes (or FqElems), constant term first."""
        self.field = field
        codes = [c.code if isinstance(c, FqElem) else int(c) for c in coeffs]
        if field.e == 1:
            codes = [c % field.p for c in codes]
        elif any(not 0 <= c < field.q for c in codes):
            raise DomainError(f"coefficient code out of range for {field}")
        while codes and codes[-1] == 0:
            codes.pop()
        self._codes = tuple(codes)
        self._f = field._pctx([field.to_flint(c) for c in codes]) if field.e > 1 \
            else field._pctx(list(codes))
        self._hash = None

    @classmethod
    def _wrap(cls, field, f):
        obj = cls.__new__(cls)
        obj.field = field
        obj._f = f
        obj._codes = None
        obj._hash = None
        return obj

    @classmethod
    def t(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def monomial(cls, field, k, c=1):
        return cls(field, [0] * k + [c])

    def __reduce__(self):
        return (Poly, (self.field, list(self.codes)))

    # --- basic data ---------------------------------------------------------

    @property
    def codes(self):
        if self._codes is None:
            if self.field.e == 1:
                self._codes = tuple(int(c) for c in self._f.coeffs())
            else:
                self._codes = tuple(self.field.from_flint(c) for c in self._f.coeffs())
        return self._codes

    def coeff(self, k):
        codes = self.codes
        return codes[k] if 0 <= k < len(codes) else 0

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return self._f.degree()

    @property
    def lead(self):
        """Leading coefficient as a code (0 for the zero polynomial)."""
        codes = self.codes
        return codes[-1] if codes else 0

    def is_zero(self):
        return self._f.degree() < 0

    def is_one(self):
        return self.codes == (1,)

    def is_monic(self):
        return self.lead == 1

    def is_constant(self):
        return self._f.degree() <= 0

    def monic(self):
        if self.is_zero():
            raise DomainError("the zero polynomial has no monic associate")
        return Poly._wrap(self.field, self._f.monic())

    # --- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise DomainError("polynomials over different fields")
            return other._f
        if isinstance(other, (int, FqElem)):
            return self.field._pctx([self.field.to_flint(self.field.coerce(other))])
        return None

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Poly._wrap(self.field, self._f + g)

    __radd__ = __add__

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Poly._wrap(self.field, self._f - g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Poly._wrap(self.field, g - self._f)

    def __neg__(self):
        return Poly._wrap(self.field, -self._f)

    def __mul__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Poly._wrap(self.field, self._f * g)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        return Poly._wrap(self.field, self._f ** n)

    def __divmod__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        if g.degree() < 0:
            raise ZeroDivisionError("polynomial division by zero")
        quo, rem = divmod(self._f, g)
        return Poly._wrap(self.field, quo), Poly._wrap(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise DomainError("division is not exact")
        return quo

    def divides(self, other):
        """True when self divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def gcd(self, other):
        """Monic gcd (zero only when both inputs are zero)."""
        return Poly._wrap(self.field, self._f.gcd(other._f))

    def xgcd(self, other):
        """(g, s, u) with g = s*self + u*other monic."""
        g, s, u = self._f.xgcd(other._f)
        return (Poly._wrap(self.field, g), Poly._wrap(self.field, s),
                Poly._wrap(self.field, u))

    def inverse_mod(self, modulus):
        g, s, _ = self.xgcd(modulus)
        if not g.is_one():
            raise DomainError("polynomial is not invertible modulo the given modulus")
        return s % modulus

    def pow_mod(self, n, modulus):
        if n < 0:
            return self.inverse_mod(modulus).pow_mod(-n, modulus)
        if modulus.degree == 0:
            return Poly(self.field)
        if n == 0:
            return Poly(self.field, [1])
        return Poly._wrap(self.field, (self._f % modulus._f).pow_mod(n, modulus._f))

    def mul_mod(self, other, modulus):
        return Poly._wrap(self.field, (self._f * other._f) % modulus._f)

    def derivative(self):
        return Poly._wrap(self.field, self._f.derivative())

    def inflate(self, n):
        """f(t^n).  With n a power of q this is the q^k-th power map."""
        return Poly._wrap(self.field, self._f.inflate(n))

    def shift(self, k):
        """t^k * f for k >= 0."""
        if k == 0 or self.is_zero():
            return self
        return Poly(self.field, (0,) * k + self.codes)

    def truncate(self, n):
        """f mod t^n."""
        return Poly(self.field, self.codes[:n])

    def reverse(self, length=None):
        """t^(length-1) f(1/t); by default length = degree + 1."""
        codes = self.codes
        if length is None:
            length = len(codes)
        padded = codes + (0,) * max(0, length - len(codes))
        return Poly(self.field, padded[:length][::-1])

    def low_order(self):
        """Largest k with t^k | f (zero polynomial raises)."""
        if self.is_zero():
            raise DomainError("the zero polynomial has infinite order at t")
        for k, c in enumerate(self.codes):
            if c:
                return k

    def ord(self, prime):
        """Multiplicity of the irreducible ``prime`` in self."""
        if self.is_zero():
            raise DomainError("the zero polynomial has infinite valuation")
        if prime.degree == 1 and prime.coeff(0) == 0:
            return self.low_order()
        k, f = 0, self._f
        p = prime._f
        while True:
            quo, rem = divmod(f, p)
            if rem.degree() >= 0:
                return k
            f, k = quo, k + 1

    def is_irreducible(self):
        return self.degree >= 1 and self._f.is_irreducible()

    def __call__(self, x):
        """Evaluate at an FqElem, Poly (composition) or anything supporting +,*."""
        codes = self.codes
        if isinstance(x, FqElem):
            acc = 0
            field = self.field
            for c in reversed(codes):
                acc = field.add(field.mul(acc, x.code), c)
            return FqElem(field, acc)
        acc = None
        for c in reversed(codes):
            acc = Poly.constant(self.field, c) if acc is None else acc * x + \
                Poly.constant(self.field, c)
        return acc if acc is not None else Poly(self.field)

    # --- comparisons and printing -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self._f == other._f
        if isinstance(other, int):
            return self.codes == ((other % self.field.p,) if other % self.field.p else ())
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, self.codes))
        return self._hash

    def sort_key(self):
        """Order by degree, then lexicographically from the top coefficient."""
        return (self.degree, self.codes[::-1])

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def format_poly(f, var="t"):
    """Text in the input grammar, highest term first (``t^2+(g+1)*t+1``)."""
    field = f.field
    terms = []
    for k in range(f.degree, -1, -1):
        c = f.coeff(k)
        if c == 0:
            continue
        cs = field.format_code(c)
        if "+" in cs:
            cs = f"({cs})"
        if k == 0:
            terms.append(cs)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        terms.append(mono if c == 1 else f"{cs}*{mono}")
    return "+".join(terms) if terms else "0"


def monic_polys(field, degree):
    """All monic polynomials of the given degree, in sort_key order."""
    q = field.q
    for tail in itertools.product(range(q), repeat=degree):
        yield Poly(field, tail[::-1] + (1,))


def monic_polys_up_to(field, max_degree, min_degree=0):
    for d in range(min_degree, max_degree + 1):
        yield from monic_polys(field, d)


def irreducible_polys(field, degree):
    """Monic irreducible polynomials of exactly this degree, in sort_key order."""
    for f in monic_polys(field, degree):
        if f.is_irreducible():
            yield f


def irreducible_polys_up_to(field, max_degree):
    for d in range(1, max_degree + 1):
        yield from irreducible_polys(field, d)


def count_irreducible(q, n):
    """Number of monic irreducibles of degree n over F_q (Gauss's formula)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mu_int(n // d) * q ** d
    return total // n


def _mu_int(n):
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


__all__ = [
    "FiniteField", "Poly", "format_poly", "monic_polys", "monic_polys_up_to",
    "irreducible_polys", "irreducible_polys_up_to", "count_irreducible",
]
