"""Elements of K = F_q(t) as reduced fractions with monic denominator."""

from __future__ import annotations

from ..errors import DomainError
from .fields import FqElem
from .poly import Poly


class RatFunc:
    """Immutable num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced=False):
        field = num.field
        if den is None:
            den = Poly(field, [1])
        elif den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly(field, [1])
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num.exact_div(g), den.exact_div(g)
                lead = den.lead
                if lead != 1:
                    inv = field.inv(lead)
                    num = num * FqElem(field, inv)
                    den = den * FqElem(field, inv)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, f):
        return cls(f, Poly(f.field, [1]), _reduced=True)

    @classmethod
    def constant(cls, field, c):
        return cls.from_poly(Poly.constant(field, c))

    @classmethod
    def t(cls, field):
        return cls.from_poly(Poly.t(field))

    @classmethod
    def zero(cls, field):
        return cls.from_poly(Poly(field))

    @classmethod
    def one(cls, field):
        return cls.from_poly(Poly(field, [1]))

    def __reduce__(self):
        return (RatFunc, (self.num, self.den))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.degree == 0

    def is_constant(self):
        return self.den.degree == 0 and self.num.degree <= 0

    def _lift(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise DomainError("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        if isinstance(other, (int, FqElem)):
            return RatFunc.from_poly(Poly(self.field) + other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        # Henrici: with g = gcd(den1, den2) only gcd(num, g) can cancel
        g = self.den.gcd(o.den)
        if g.is_one():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, _reduced=True)
        d1, d2 = self.den.exact_div(g), o.den.exact_div(g)
        num = self.num * d2 + o.num * d1
        if num.is_zero():
            return RatFunc.zero(self.field)
        h = num.gcd(g)
        if not h.is_one():
            num, g = num.exact_div(h), g.exact_div(h)
        return RatFunc(num, d1 * d2 * g, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc.zero(self.field)
        # cross-cancel first so the products stay reduced; monic times monic is monic
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        num = self.num.exact_div(g1) * o.num.exact_div(g2)
        den = self.den.exact_div(g2) * o.den.exact_div(g1)
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q(t)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def frobenius(self, k=1):
        """x^(q^k): substitute t -> t^(q^k), since F_q-coefficients are fixed."""
        if k == 0:
            return self
        n = self.field.q ** k
        return RatFunc(self.num.inflate(n), self.den.inflate(n), _reduced=True)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)


def _wrap_term(text):
    return text if "+" not in text else f"({text})"


def format_ratfunc(x):
    if x.den.is_one():
        return str(x.num)
    return f"{_wrap_term(str(x.num))}/{_wrap_term(str(x.den))}"


def common_denominator(values):
    """Monic lcm of the denominators of ``values``."""
    values = list(values)
    if not values:
        raise DomainError("empty list")
    den = values[0].den
    for x in values[1:]:
        den = den * x.den.exact_div(den.gcd(x.den))
    return den
