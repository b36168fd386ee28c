"""Places of F_q(t), valuations and absolute values in log-q units.

For a place v of degree deg(v) we use log_q |x|_v = -ord_v(x) * deg(v), so
|P|_(P) = q^(-deg P) and |f/g|_inf = q^(deg f - deg g).  Every value is an
exact Fraction and the product formula reads sum_v log_q |x|_v = 0.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from .factor import factor
from .poly import Poly, irreducible_polys_up_to
from .ratfunc import RatFunc


class Place:
    """Either the infinite place (``prime is None``) or the place of a monic irreducible."""

    __slots__ = ("prime", "_hash")

    def __init__(self, prime=None, *, check=True):
        if prime is not None and check:
            if not prime.is_monic() or not prime.is_irreducible():
                raise DomainError(f"{prime} is not a monic irreducible polynomial")
        self.prime = prime
        self._hash = hash(("inf",)) if prime is None else hash(prime)

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinite(self):
        return self.prime is None

    @property
    def is_finite(self):
        return self.prime is not None

    @property
    def degree(self):
        return 1 if self.prime is None else self.prime.degree

    def sort_key(self):
        # finite places by degree then coefficients; infinity last
        if self.prime is None:
            return (1, 0, ())
        return (0,) + self.prime.sort_key()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        if self.prime is None or other.prime is None:
            return self.prime is None and other.prime is None
        return self.prime == other.prime

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (_rebuild_place, (self.prime,))

    def __repr__(self):
        return f"Place({self})"

    def __str__(self):
        return "inf" if self.prime is None else f"({self.prime})"

    def label(self):
        """Form accepted by the place parser."""
        return "inf" if self.prime is None else str(self.prime)


def _rebuild_place(prime):
    return Place(prime, check=False)


INFINITY = Place(None)


def _as_ratfunc(x):
    if isinstance(x, Poly):
        return RatFunc.from_poly(x)
    return x


def ord_v(x, v):
    """Order of vanishing of the nonzero x at v."""
    x = _as_ratfunc(x)
    if x.is_zero():
        raise DomainError("the valuation of 0 is infinite")
    if v.prime is None:
        return x.den.degree - x.num.degree
    return x.num.ord(v.prime) - x.den.ord(v.prime)


def log_abs(x, v):
    """log_q |x|_v as an exact Fraction."""
    return Fraction(-ord_v(x, v) * v.degree)


def log_abs_or_none(x, v):
    """log_q |x|_v, or None standing for -infinity when x = 0."""
    x = _as_ratfunc(x)
    return None if x.is_zero() else log_abs(x, v)


def is_integral(x, v):
    """|x|_v <= 1 (zero counts as integral)."""
    x = _as_ratfunc(x)
    return x.is_zero() or ord_v(x, v) >= 0


def is_unit(x, v):
    x = _as_ratfunc(x)
    return not x.is_zero() and ord_v(x, v) == 0


def finite_support(x, seed=0):
    """Finite places where the nonzero x has nonzero order."""
    x = _as_ratfunc(x)
    if x.is_zero():
        raise DomainError("the support of 0 is every place")
    places = set()
    for f in (x.num, x.den):
        if f.degree > 0:
            places.update(Place(P, check=False) for P in factor(f, seed).primes())
    return places


def support(x, seed=0):
    """All places where the nonzero x has nonzero order."""
    places = finite_support(x, seed)
    x = _as_ratfunc(x)
    if x.num.degree != x.den.degree:
        places.add(INFINITY)
    return places


def weil_height(x):
    """h(x) = sum_v max(log_q |x|_v, 0) = max(deg num, deg den)."""
    x = _as_ratfunc(x)
    if x.is_zero():
        return Fraction(0)
    return Fraction(max(x.num.degree, x.den.degree))


def weil_height_by_places(x, seed=0):
    """The same height summed place by place; an independent route."""
    x = _as_ratfunc(x)
    if x.is_zero():
        return Fraction(0)
    return sum((max(log_abs(x, v), 0) for v in support(x, seed)), Fraction(0))


def finite_places_up_to(field, max_degree):
    """Finite places of degree <= max_degree, by degree then coefficients."""
    for P in irreducible_polys_up_to(field, max_degree):
        yield Place(P, check=False)


def sorted_places(places):
    return sorted(places, key=Place.sort_key)
