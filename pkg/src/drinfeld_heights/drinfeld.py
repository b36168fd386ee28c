"""Twisted polynomials K{tau} and Drinfeld modules over K = F_q(t).

A twisted polynomial sum_i f_i tau^i acts on K as x -> sum_i f_i x^(q^i);
products are compositions, so tau * a = a^q * tau.  A Drinfeld module is
fixed by phi_t = t + a_1 tau + ... + a_d tau^d and extended to every
Q in F_q[t] by Horner's scheme.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .algebra.factor import factor
from .algebra.fields import FiniteField
from .algebra.places import INFINITY, Place, is_integral, is_unit, log_abs, ord_v
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc, common_denominator
from .errors import DomainError


class TwistedPoly:
    """Element of K{tau}; ``coeffs[i]`` multiplies x^(q^i)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = [c if isinstance(c, RatFunc) else _to_ratfunc(field, c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def scalar(cls, field, c):
        return cls(field, [c])

    @classmethod
    def tau(cls, field, k=1):
        zero = RatFunc.zero(field)
        return cls(field, [zero] * k + [RatFunc.one(field)])

    @property
    def degree(self):
        """tau-degree, -1 for zero."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        if not self.coeffs:
            raise DomainError("the zero twisted polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatFunc.zero(self.field)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TwistedPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TwistedPoly(self.field, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return TwistedPoly(self.field, [-c for c in self.coeffs])

    def scale(self, c):
        """Left multiplication by the scalar c (c * f)."""
        return TwistedPoly(self.field, [c * a for a in self.coeffs])

    def __mul__(self, other):
        return tw_mul(self, other)

    def __call__(self, x):
        return evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TwistedPoly({self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if "+" in cs or "/" in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else ("tau" if i == 1 else f"tau^{i}")
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"


def _to_ratfunc(field, c):
    if isinstance(c, Poly):
        return RatFunc.from_poly(c)
    return RatFunc.zero(field) + c


def tw_mul(f, g):
    """Composition f o g: (fg)_k = sum_{i+j=k} f_i g_j^(q^i)."""
    if f.is_zero() or g.is_zero():
        return TwistedPoly(f.field, [])
    out = [RatFunc.zero(f.field)] * (f.degree + g.degree + 1)
    for i, fi in enumerate(f.coeffs):
        if fi.is_zero():
            continue
        for j, gj in enumerate(g.coeffs):
            if gj.is_zero():
                continue
            out[i + j] = out[i + j] + fi * gj.frobenius(i)
    return TwistedPoly(f.field, out)


def evaluate(f, x):
    """sum_i f_i x^(q^i)."""
    acc = RatFunc.zero(f.field)
    if x.is_zero():
        return acc
    power = x
    for i, c in enumerate(f.coeffs):
        if i:
            power = power.frobenius(1)
        if not c.is_zero():
            acc = acc + c * power
    return acc


class DrinfeldModule:
    """The Drinfeld module with phi_t = coeffs[0] + coeffs[1] tau + ... ."""

    def __init__(self, field, coeffs, normalized_from=None):
        if not isinstance(field, FiniteField):
            raise TypeError("field must be a FiniteField")
        coeffs = [c if isinstance(c, RatFunc) else _to_ratfunc(field, c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs or coeffs[0] != RatFunc.t(field):
            raise DomainError("the tau^0 coefficient of phi_t must be t")
        if len(coeffs) < 2:
            raise DomainError("a Drinfeld module needs rank d >= 1")
        self.field = field
        self.q = field.q
        self.phi_t = TwistedPoly(field, coeffs)
        self.rank = len(coeffs) - 1
        self.normalized_from = normalized_from
        self._phi_cache = {}

    @classmethod
    def carlitz(cls, field):
        return cls(field, [RatFunc.t(field), RatFunc.one(field)])

    def __reduce__(self):
        return (DrinfeldModule, (self.field, list(self.coeffs), self.normalized_from))

    @property
    def coeffs(self):
        return self.phi_t.coeffs

    @property
    def a_d(self):
        return self.phi_t.lead

    def __eq__(self, other):
        return isinstance(other, DrinfeldModule) and self.phi_t == other.phi_t

    def __hash__(self):
        return hash(self.phi_t)

    def __repr__(self):
        return f"DrinfeldModule(F_{self.q}, phi_t = {self.phi_t})"

    @cached_property
    def bad_places(self):
        """Finite places where a coefficient is non-integral or a_d is not a unit."""
        primes = set()
        for c in self.coeffs[1:]:
            if c.den.degree > 0:
                primes.update(factor(c.den).primes())
        if self.a_d.num.degree > 0:
            primes.update(factor(self.a_d.num).primes())
        return sorted((Place(P, check=False) for P in primes), key=Place.sort_key)

    @cached_property
    def is_integral(self):
        """All coefficients of phi_t integral at every finite place."""
        return all(c.is_poly() for c in self.coeffs)

    def phi_of(self, Q):
        return phi_of(self, Q)

    def gamma(self, Q):
        return gamma(self, Q)


def phi_of(M, Q):
    """phi_Q via Horner's scheme on the coefficients of Q."""
    if isinstance(Q, int):
        Q = Poly.constant(M.field, Q)
    cached = M._phi_cache.get(Q)
    if cached is not None:
        return cached
    field = M.field
    acc = TwistedPoly(field, [])
    for c in reversed(Q.codes):
        acc = tw_mul(M.phi_t, acc) + TwistedPoly.scalar(field, Poly.constant(field, c))
    if Q.degree <= 6:
        M._phi_cache[Q] = acc
    return acc


def gamma(M, Q):
    """Closed form c * a_d^((q^(d deg Q) - 1)/(q^d - 1)) for the leading coefficient of phi_Q."""
    if Q.is_zero():
        raise DomainError("phi_0 = 0 has no leading coefficient")
    q, d = M.q, M.rank
    exponent = (q ** (d * Q.degree) - 1) // (q ** d - 1)
    return RatFunc.constant(M.field, Q.lead) * M.a_d ** exponent


def log_abs_gamma(M, Q, v):
    """log_q |gamma_Q|_v without forming the (possibly huge) power."""
    q, d = M.q, M.rank
    exponent = (q ** (d * Q.degree) - 1) // (q ** d - 1)
    return exponent * log_abs(M.a_d, v)


def normalize_integral(M):
    """(psi, gamma) with psi_Q = gamma^-1 phi_Q gamma integral at every finite place.

    gamma = B^k with B the product of the primes dividing some denominator of
    phi_t and k the least exponent that clears them all.  Integral modules
    come back unchanged with gamma = 1.
    """
    field = M.field
    q = M.q
    offenders = {}
    for i, c in enumerate(M.coeffs):
        if i == 0 or c.den.degree <= 0:
            continue
        for P in factor(c.den).primes():
            need = -(-(-ord_v(c, Place(P, check=False))) // (q ** i - 1))
            offenders[P] = max(offenders.get(P, 0), need)
    if not offenders:
        return M, RatFunc.one(field)
    B = Poly(field, [1])
    for P in offenders:
        B = B * P
    k = max(offenders.values())
    g = RatFunc.from_poly(B ** k)
    coeffs = [c * g ** (q ** i - 1) for i, c in enumerate(M.coeffs)]
    return DrinfeldModule(field, coeffs, normalized_from=M), g


def good_reduction(M, v):
    """phi_t integral at v with a_d a v-unit; infinite places are always bad."""
    if v.is_infinite:
        raise DomainError("the infinite place is a place of bad reduction")
    return all(is_integral(c, v) for c in M.coeffs) and is_unit(M.a_d, v)


class ResidueModule:
    """Reduction of a Drinfeld module at a finite place of good reduction.

    The residue field F_q[t]/(P) has q^l elements, l = deg P; its elements are
    polynomials of degree < l.
    """

    def __init__(self, module, place):
        self.module = module
        self.place = place
        self.prime = place.prime
        self.l = place.degree
        self.q = module.q
        self.coeffs = tuple(self.residue(c) for c in module.coeffs)
        if self.coeffs[-1].is_zero():
            raise DomainError("reduction lost the leading coefficient")

    @property
    def size(self):
        return self.q ** self.l

    def residue(self, x):
        """Image of a v-integral x in F_q[t]/(P)."""
        if isinstance(x, Poly):
            return x % self.prime
        if x.is_zero():
            return Poly(self.module.field)
        if x.den.ord(self.prime) > 0:
            raise DomainError(f"{x} is not integral at {self.place}")
        return x.num.mul_mod(x.den.inverse_mod(self.prime), self.prime)

    def apply_t(self, x):
        """phi-bar_t(x) = sum_i a_i-bar x^(q^i) in the residue field."""
        P = self.prime
        acc = Poly(self.module.field)
        power = x % P
        for i, c in enumerate(self.coeffs):
            if i:
                power = power.pow_mod(self.q, P)
            if not c.is_zero():
                acc = acc + c.mul_mod(power, P)
        return acc % P

    def apply(self, Q, x):
        """phi-bar_Q(x) = sum_j c_j T^j x with T = phi-bar_t."""
        field = self.module.field
        acc = Poly(field)
        y = x % self.prime
        for j, c in enumerate(Q.codes):
            if j:
                y = self.apply_t(y)
            if c:
                acc = acc + y * Poly.constant(field, c)
        return acc % self.prime

    def elements(self):
        """Every element of the residue field."""
        return residue_elements(self.module.field, self.l)

    def format_residue(self, x):
        """Residue as text, writing g for the class of t."""
        return str(x).replace("t", "g") if self.l > 1 else str(x)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = self.format_residue(c)
            if "+" in cs:
                cs = f"({cs})"
            mono = "x" if i == 0 else f"x^{self.q ** i}"
            terms.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(terms)


def residue_elements(field, l):
    """All polynomials of degree < l (the residue field of a degree-l place)."""
    for codes in itertools.product(range(field.q), repeat=l):
        yield Poly(field, codes[::-1])


def reduce(M, v):
    if v.is_infinite or not good_reduction(M, v):
        raise DomainError(f"{M} has bad reduction at {v}")
    return ResidueModule(M, v)


class Orbit:
    """The points x_j = phi_{t^j}(beta), stored over a common denominator so that
    phi_Q(beta) = sum_j c_j x_j is a cheap F_q-linear combination."""

    def __init__(self, module, beta, max_len=None):
        self.module = module
        self.beta = beta
        self.points = [beta]
        self.max_len = max_len
        self._den = None
        self._nums = None
        self._value_cache = {}

    def point(self, j):
        while len(self.points) <= j:
            if self.max_len is not None and len(self.points) >= self.max_len:
                raise DomainError("orbit length budget exceeded")
            self.points.append(evaluate(self.module.phi_t, self.points[-1]))
            self._den = None
        return self.points[j]

    def _common(self, n):
        self.point(n)
        if self._den is None or len(self._nums) <= n:
            den = common_denominator(self.points)
            self._den = den
            self._nums = [x.num * den.exact_div(x.den) for x in self.points]
        return self._den, self._nums

    def value(self, Q):
        """phi_Q(beta) as a reduced RatFunc."""
        cached = self._value_cache.get(Q)
        if cached is not None:
            return cached
        field = self.module.field
        if Q.is_zero():
            return RatFunc.zero(field)
        den, nums = self._common(Q.degree)
        acc = Poly(field)
        for j, c in enumerate(Q.codes):
            if c:
                acc = acc + nums[j] * Poly.constant(field, c)
        out = RatFunc(acc, den)
        self._value_cache[Q] = out
        return out


def phi_value(M, Q, beta):
    """phi_Q(beta) through the orbit of beta under phi_t."""
    return Orbit(M, beta).value(Q)


def random_module(field, rank, rng, max_deg=2, allow_denominators=False):
    """A random Drinfeld module of the given rank with small coefficients."""
    coeffs = [RatFunc.t(field)]
    for i in range(1, rank + 1):
        while True:
            num = Poly(field, [rng.randrange(field.q) for _ in range(rng.randint(1, max_deg + 1))])
            den = Poly(field, [1])
            if allow_denominators and rng.random() < 0.3:
                den = Poly(field, [rng.randrange(field.q) for _ in range(2)] + [1])
            if i < rank or not num.is_zero():
                break
        coeffs.append(RatFunc(num, den))
    return DrinfeldModule(field, coeffs)


__all__ = [
    "TwistedPoly", "tw_mul", "evaluate", "DrinfeldModule", "phi_of", "gamma",
    "log_abs_gamma", "normalize_integral", "good_reduction", "reduce",
    "ResidueModule", "Orbit", "phi_value", "random_module", "INFINITY",
]
