"""Truncated expansions in the completion of F_q(t) at a place.

An element is stored as pi^m * u with pi the uniformizer (P at a finite
place, s = 1/t at infinity) and u a unit known modulo pi^rel.  At a finite
place u is a polynomial in t reduced mod P^rel; at infinity u is a
polynomial in s reduced mod s^rel.  ``rel`` never exceeds the window W.

Only what orbit iteration needs is provided: products, sums, the q-power
Frobenius and exact valuations.  A sum that cancels every known digit
raises PrecisionExhausted rather than guessing.
"""

from __future__ import annotations

from ..algebra.poly import Poly
from ..errors import DomainError, PrecisionExhausted


class LocalContext:
    """Place v together with a window size W."""

    def __init__(self, place, field, window=64):
        if window < 1:
            raise DomainError("window must be positive")
        self.place = place
        self.field = field
        self.window = window
        self.q = field.q
        self.delta = place.degree
        # uniformizer as a polynomial in the expansion variable
        self.pi = Poly.t(field) if place.is_infinite else place.prime
        self._powers = {0: Poly(field, [1])}

    def pi_power(self, r):
        got = self._powers.get(r)
        if got is None:
            got = self.pi ** r
            self._powers[r] = got
        return got

    def _split(self, f):
        """(k, f / pi^k) for a nonzero polynomial f in the expansion variable."""
        if self.place.is_infinite or self.pi.degree == 1 and self.pi.coeff(0) == 0:
            k = f.low_order()
            return k, Poly(self.field, f.codes[k:])
        k = 0
        pi = self.pi
        while True:
            quo, rem = divmod(f, pi)
            if not rem.is_zero():
                return k, f
            f, k = quo, k + 1

    def from_ratfunc(self, x, rel=None):
        """Expansion of an exact element, to ``rel`` digits (default: the window)."""
        if x.is_zero():
            return None
        rel = self.window if rel is None else min(rel, self.window)
        if self.place.is_infinite:
            num, den = x.num.reverse(), x.den.reverse()
            m = x.den.degree - x.num.degree
        else:
            a, num = self._split(x.num)
            b, den = self._split(x.den)
            m = a - b
        mod = self.pi_power(rel)
        unit = num.mul_mod(den.inverse_mod(mod), mod)
        return LocalElement(self, m, unit, rel)


class LocalElement:
    """pi^m * u with u a unit known modulo pi^rel; immutable."""

    __slots__ = ("ctx", "m", "u", "rel")

    def __init__(self, ctx, m, u, rel):
        self.ctx = ctx
        self.m = m
        self.u = u
        self.rel = rel

    def log_abs(self):
        """log_q |x|_v; exact because the leading digit is known."""
        return -self.m * self.ctx.delta

    def __mul__(self, other):
        ctx = self.ctx
        rel = min(self.rel, other.rel)
        return LocalElement(ctx, self.m + other.m,
                            self.u.mul_mod(other.u, ctx.pi_power(rel)), rel)

    def frobenius(self, k=1):
        """x^(q^k).  Known digits multiply by q^k, capped by the window."""
        if k == 0:
            return self
        ctx = self.ctx
        n = ctx.q ** k
        rel = min(self.rel * n, ctx.window)
        return LocalElement(ctx, self.m * n, self.u.inflate(n) % ctx.pi_power(rel), rel)

    def __add__(self, other):
        if other is None:
            return self
        ctx = self.ctx
        a, b = (self, other) if self.m <= other.m else (other, self)
        shift = b.m - a.m
        if shift > 0:
            rel = min(a.rel, b.rel + shift)
            if shift >= rel:
                return LocalElement(ctx, a.m, a.u % ctx.pi_power(rel), rel)
            mod = ctx.pi_power(rel)
            u = (a.u + b.u * ctx.pi_power(shift)) % mod
            return LocalElement(ctx, a.m, u, rel)
        rel = min(a.rel, b.rel)
        total = (a.u + b.u) % ctx.pi_power(rel)
        if total.is_zero():
            raise PrecisionExhausted(
                f"cancellation consumed all {rel} known digits at {ctx.place}")
        k, unit = ctx._split(total)
        if k >= rel:
            raise PrecisionExhausted(
                f"cancellation consumed all {rel} known digits at {ctx.place}")
        rel -= k
        return LocalElement(ctx, a.m + k, unit % ctx.pi_power(rel), rel)

    __radd__ = __add__

    def __repr__(self):
        return f"LocalElement(m={self.m}, rel={self.rel}, at {self.ctx.place})"


def local_apply(coeffs, x):
    """sum_i a_i x^(q^i) for local coefficient expansions ``coeffs`` (None = 0)."""
    acc = None
    power = x
    for i, a in enumerate(coeffs):
        if i:
            power = power.frobenius(1)
        if a is not None:
            term = a * power
            acc = term if acc is None else acc + term
    return acc
