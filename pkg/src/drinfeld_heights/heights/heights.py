"""Local and global canonical heights of points of F_q(t).

Everything is in log-q units.  At a place v let L(x) = log_q |x|_v and
iterate x_{n+1} = phi_t(x_n) from x_0 = beta.

* Escape.  Above the threshold log M_v one step multiplies |x|_v exactly by
  |a_d|_v |x|_v^(q^d - 1), so once L(x_n) > log M_v the local height is
  (L(a_d)/(q^d - 1) + L(x_n)) / q^(dn).
* Bounded orbit.  If the ball {L(x) <= k deg v} is mapped into itself by
  phi_t and contains some x_n, the orbit is bounded and the local height is 0.
  Invariance is decided exactly on finitely many generators of the ball.
  At a finite place with integral coefficients the unit ball (k = 0) is
  always invariant.

An orbit that does neither within the step budget gets value 0 with
``certified = False``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from ..algebra.places import INFINITY, Place, finite_support, log_abs
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc, common_denominator
from ..algebra.linalg import IncrementalEliminator
from ..drinfeld import evaluate
from ..errors import DomainError, PrecisionExhausted
from .local import LocalContext, local_apply

DEFAULT_N_MAX = 64
DEFAULT_WINDOW = 64
EXACT_DEGREE_SWITCH = 256     # iterate exactly while the point has at most this degree
EXACT_DEGREE_LIMIT = 1 << 15  # give up on the exact fallback beyond this degree
PRECISION_RETRIES = 3
BALL_RADII = 12


@dataclass(frozen=True)
class LocalHeight:
    """Value of the local canonical height at one place."""

    place: Place
    value: Fraction
    certified: bool
    escape_index: int | None = None
    n_used: int = 0
    retries: int = 0
    reason: str = ""

    def to_dict(self):
        return {
            "place": self.place.label(),
            "value": str(self.value),
            "numerator": self.value.numerator,
            "denominator": self.value.denominator,
            "certified": self.certified,
            "escape_index": self.escape_index,
            "iterations": self.n_used,
            "precision_retries": self.retries,
            "reason": self.reason,
        }


@dataclass
class GlobalHeight:
    value: Fraction
    certified: bool
    locals: list = field(default_factory=list)

    def __iter__(self):
        # lets callers write ``value, certified = global_height(...)``
        return iter((self.value, self.certified))

    def to_dict(self):
        return {
            "value": str(self.value),
            "certified": self.certified,
            "places": [h.to_dict() for h in self.locals],
        }


def escape_threshold(M, v):
    """log_q M_v = max over i < d of (L(a_i) - L(a_d))/(q^d - q^i), and -L(a_d)/(q^d - 1)."""
    q, d = M.q, M.rank
    lad = log_abs(M.a_d, v)
    best = Fraction(-lad, q ** d - 1)
    for i, a in enumerate(M.coeffs[:-1]):
        if a.is_zero():
            continue
        best = max(best, Fraction(log_abs(a, v) - lad, q ** d - q ** i))
    return best


def escape_value(M, v, n, log_x):
    """(L(a_d)/(q^d - 1) + L(x_n)) / q^(dn), the local height of an escaped orbit."""
    q, d = M.q, M.rank
    return (Fraction(log_abs(M.a_d, v), q ** d - 1) + log_x) / q ** (d * n)


def _uniformizer(v, field):
    if v.is_infinite:
        return RatFunc(Poly(field, [1]), Poly.t(field))
    return RatFunc.from_poly(v.prime)


def ball_is_invariant(M, v, k):
    """Whether phi_t maps {x : L(x) <= k deg v} into itself.

    The ball is spanned over F_q (topologically) by t^j pi^i with j < deg v and
    i >= -k.  For i >= i0 every term a_s (t^j pi^i)^(q^s) already lies in the
    ball, so only -k <= i < i0 needs checking.
    """
    return _ball_is_invariant(M, v, k)


@lru_cache(maxsize=4096)
def _ball_is_invariant(M, v, k):
    field = M.field
    delta = v.degree
    radius = k * delta
    i0 = -k
    for s, a in enumerate(M.coeffs):
        if a.is_zero():
            continue
        i0 = max(i0, -((radius - log_abs(a, v)) // (M.q ** s * delta)))
    pi = _uniformizer(v, field)
    t = RatFunc.t(field)
    basis = [t ** j for j in range(delta)] if v.is_finite else [RatFunc.one(field)]
    for i in range(-k, int(i0)):
        scale = pi ** i
        for b in basis:
            image = evaluate(M.phi_t, b * scale)
            if not image.is_zero() and log_abs(image, v) > radius:
                return False
    return True


class _BallCertifier:
    """Decides whether a point with L(x) = log_x sits in an invariant ball.

    Balls above the escape radius are never invariant, so only radii
    k deg v <= log M_v are tried, largest first, at most BALL_RADII of them.
    """

    def __init__(self, M, v, log_m):
        self.M, self.v = M, v
        self.top = math.floor(log_m / v.degree)

    def certifies(self, log_x):
        k_min = max(-(-log_x // self.v.degree), self.top - BALL_RADII + 1)
        return any(_ball_is_invariant(self.M, self.v, k)
                   for k in range(self.top, int(k_min) - 1, -1))


def _local_orbit_value(M, v, beta, n_max, window, log_m, certifier, start=0, x0=None):
    """Iterate with truncated expansions from x_start; returns a LocalHeight or raises."""
    ctx = LocalContext(v, M.field, window)
    coeffs = [ctx.from_ratfunc(a) for a in M.coeffs]
    x = ctx.from_ratfunc(x0 if x0 is not None else beta)
    for n in range(start, n_max + 1):
        if n > start:
            x = local_apply(coeffs, x)
            if x is None:
                raise PrecisionExhausted("orbit value vanished in a truncated expansion")
        lx = Fraction(x.log_abs())
        if lx > log_m:
            return LocalHeight(v, escape_value(M, v, n, lx), True, n, n)
        if certifier.certifies(lx):
            return LocalHeight(v, Fraction(0), True, None, n,
                               reason="orbit entered an invariant ball")
    return LocalHeight(v, Fraction(0), False, None, n_max,
                       reason="orbit bounded within the step budget")


def _degree(x):
    return max(x.num.degree, x.den.degree)


def local_height(M, beta, v, n_max=DEFAULT_N_MAX, window=DEFAULT_WINDOW,
                 exact_switch=EXACT_DEGREE_SWITCH):
    """Local canonical height of beta at the place v.

    ``exact_switch`` is the degree up to which the orbit is followed exactly
    before truncated expansions take over.
    """
    return _local_height(M, beta, v, n_max, window, exact_switch)


@lru_cache(maxsize=8192)
def _local_height(M, beta, v, n_max, window, exact_switch):
    if beta.is_zero():
        return LocalHeight(v, Fraction(0), True, None, 0, reason="zero point")
    log_m = escape_threshold(M, v)
    certifier = _BallCertifier(M, v, log_m)
    x = beta
    n = 0
    # exact phase: small degrees (and every torsion orbit) stay here
    while True:
        if x.is_zero():
            return LocalHeight(v, Fraction(0), True, None, n, reason="orbit reached 0")
        lx = log_abs(x, v)
        if lx > log_m:
            return LocalHeight(v, escape_value(M, v, n, lx), True, n, n)
        if certifier.certifies(lx):
            return LocalHeight(v, Fraction(0), True, None, n,
                               reason="orbit entered an invariant ball")
        if n >= n_max:
            return LocalHeight(v, Fraction(0), False, None, n,
                               reason="orbit bounded within the step budget")
        if _degree(x) > exact_switch:
            break
        x = evaluate(M.phi_t, x)
        n += 1
    # truncated phase, widening the window on precision loss
    w = window
    for retry in range(PRECISION_RETRIES + 1):
        try:
            out = _local_orbit_value(M, v, beta, n_max, w, log_m, certifier, start=n, x0=x)
            return replace(out, retries=retry)
        except PrecisionExhausted:
            w *= 2
    # exact fallback with a degree guard
    while n < n_max:
        if _degree(x) > EXACT_DEGREE_LIMIT:
            return LocalHeight(v, Fraction(0), False, None, n, PRECISION_RETRIES,
                               reason="precision exhausted and exact degree guard reached")
        x = evaluate(M.phi_t, x)
        n += 1
        if x.is_zero():
            return LocalHeight(v, Fraction(0), True, None, n, PRECISION_RETRIES,
                               reason="orbit reached 0")
        lx = log_abs(x, v)
        if lx > log_m:
            return LocalHeight(v, escape_value(M, v, n, lx), True, n, n, PRECISION_RETRIES)
        if certifier.certifies(lx):
            return LocalHeight(v, Fraction(0), True, None, n, PRECISION_RETRIES,
                               reason="orbit entered an invariant ball")
    return LocalHeight(v, Fraction(0), False, None, n, PRECISION_RETRIES,
                       reason="orbit bounded within the step budget")


def height_support(M, beta):
    """Places that can carry nonzero local height: bad places of M, poles of beta, infinity."""
    places = set(M.bad_places)
    if not beta.is_zero() and beta.den.degree > 0:
        places.update(finite_support(RatFunc.from_poly(beta.den)))
    places.add(INFINITY)
    return sorted(places, key=Place.sort_key)


def global_height(M, beta, n_max=DEFAULT_N_MAX, window=DEFAULT_WINDOW, extra_places=()):
    """Sum of local heights over the support; every other place contributes a certified 0."""
    places = set(height_support(M, beta)) | set(extra_places)
    locals_ = [local_height(M, beta, v, n_max, window)
               for v in sorted(places, key=Place.sort_key)]
    value = sum((h.value for h in locals_), Fraction(0))
    return GlobalHeight(value, all(h.certified for h in locals_), locals_)


def naive_height_sequence(M, beta, n, degree_limit=EXACT_DEGREE_LIMIT):
    """h(phi_{t^k}(beta)) / q^(dk) for k = 0..n, by exact iteration."""
    q, d = M.q, M.rank
    out = []
    x = beta
    for k in range(n + 1):
        if k:
            x = evaluate(M.phi_t, x)
        if _degree(x) > degree_limit:
            raise DomainError(f"degree of phi_(t^{k})(beta) exceeds {degree_limit}")
        h = 0 if x.is_zero() else _degree(x)
        out.append(Fraction(h, q ** (d * k)))
    return out


class TorsionStatus(enum.Enum):
    NOT_TORSION = "not torsion"
    UNDECIDED = "undecided"


NOT_TORSION = TorsionStatus.NOT_TORSION
UNDECIDED = TorsionStatus.UNDECIDED


def torsion_order(M, beta, cap=64, degree_limit=4096, n_max=DEFAULT_N_MAX):
    """Monic generator of the annihilator of beta, NOT_TORSION, or UNDECIDED.

    A certified positive height settles non-torsion at once.  Otherwise the
    F_q-span of beta, phi_t(beta), phi_t^2(beta), ... is built over a common
    denominator and the first linear relation gives the order.
    """
    field = M.field
    if beta.is_zero():
        return Poly(field, [1])
    h = global_height(M, beta, n_max)
    if h.certified and h.value > 0:
        return NOT_TORSION
    orbit = [beta]
    den = beta.den
    elim = IncrementalEliminator(field)
    elim.add(beta.num.codes)
    for _ in range(cap):
        x = evaluate(M.phi_t, orbit[-1])
        if _degree(x) > degree_limit:
            return UNDECIDED
        orbit.append(x)
        if not x.den.divides(den):
            den = common_denominator(orbit)
            elim = IncrementalEliminator(field)
            rel = None
            for y in orbit:
                rel = elim.add((y.num * den.exact_div(y.den)).codes)
                if rel is not None:
                    break
        else:
            rel = elim.add((x.num * den.exact_div(x.den)).codes)
        if rel is not None:
            return Poly(field, rel)
    return UNDECIDED


def is_torsion(M, beta, cap=64):
    return isinstance(torsion_order(M, beta, cap), Poly)


__all__ = [
    "LocalHeight", "GlobalHeight", "escape_threshold", "escape_value",
    "ball_is_invariant", "local_height", "global_height", "height_support",
    "naive_height_sequence", "torsion_order", "TorsionStatus", "NOT_TORSION",
    "UNDECIDED", "is_torsion", "DEFAULT_N_MAX", "DEFAULT_WINDOW",
]
