"""Averages of log|y - beta|_v over the Q-torsion, without finding any roots.

The roots y of phi_Q are the Q-torsion points and phi_Q(x) = gamma_Q prod (x - y),
so sum_y log|y - beta|_v = log|phi_Q(beta)|_v - log|gamma_Q|_v.  When beta is
itself Q-torsion the factor y = beta is dropped; since phi_Q is additive with
derivative Q, the remaining product equals Q / gamma_Q.

All values are exact Fractions in log-q units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra.places import INFINITY, Place, log_abs, support
from .algebra.poly import monic_polys_up_to
from .algebra.ratfunc import RatFunc
from .drinfeld import Orbit, log_abs_gamma
from .errors import DomainError
from .heights import NOT_TORSION, UNDECIDED, height_support, local_height, torsion_order


@dataclass(frozen=True)
class AverageRow:
    Q: object
    place: Place
    average: Fraction
    target: Fraction
    gap: Fraction
    excluded: bool = False   # beta was a root of phi_Q and was left out
    certified: bool = True

    def to_dict(self):
        return {
            "Q": str(self.Q),
            "place": self.place.label(),
            "average": str(self.average),
            "target": str(self.target),
            "gap": str(self.gap),
            "excluded": self.excluded,
            "certified": self.certified,
        }


@dataclass(frozen=True)
class Target:
    value: Fraction
    certified: bool

    def __iter__(self):
        return iter((self.value, self.certified))


def _scale(M, Q):
    return M.q ** (M.rank * Q.degree)


def _orbit_for(M, beta, orbit):
    return orbit if orbit is not None else Orbit(M, beta)


def torsion_average(M, beta, Q, v, orbit=None):
    """(log|phi_Q(beta)|_v - log|gamma_Q|_v) / q^(d deg Q)."""
    value = _orbit_for(M, beta, orbit).value(Q)
    if value.is_zero():
        raise DomainError(f"phi_Q(beta) = 0 for Q = {Q}; use excluded_average")
    return (log_abs(value, v) - log_abs_gamma(M, Q, v)) / _scale(M, Q)


def excluded_average(M, beta, Q, v, orbit=None):
    """Average over the Q-torsion with y = beta left out when beta is a root."""
    value = _orbit_for(M, beta, orbit).value(Q)
    if value.is_zero():
        top = log_abs(RatFunc.from_poly(Q), v)
    else:
        top = log_abs(value, v)
    return (top - log_abs_gamma(M, Q, v)) / _scale(M, Q)


def leading_term_limit(M, v):
    """lim log|gamma_Q|_v / q^(d deg Q) = log|a_d|_v / (q^d - 1)."""
    return Fraction(log_abs(M.a_d, v), M.q ** M.rank - 1)


def per_place_target(M, beta, v, torsion=None, n_max=64):
    """Limit of the averages at v: h_v(beta) - log|a_d|_v/(q^d - 1), or just the
    second term for torsion beta."""
    if torsion is None:
        torsion = _torsion_status(M, beta)
    if torsion is UNDECIDED:
        return Target(-leading_term_limit(M, v), False)
    if torsion is not NOT_TORSION:
        return Target(-leading_term_limit(M, v), True)
    h = local_height(M, beta, v, n_max)
    return Target(h.value - leading_term_limit(M, v), h.certified)


def _torsion_status(M, beta):
    return torsion_order(M, beta)


def convergence_table(M, beta, places, deg_max, deg_min=0, torsion=None):
    """Rows (Q, v, average, target, gap) for all monic Q with deg_min <= deg Q <= deg_max."""
    if torsion is None:
        torsion = _torsion_status(M, beta)
    is_torsion = torsion is not NOT_TORSION and torsion is not UNDECIDED
    orbit = Orbit(M, beta)
    targets = {v: per_place_target(M, beta, v, torsion) for v in places}
    rows = []
    for Q in monic_polys_up_to(M.field, deg_max, deg_min):
        for v in places:
            if is_torsion:
                avg = excluded_average(M, beta, Q, v, orbit)
                excluded = orbit.value(Q).is_zero()
            else:
                avg = torsion_average(M, beta, Q, v, orbit)
                excluded = False
            tgt = targets[v]
            rows.append(AverageRow(Q, v, avg, tgt.value, abs(avg - tgt.value),
                                   excluded, tgt.certified))
    return rows


def fixed_q_global_sum(M, beta, Q, orbit=None):
    """sum over all places of log|phi_Q(beta)|_v - log|gamma_Q|_v; always 0.

    Only places in the support of phi_Q(beta) or a_d can contribute.
    """
    value = _orbit_for(M, beta, orbit).value(Q)
    if value.is_zero():
        raise DomainError("phi_Q(beta) = 0")
    places = support(value) | support(M.a_d) | {INFINITY}
    return sum((log_abs(value, v) - log_abs_gamma(M, Q, v) for v in places), Fraction(0))


def target_sum(M, beta, places):
    """sum_v per_place_target over ``places`` (the a_d terms cancel over a full support)."""
    total, ok = Fraction(0), True
    torsion = _torsion_status(M, beta)
    for v in places:
        value, cert = per_place_target(M, beta, v, torsion)
        total += value
        ok = ok and cert
    return Target(total, ok)


def full_support(M, beta, deg_q_max=0):
    """Places where a target or an average up to the given degree can be nonzero:
    the height support of beta together with the support of a_d."""
    places = set(height_support(M, beta)) | support(M.a_d) | {INFINITY}
    return sorted(places, key=Place.sort_key)


def fitted_constant(rows, deg_fit, rank=1):
    """max over rows with deg Q <= deg_fit of gap * q^(rank deg Q)."""
    best = Fraction(0)
    for row in rows:
        n = row.Q.degree
        if n <= deg_fit:
            best = max(best, row.gap * row.Q.field.q ** (rank * n))
    return best


def gap_violations(rows, constant, deg_lo, deg_hi, rank=1, slope=0):
    """Rows with deg_lo <= deg Q <= deg_hi whose gap exceeds
    (constant + slope * deg Q) / q^(rank deg Q)."""
    out = []
    for row in rows:
        n = row.Q.degree
        if deg_lo <= n <= deg_hi and row.gap * row.Q.field.q ** (rank * n) > constant + slope * n:
            out.append(row)
    return out
