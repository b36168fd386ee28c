"""S-integrality of points of F_q(t) and scans over phi_Q(beta).

For beta, alpha in K and a finite set S of places, beta is S-integral with
respect to alpha when every place v outside S satisfies

    |alpha|_v <= 1  implies  |alpha - beta|_v >= 1,
    |alpha|_v > 1   implies  |beta|_v <= 1.

Since alpha and beta are K-rational, the conjugates in the general definition
are all equal to alpha and beta themselves.  Outside the joint support of
alpha, beta and alpha - beta every absolute value is 1 and both conditions
hold, so only finitely many places need checking.

A stricter variant is available: at every finite place outside S require
|alpha - beta|_v >= 1 and min(|alpha|_v, |beta|_v) <= 1, with the infinite
place exempt.  Reports carry both verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.places import INFINITY, Place, log_abs, support
from .algebra.poly import irreducible_polys, monic_polys, monic_polys_up_to
from .algebra.ratfunc import RatFunc
from .drinfeld import Orbit
from .errors import DomainError
from .heights import NOT_TORSION, UNDECIDED, torsion_order

K_RATIONAL_NOTE = ("alpha and beta lie in F_q(t), so every Galois conjugate equals the "
                   "point itself and the conditions are checked once per place")

ALPHA_INTEGRAL = "|alpha|_v <= 1 but |alpha - beta|_v < 1"
ALPHA_POLE = "|alpha|_v > 1 but |beta|_v > 1"
EQUAL_POINTS = "alpha = beta, so |alpha - beta|_v = 0"


def _L(x, v):
    return None if x.is_zero() else log_abs(x, v)


@dataclass
class IntegralityReport:
    point: RatFunc
    alpha: RatFunc
    S: tuple
    violations: list = field(default_factory=list)   # (Place, condition)
    strict_violations: list = field(default_factory=list)
    checked: list = field(default_factory=list)
    Q: object = None

    @property
    def is_S_integral(self):
        return not self.violations

    @property
    def strict_is_S_integral(self):
        return not self.strict_violations

    @property
    def variants_disagree(self):
        return self.is_S_integral != self.strict_is_S_integral

    def to_dict(self):
        return {
            "Q": None if self.Q is None else str(self.Q),
            "point": str(self.point),
            "alpha": str(self.alpha),
            "is_S_integral": self.is_S_integral,
            "strict_is_S_integral": self.strict_is_S_integral,
            "variants_disagree": self.variants_disagree,
            "violations": [{"place": v.label(), "condition": c} for v, c in self.violations],
            "strict_violations": [{"place": v.label(), "condition": c}
                                  for v, c in self.strict_violations],
            "checked_places": [v.label() for v in self.checked],
        }


def _first_place_outside(field, S, predicate):
    """Smallest place outside S satisfying ``predicate``; all but finitely many
    places satisfy the predicates used here, so the search terminates."""
    if INFINITY not in S and predicate(INFINITY):
        return INFINITY
    deg = 1
    while True:
        for P in irreducible_polys(field, deg):
            v = Place(P, check=False)
            if v not in S and predicate(v):
                return v
        deg += 1


def check_place(beta, alpha, v):
    """Failed condition of the definition at v, or None."""
    la = _L(alpha, v)
    diff = alpha - beta
    if la is None or la <= 0:
        ld = _L(diff, v)
        if ld is None or ld < 0:
            return ALPHA_INTEGRAL if ld is not None else EQUAL_POINTS
        return None
    lb = _L(beta, v)
    if lb is not None and lb > 0:
        return ALPHA_POLE
    return None


def check_place_strict(beta, alpha, v):
    """Failed condition of the strict variant at v, or None."""
    if v.is_infinite:
        return None
    diff = alpha - beta
    ld = _L(diff, v)
    if ld is None:
        return EQUAL_POINTS
    if ld < 0:
        return "|alpha - beta|_v < 1"
    la, lb = _L(alpha, v), _L(beta, v)
    if la is not None and lb is not None and la > 0 and lb > 0:
        return "min(|alpha|_v, |beta|_v) > 1"
    return None


def is_S_integral(beta, alpha, S, Q=None):
    """IntegralityReport for beta with respect to alpha outside S."""
    S = frozenset(S)
    report = IntegralityReport(beta, alpha, tuple(sorted(S, key=Place.sort_key)), Q=Q)
    if beta == alpha:
        field_ = beta.field
        v = _first_place_outside(field_, S, lambda w: _L(alpha, w) is None or _L(alpha, w) <= 0)
        report.violations.append((v, EQUAL_POINTS))
        w = _first_place_outside(field_, S | {INFINITY}, lambda w: True)
        report.strict_violations.append((w, EQUAL_POINTS))
        return report
    places = {INFINITY}
    for x in (alpha, beta, alpha - beta):
        if not x.is_zero():
            places |= support(x)
    for v in sorted(places - S, key=Place.sort_key):
        report.checked.append(v)
        bad = check_place(beta, alpha, v)
        if bad:
            report.violations.append((v, bad))
        bad = check_place_strict(beta, alpha, v)
        if bad:
            report.strict_violations.append((v, bad))
    return report


@dataclass
class SiegelScan:
    beta: RatFunc
    alpha: RatFunc
    S: tuple
    deg_max: int
    hits: list = field(default_factory=list)
    strict_hits: list = field(default_factory=list)
    per_degree: dict = field(default_factory=dict)
    reports: list = field(default_factory=list)
    note: str = K_RATIONAL_NOTE

    @property
    def largest_hit_degree(self):
        return max((Q.degree for Q in self.hits), default=None)

    def to_dict(self, with_reports=True):
        out = {
            "beta": str(self.beta),
            "alpha": str(self.alpha),
            "S": [v.label() for v in self.S],
            "deg_max": self.deg_max,
            "hits": [str(Q) for Q in self.hits],
            "strict_hits": [str(Q) for Q in self.strict_hits],
            "hits_per_degree": {str(k): v for k, v in sorted(self.per_degree.items())},
            "largest_hit_degree": self.largest_hit_degree,
            "disagreements": [str(r.Q) for r in self.reports if r.variants_disagree],
            "note": self.note,
        }
        if with_reports:
            out["reports"] = [r.to_dict() for r in self.reports]
        return out


def check_scan_inputs(M, beta, alpha):
    """beta must be non-torsion and alpha zero or torsion."""
    status = torsion_order(M, beta)
    if status is not NOT_TORSION:
        raise DomainError(f"beta = {beta} is not certified non-torsion ({status})")
    if not alpha.is_zero():
        order = torsion_order(M, alpha)
        if order is NOT_TORSION or order is UNDECIDED:
            raise DomainError(f"alpha = {alpha} must be 0 or a torsion point ({order})")


def scan_siegel(M, beta, alpha, S, deg_max, deg_min=1, check_inputs=True):
    """All monic Q with deg_min <= deg Q <= deg_max such that phi_Q(beta) is
    S-integral with respect to alpha."""
    if check_inputs:
        check_scan_inputs(M, beta, alpha)
    S = tuple(sorted(set(S), key=Place.sort_key))
    orbit = Orbit(M, beta)
    scan = SiegelScan(beta, alpha, S, deg_max)
    for n in range(deg_min, deg_max + 1):
        scan.per_degree[n] = 0
        for Q in monic_polys(M.field, n):
            report = is_S_integral(orbit.value(Q), alpha, S, Q=Q)
            scan.reports.append(report)
            if report.is_S_integral:
                scan.hits.append(Q)
                scan.per_degree[n] += 1
            if report.strict_is_S_integral:
                scan.strict_hits.append(Q)
    return scan


# --- finite-place lower bounds -----------------------------------------------

def nice_trick_margins(M, beta, alpha, w, deg_max, deg_min=0):
    """For each degree k, min over monic Q of degree k of
    log|phi_Q(beta) - alpha|_w - log|Q|_w."""
    orbit = Orbit(M, beta)
    out = {}
    for n in range(deg_min, deg_max + 1):
        best = None
        for Q in monic_polys(M.field, n):
            diff = orbit.value(Q) - alpha
            if diff.is_zero():
                raise DomainError("phi_Q(beta) = alpha, so beta is torsion")
            m = log_abs(diff, w) - log_abs(RatFunc.from_poly(Q), w)
            best = m if best is None else min(best, m)
        out[n] = best
    return out


@dataclass
class IdealData:
    """The polynomials F with log|phi_F(beta)|_w < -deg w, seen up to some degree."""
    place: Place
    generator: object          # monic gcd of the observed members, or None
    members: list
    log_constant: Fraction     # log of the lower-bound constant


def small_value_ideal(M, beta, w, deg_max):
    """Members of {F monic : |phi_F(beta)|_w < |P|_w} up to deg_max and their gcd."""
    orbit = Orbit(M, beta)
    cut = -w.degree
    members = []
    for F in monic_polys_up_to(M.field, deg_max, 1):
        val = orbit.value(F)
        if val.is_zero():
            raise DomainError("beta is torsion")
        if log_abs(val, w) < cut:
            members.append(F)
    gen = None
    for F in members:
        gen = F if gen is None else gen.gcd(F)
    if gen is None:
        const = Fraction(cut)
    else:
        const = min(Fraction(cut), log_abs(orbit.value(gen), w))
    return IdealData(w, gen, members, const)


def ideal_is_closed(M, beta, w, deg_max):
    """The observed member set equals the set of monic multiples of its gcd up to deg_max."""
    data = small_value_ideal(M, beta, w, deg_max)
    if data.generator is None:
        return True, data
    expected = [F for F in monic_polys_up_to(M.field, deg_max, 1) if data.generator.divides(F)]
    return expected == data.members, data
