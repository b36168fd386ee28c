"""Primitive places: where the reduction of beta has exact order Q.

At a finite place v of good reduction with beta v-integral, the reduction of
beta has order Q under the reduced module exactly when

    (1) |phi_Q(beta)|_v < 1, and
    (2) |phi_P(beta)|_v >= 1 for every proper monic divisor P of Q.

The residue order itself is computed by linear algebra: the residue field is
an l-dimensional F_q-space, phi-bar_t is F_q-linear on it, and the first
dependency in the Krylov sequence x, T x, T^2 x, ... is the order.  Searches
compute both and insist that they agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.factor import factor
from .algebra.linalg import first_dependency
from .algebra.places import Place, finite_places_up_to, is_integral, log_abs
from .algebra.poly import Poly, monic_polys_up_to
from .drinfeld import Orbit, good_reduction, reduce
from .errors import CharacterizationMismatch, DomainError
from .heights import NOT_TORSION, torsion_order

KERNEL_DEGREE_GUARD = 12


def mobius(Q):
    """Moebius function on monic polynomials."""
    if Q.is_zero() or not Q.is_monic():
        raise DomainError("the Moebius function takes monic polynomials")
    if Q.degree == 0:
        return 1
    fac = factor(Q)
    if any(m > 1 for _, m in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def monic_divisors(Q):
    """All monic divisors of Q, sorted by degree then coefficients."""
    fac = factor(Q)
    divs = [Poly(Q.field, [1])]
    for P, m in fac.factors:
        divs = [d * P ** k for d in divs for k in range(m + 1)]
    return sorted(divs, key=Poly.sort_key)


def proper_monic_divisors(Q):
    Qm = Q.monic()
    return [P for P in monic_divisors(Q) if P != Qm]


# --- residue modules -----------------------------------------------------------

def _vector(x, l):
    codes = x.codes
    return list(codes) + [0] * (l - len(codes))


def residue_order(R, x):
    """Minimal monic Q with phi-bar_Q(x) = 0, from the Krylov sequence of x."""
    field = R.module.field
    x = x % R.prime
    if x.is_zero():
        return Poly(field, [1])
    seq = []
    y = x
    for _ in range(R.l + 1):
        seq.append(_vector(y, R.l))
        y = R.apply_t(y)
    rel = first_dependency(field, seq)
    if rel is None:
        raise AssertionError("l + 1 vectors in an l-dimensional space must be dependent")
    return Poly(field, rel)


def residue_order_bruteforce(R, x, max_degree=None):
    """First monic P in (degree, coefficient) order with phi-bar_P(x) = 0."""
    max_degree = R.l if max_degree is None else max_degree
    for P in monic_polys_up_to(R.module.field, max_degree):
        if R.apply(P, x).is_zero():
            return P
    return None


def _guard(R):
    if R.l > KERNEL_DEGREE_GUARD:
        raise DomainError(f"residue field of degree {R.l} exceeds the enumeration guard")


def kernel_size(R, P):
    """#{x in the residue field : phi-bar_P(x) = 0}, by enumeration."""
    _guard(R)
    return sum(1 for x in R.elements() if R.apply(P, x).is_zero())


def exact_order_count(R, Q):
    """#{x : the order of x is exactly Q}, by enumeration (x = 0 has order 1)."""
    _guard(R)
    Q = Q.monic()
    return sum(1 for x in R.elements() if residue_order(R, x) == Q)


def order_census(R):
    """Map order -> number of residue elements with that exact order."""
    _guard(R)
    counts = {}
    for x in R.elements():
        Q = residue_order(R, x)
        counts[Q] = counts.get(Q, 0) + 1
    return counts


def mobius_count(R, Q):
    """sum over monic P | Q of mu(Q/P) * kernel_size(P)."""
    return sum(mobius(Q.exact_div(P)) * kernel_size(R, P) for P in monic_divisors(Q))


# --- valuation characterization --------------------------------------------------

def _L(x, v):
    return None if x.is_zero() else log_abs(x, v)


@dataclass
class ValuationEvidence:
    holds: bool
    log_phi_Q: object              # Fraction, or None for phi_Q(beta) = 0
    divisors: list = field(default_factory=list)   # (P, log|phi_P(beta)|_v or None)

    def to_dict(self):
        fmt = lambda x: None if x is None else str(x)  # noqa: E731
        return {
            "holds": self.holds,
            "log_phi_Q": fmt(self.log_phi_Q),
            "divisors": [[str(P), fmt(val)] for P, val in self.divisors],
        }


def _check_admissible(M, beta, v):
    if v.is_infinite:
        raise DomainError("valuation conditions need a finite place")
    if not good_reduction(M, v):
        raise DomainError(f"bad reduction at {v}")
    if not is_integral(beta, v):
        raise DomainError(f"beta is not integral at {v}")


def valuation_conditions(M, beta, Q, v, orbit=None):
    """Conditions (1) and (2) with the valuations that decide them."""
    _check_admissible(M, beta, v)
    orbit = orbit if orbit is not None else Orbit(M, beta)
    lq = _L(orbit.value(Q), v)
    first = lq is None or lq < 0
    divs = []
    second = True
    for P in proper_monic_divisors(Q):
        lp = _L(orbit.value(P), v)
        divs.append((P, lp))
        if lp is None or lp < 0:
            second = False
    return ValuationEvidence(first and second, lq, divs)


# --- searches ---------------------------------------------------------------------

@dataclass
class PrimitiveHit:
    Q: Poly
    place: Place
    residue_order: Poly
    evidence: ValuationEvidence

    def to_dict(self):
        return {
            "Q": str(self.Q),
            "place": self.place.label(),
            "residue_order": str(self.residue_order),
            "evidence": self.evidence.to_dict(),
        }


class PlaceScanner:
    """Per-place data shared by every Q of a search: admissibility and residue orders."""

    def __init__(self, M, beta, S, place_deg_max, check_torsion=True):
        if check_torsion:
            status = torsion_order(M, beta)
            if status is not NOT_TORSION:
                raise DomainError(f"beta = {beta} is not certified non-torsion ({status})")
        self.M, self.beta = M, beta
        self.S = frozenset(S)
        self.orbit = Orbit(M, beta)
        self.places = []
        self.orders = {}
        for v in finite_places_up_to(M.field, place_deg_max):
            if v in self.S or not good_reduction(M, v) or not is_integral(beta, v):
                continue
            R = reduce(M, v)
            self.places.append(v)
            self.orders[v] = residue_order(R, R.residue(beta))
        self.mismatches = 0
        self.pairs_checked = 0

    def hits(self, Q, verify=True):
        """Primitive places for Q; every scanned place is cross-checked when ``verify``."""
        Q = Q.monic()
        out = []
        for v in self.places:
            by_order = self.orders[v] == Q
            if verify or by_order:
                ev = valuation_conditions(self.M, self.beta, Q, v, self.orbit)
                self.pairs_checked += 1
                if ev.holds != by_order:
                    self.mismatches += 1
                    raise CharacterizationMismatch(
                        f"Q = {Q}, v = {v}: residue order {self.orders[v]} but valuation "
                        f"conditions say {ev.holds}")
            if by_order:
                out.append(PrimitiveHit(Q, v, self.orders[v], ev))
        return out


def primitive_place_search(M, beta, Q, S=(), place_deg_max=8, verify=True):
    """Places v outside S of degree <= place_deg_max where beta-bar has order exactly Q."""
    return PlaceScanner(M, beta, S, place_deg_max).hits(Q, verify)


def all_primitive_places(M, beta, Q, S=()):
    """Every primitive place for Q, of any degree.

    A primitive place divides the numerator of phi_Q(beta), so factoring that
    numerator and testing the valuation conditions at each prime is complete.
    Independent of the residue-order scan; used to cross-check it.
    """
    orbit = Orbit(M, beta)
    val = orbit.value(Q)
    if val.is_zero():
        raise DomainError("phi_Q(beta) = 0; beta is torsion")
    S = frozenset(S)
    out = []
    if val.num.degree <= 0:
        return out
    for P in factor(val.num).primes():
        v = Place(P, check=False)
        if v in S or not good_reduction(M, v) or not is_integral(beta, v):
            continue
        if valuation_conditions(M, beta, Q, v, orbit).holds:
            out.append(v)
    return sorted(out, key=Place.sort_key)


@dataclass
class FrontierRow:
    Q: Poly
    first_hit: object     # PrimitiveHit or None
    hit_count: int

    def to_dict(self):
        return {
            "Q": str(self.Q),
            "first_hit": None if self.first_hit is None else self.first_hit.place.label(),
            "hit_count": self.hit_count,
        }


@dataclass
class Frontier:
    rows: list
    empirical_N: int
    pairs_checked: int
    mismatches: int
    hits: list

    def to_dict(self):
        return {
            "empirical_N": self.empirical_N,
            "pairs_checked": self.pairs_checked,
            "mismatches": self.mismatches,
            "rows": [r.to_dict() for r in self.rows],
        }


def schinzel_frontier(M, beta, S=(), qdeg_max=4, place_deg_max=8, qdeg_min=0, verify=True):
    """First primitive place for every monic Q up to qdeg_max.

    The empirical N is one more than the largest degree with a miss (0 when
    nothing is missed).
    """
    scanner = PlaceScanner(M, beta, S, place_deg_max)
    rows, hits = [], []
    worst_miss = -1
    for Q in monic_polys_up_to(M.field, qdeg_max, qdeg_min):
        found = scanner.hits(Q, verify)
        hits.extend(found)
        rows.append(FrontierRow(Q, found[0] if found else None, len(found)))
        if not found:
            worst_miss = max(worst_miss, Q.degree)
    return Frontier(rows, worst_miss + 1, scanner.pairs_checked, scanner.mismatches, hits)


# --- local lemmas at finite places -----------------------------------------------

def one_v_term(M, beta, Q, v, orbit=None):
    """sum over y of exact order Q of log|beta - y|_v, via inclusion-exclusion:
    sum over monic P | Q of mu(Q/P) log|phi_P(beta)|_v (leading coefficients are units)."""
    orbit = orbit if orbit is not None else Orbit(M, beta)
    total = Fraction(0)
    for P in monic_divisors(Q):
        mu = mobius(Q.exact_div(P))
        if mu:
            val = orbit.value(P)
            if val.is_zero():
                raise DomainError("phi_P(beta) = 0; beta is torsion")
            total += mu * log_abs(val, v)
    return total


def util_degree_ok(q, l, extension_degree=1):
    """deg P > log_q([L : F_q(t)] + 1), i.e. q^l - 1 > [L : F_q(t)]."""
    return q ** l - 1 > extension_degree


def in_one_v_set(M, beta, Q, v, S=(), orbit=None):
    """Whether v satisfies conditions (i)-(v) of the admissible set for Q."""
    if v.is_infinite or v in set(S):
        return False
    if not util_degree_ok(M.q, v.degree):
        return False
    if not is_integral(beta, v) or not good_reduction(M, v):
        return False
    orbit = orbit if orbit is not None else Orbit(M, beta)
    lq = _L(orbit.value(Q), v)
    if lq == 0:
        return True
    for P in proper_monic_divisors(Q):
        lp = _L(orbit.value(P), v)
        if lp is None or lp < 0:
            return True
    return False


def one_v_sum(M, beta, Q, S=(), place_deg_max=None):
    """Sum of one_v_term over the admissible places where it can be nonzero.

    A term vanishes unless phi_Q(beta) has positive order at v, so only the
    primes dividing the numerator of phi_Q(beta) are visited.
    """
    orbit = Orbit(M, beta)
    val = orbit.value(Q)
    if val.is_zero():
        raise DomainError("phi_Q(beta) = 0; beta is torsion")
    total = Fraction(0)
    places = []
    if val.num.degree > 0:
        for P in factor(val.num).primes():
            v = Place(P, check=False)
            if place_deg_max is not None and v.degree > place_deg_max:
                continue
            if in_one_v_set(M, beta, Q, v, S, orbit):
                places.append(v)
                total += one_v_term(M, beta, Q, v, orbit)
    return total, places


__all__ = [
    "mobius", "monic_divisors", "proper_monic_divisors", "residue_order",
    "residue_order_bruteforce", "kernel_size", "exact_order_count", "order_census",
    "mobius_count", "valuation_conditions", "ValuationEvidence", "PrimitiveHit",
    "PlaceScanner", "primitive_place_search", "all_primitive_places",
    "schinzel_frontier", "Frontier",
    "FrontierRow", "one_v_term", "one_v_sum", "in_one_v_set", "util_degree_ok",
]
