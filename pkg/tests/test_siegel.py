"""S-integrality reports and scans of phi_Q(beta)."""

import random

import pytest

from drinfeld_heights.algebra import (
    INFINITY,
    FiniteField,
    Place,
    RatFunc,
    finite_places_up_to,
    log_abs,
    monic_polys_up_to,
    parse_poly,
    parse_ratfunc,
    support,
)
from drinfeld_heights.drinfeld import DrinfeldModule, phi_value
from drinfeld_heights.errors import DomainError
from drinfeld_heights.siegel import (
    ALPHA_INTEGRAL,
    EQUAL_POINTS,
    check_place,
    ideal_is_closed,
    is_S_integral,
    nice_trick_margins,
    scan_siegel,
    small_value_ideal,
)

F2 = FiniteField(2)
CARLITZ2 = DrinfeldModule.carlitz(F2)


def P(s):
    return parse_poly(F2, s)


def R(s):
    return parse_ratfunc(F2, s)


VT, VT1 = Place(P("t")), Place(P("t+1"))
ZERO = RatFunc.zero(F2)


def brute_force_integral(beta, alpha, S, max_place_degree=6):
    """The definition checked at every place up to a degree bound (plus infinity)."""
    for v in [INFINITY] + list(finite_places_up_to(F2, max_place_degree)):
        if v in S:
            continue
        la = log_abs(alpha, v) if not alpha.is_zero() else None
        diff = alpha - beta
        ld = log_abs(diff, v) if not diff.is_zero() else None
        if la is None or la <= 0:
            if ld is None or ld < 0:
                return False
        elif not beta.is_zero() and log_abs(beta, v) > 0:
            return False
    return True


def test_report_examples():
    assert is_S_integral(RatFunc.one(F2), ZERO, ()).is_S_integral
    rep = is_S_integral(R("(t+1)^2/t^2"), ZERO, {VT, INFINITY})
    assert not rep.is_S_integral
    assert rep.violations == [(VT1, ALPHA_INTEGRAL)]
    # alpha - beta = (t+1)^2/t: fine at (t), too small at (t+1)
    rep = is_S_integral(R("1/t"), R("t"), {INFINITY})
    assert check_place(R("1/t"), R("t"), VT) is None
    assert rep.violations == [(VT1, ALPHA_INTEGRAL)]
    assert rep.checked == [VT, VT1]


def test_equal_points_are_never_integral():
    rep = is_S_integral(R("t"), R("t"), {VT})
    assert not rep.is_S_integral and rep.violations[0][1] == EQUAL_POINTS
    assert rep.violations[0][0] not in {VT}


def test_report_matches_brute_force_definition():
    rng = random.Random(21)
    places = [INFINITY] + list(finite_places_up_to(F2, 2))
    for _ in range(150):
        beta = RatFunc(parse_poly(F2, "t") ** rng.randrange(3) + rng.randrange(2),
                       P("t+1") ** rng.randrange(2) * P("t^2+t+1") ** rng.randrange(2))
        alpha = rng.choice([ZERO, R("t"), R("1"), R("t+1"), R("1/t")])
        S = {v for v in places if rng.random() < 0.3}
        rep = is_S_integral(beta, alpha, S)
        assert rep.is_S_integral == brute_force_integral(beta, alpha, S)
        assert rep.is_S_integral == (not rep.violations)


def test_strict_variant_exempts_infinity_and_flags_disagreement():
    # 1/t with alpha = 0: at infinity |alpha| <= 1 but |beta| < 1, which only the definition rejects
    rep = is_S_integral(R("1/t"), ZERO, {VT})
    assert not rep.is_S_integral
    assert rep.strict_is_S_integral
    assert rep.variants_disagree



def test_variants_agree_at_finite_places():
    rng = random.Random(22)
    pool = [ZERO, R("1"), R("t"), R("1/t"), R("1/t^2"), R("(t+1)/t"), R("t^2+t+1"), R("1/(t+1)")]
    for _ in range(200):
        beta, alpha = rng.choice(pool[1:]), rng.choice(pool)
        if beta == alpha:
            continue
        rep = is_S_integral(beta, alpha, {INFINITY})
        assert rep.is_S_integral == rep.strict_is_S_integral


def test_scan_carlitz_example():
    scan = scan_siegel(CARLITZ2, R("1/t"), ZERO, {VT, INFINITY}, 6)
    assert all(Q.degree <= 2 for Q in scan.hits)
    assert sum(scan.per_degree.values()) == len(scan.hits)
    assert scan.largest_hit_degree == (max(Q.degree for Q in scan.hits) if scan.hits else None)


def test_scan_with_full_support_hits_everything():
    beta = R("1/t")
    S = {INFINITY}
    for Q in monic_polys_up_to(F2, 2, 1):
        S |= support(phi_value(CARLITZ2, Q, beta))
    scan = scan_siegel(CARLITZ2, beta, ZERO, S, 2)
    assert [str(Q) for Q in scan.hits] == [str(Q) for Q in monic_polys_up_to(F2, 2, 1)]


def test_scan_is_monotone_in_S():
    beta = R("1/(t^2+t)")
    chain = [set(), {INFINITY}, {INFINITY, VT}, {INFINITY, VT, VT1},
             {INFINITY, VT, VT1, Place(P("t^2+t+1"))}]
    previous = None
    for S in chain:
        hits = set(scan_siegel(CARLITZ2, beta, ZERO, S, 4).hits)
        if previous is not None:
            assert previous <= hits
        previous = hits


def test_scan_rejects_bad_inputs():
    with pytest.raises(DomainError):
        scan_siegel(CARLITZ2, R("t"), ZERO, (), 3)      # beta torsion
    with pytest.raises(DomainError):
        scan_siegel(CARLITZ2, R("1/t"), R("1/(t+1)"), (), 3)   # alpha non-torsion


def test_torsion_target_margins_are_bounded_below():
    beta, alpha = R("1/t"), R("t")
    for w in (VT1, Place(P("t^2+t+1")), Place(P("t^3+t+1"))):
        margins = nice_trick_margins(CARLITZ2, beta, alpha, w, 6)
        floor = min(margins[k] for k in range(3))
        assert all(margins[k] >= floor for k in margins)


def test_small_value_ideal_is_closed():
    for w in (VT1, Place(P("t^2+t+1"))):
        closed, data = ideal_is_closed(CARLITZ2, R("1/t"), w, 6)
        assert closed
    data = small_value_ideal(CARLITZ2, R("1/t"), VT1, 6)
    assert data.generator == P("t")
    assert data.log_constant == -2
