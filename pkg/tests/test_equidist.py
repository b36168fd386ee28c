"""Torsion averages of log|y - beta|_v and their limits."""

from fractions import Fraction

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
)
from drinfeld_heights.drinfeld import DrinfeldModule, evaluate, phi_of
from drinfeld_heights.equidist import (
    convergence_table,
    excluded_average,
    fixed_q_global_sum,
    full_support,
    leading_term_limit,
    per_place_target,
    target_sum,
    torsion_average,
)
from drinfeld_heights.errors import DomainError
from drinfeld_heights.heights import global_height

F2 = FiniteField(2)
F3 = FiniteField(3)
CARLITZ2 = DrinfeldModule.carlitz(F2)
RANK2 = DrinfeldModule(F2, [parse_ratfunc(F2, "t"), parse_ratfunc(F2, "1/t"),
                            parse_ratfunc(F2, "t+1")])


def P(F, s):
    return parse_poly(F, s)


def R(F, s):
    return parse_ratfunc(F, s)


# the Carlitz torsion of these Q is rational: every root lies in {0, 1, t, t+1}
RATIONAL_TORSION = {
    "t": ["0", "t"],
    "t+1": ["0", "t+1"],
    "t^2+t": ["0", "1", "t", "t+1"],
}


def places2():
    return [INFINITY] + list(finite_places_up_to(F2, 2))


@pytest.mark.parametrize("Qtext", sorted(RATIONAL_TORSION))
def test_rational_roots_really_are_the_torsion(Qtext):
    Q = P(F2, Qtext)
    roots = [R(F2, s) for s in RATIONAL_TORSION[Qtext]]
    assert len(roots) == 2 ** Q.degree
    for y in roots:
        assert evaluate(phi_of(CARLITZ2, Q), y).is_zero()


@pytest.mark.parametrize("Qtext", sorted(RATIONAL_TORSION))
@pytest.mark.parametrize("btext", ["1/t", "t^2+t+1", "1/(t^2+t+1)", "t^3"])
def test_average_equals_explicit_sum_over_roots(Qtext, btext):
    Q, beta = P(F2, Qtext), R(F2, btext)
    roots = [R(F2, s) for s in RATIONAL_TORSION[Qtext]]
    for v in places2():
        direct = Fraction(sum(log_abs(y - beta, v) for y in roots), len(roots))
        assert torsion_average(CARLITZ2, beta, Q, v) == direct


@pytest.mark.parametrize("btext", ["1", "t", "t+1"])
def test_excluded_average_for_torsion_beta(btext):
    Q = P(F2, "t^2+t")
    beta = R(F2, btext)
    roots = [R(F2, s) for s in RATIONAL_TORSION["t^2+t"]]
    for v in places2():
        direct = Fraction(sum(log_abs(y - beta, v) for y in roots if y != beta), len(roots))
        assert excluded_average(CARLITZ2, beta, Q, v) == direct
    with pytest.raises(DomainError):
        torsion_average(CARLITZ2, beta, Q, INFINITY)


def test_fixed_q_sum_vanishes():
    for M, beta in ((CARLITZ2, R(F2, "1/t")), (RANK2, R(F2, "(t+1)/t^2")),
                    (DrinfeldModule(F3, [R(F3, "t"), R(F3, "2*t")]), R(F3, "1/(t+2)"))):
        for Q in monic_polys_up_to(M.field, 3):
            if M.field.q == 3 and Q.degree > 2:
                continue
            assert fixed_q_global_sum(M, beta, Q) == 0


def test_targets_for_torsion_points():
    v = Place(P(F2, "t"))
    assert per_place_target(CARLITZ2, R(F2, "t"), v).value == 0
    M = DrinfeldModule(F2, [R(F2, "t"), R(F2, "t")])
    target = per_place_target(M, RatFunc.zero(F2), v)
    assert target.certified
    # a_d = t: log|t|_(t) = -1 and log|t|_inf = 1, over q^d - 1 = 1
    assert target.value == -leading_term_limit(M, v) == 1
    assert per_place_target(M, RatFunc.zero(F2), INFINITY).value == -1


def test_targets_sum_to_global_height():
    for M, beta in ((CARLITZ2, R(F2, "1/t")), (RANK2, R(F2, "(t+1)/t^2")),
                    (CARLITZ2, R(F2, "1/(t^2+t)"))):
        total = target_sum(M, beta, full_support(M, beta))
        h = global_height(M, beta)
        assert total.certified and h.certified
        assert total.value == h.value


def test_convergence_table_carlitz():
    beta = R(F2, "1/t")
    places = full_support(CARLITZ2, beta)
    rows = convergence_table(CARLITZ2, beta, places, 4)
    assert len(rows) == len(places) * sum(2 ** n for n in range(5))
    # at (t) the averages approach the local height 1
    vt = Place(P(F2, "t"))
    for row in rows:
        if row.place == vt:
            assert row.target == 1
            assert row.gap <= Fraction(row.Q.degree + 2, 2 ** row.Q.degree)
    assert all(not row.excluded for row in rows)


def test_convergence_table_torsion_marks_excluded_rows():
    rows = convergence_table(CARLITZ2, RatFunc.one(F2), [INFINITY], 3)
    flagged = {str(row.Q) for row in rows if row.excluded}
    # 1 is killed exactly by the multiples of t^2 + t
    assert flagged == {"t^2+t", "t^3+t^2", "t^3+t"}
    for row in rows:
        assert row.excluded == P(F2, "t^2+t").divides(row.Q)
