"""Factorization of polynomials over F_q.

Squarefree decomposition, distinct-degree splitting and Cantor-Zassenhaus
equal-degree splitting.  Small pieces (degree < 4) are split by trial
division instead, which keeps the common case deterministic.  The random
choices of the equal-degree step come from a seeded ``random.Random``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import DomainError
from .poly import Poly, monic_polys

TRIAL_DIVISION_BELOW = 4


@dataclass(frozen=True)
class Factorization:
    """f = lead * prod(P^m for P, m in factors), factors sorted by sort_key."""

    lead: int
    factors: tuple

    def expand(self, field):
        out = Poly.constant(field, self.lead)
        for prime, mult in self.factors:
            out = out * prime ** mult
        return out

    def primes(self):
        return [prime for prime, _ in self.factors]

    def multiplicity(self, prime):
        for P, m in self.factors:
            if P == prime:
                return m
        return 0

    def __str__(self):
        field_lead = self.factors[0][0].field.format_code(self.lead) if self.factors \
            else str(self.lead)
        parts = [] if self.lead == 1 and self.factors else [field_lead]
        for P, m in self.factors:
            text = f"({P})" if P.degree > 1 or P.coeff(0) else str(P)
            parts.append(text if m == 1 else f"{text}^{m}")
        return "*".join(parts)


def pth_root(f):
    """The polynomial g with g^p = f; f must be a polynomial in t^p."""
    field = f.field
    p = field.p
    codes = f.codes
    if any(c for k, c in enumerate(codes) if k % p):
        raise DomainError("polynomial is not a p-th power")
    return Poly(field, [field.pth_root(c) for c in codes[::p]])


def squarefree_decomposition(f):
    """List of (g, m) with monic f = prod g^m, each g squarefree, pairwise coprime."""
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    out = []
    c = f.gcd(f.derivative())
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        z = w.exact_div(y)
        if not z.is_one():
            out.append((z, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if not c.is_one():
        p = f.field.p
        out.extend((g, m * p) for g, m in squarefree_decomposition(pth_root(c)))
    return out


def distinct_degree(f):
    """Split a monic squarefree f into (g_d, d), g_d the product of its degree-d factors."""
    field = f.field
    t = Poly.t(field)
    out = []
    h = t
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(field.q, f)
        g = f.gcd(h - t)
        if not g.is_one():
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _trial_split(f):
    """Irreducible factors of a squarefree monic f of small degree."""
    found = []
    rest = f
    for deg in range(1, f.degree // 2 + 1):
        for cand in monic_polys(f.field, deg):
            if rest.degree < 2 * deg:
                break
            if (rest % cand).is_zero():
                found.append(cand)
                rest = rest.exact_div(cand)
    if rest.degree > 0:
        found.append(rest)
    return found


def _random_poly(field, below, rng):
    return Poly(field, [rng.randrange(field.q) for _ in range(below)])


def equal_degree(f, d, rng):
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    if f.degree == d:
        return [f]
    if f.degree < TRIAL_DIVISION_BELOW:
        return _trial_split(f)
    field = f.field
    while True:
        a = _random_poly(field, f.degree, rng)
        if a.degree < 1:
            continue
        if field.p == 2:
            # absolute trace from F_{q^d} down to F_2 splits the factors
            b, acc = a % f, a % f
            for _ in range(field.e * d - 1):
                b = b.mul_mod(b, f)
                acc = acc + b
            g = f.gcd(acc)
        else:
            g = f.gcd(a.pow_mod((field.q ** d - 1) // 2, f) - 1)
        if 0 < g.degree < f.degree:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor(f, seed=0):
    """Factorization of a nonzero polynomial into monic irreducibles."""
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    counts = {}
    for part, mult in squarefree_decomposition(f):
        for piece, d in distinct_degree(part):
            if piece.degree < TRIAL_DIVISION_BELOW:
                primes = _trial_split(piece)
            else:
                primes = equal_degree(piece, d, rng)
            for P in primes:
                counts[P] = counts.get(P, 0) + mult
    factors = tuple(sorted(counts.items(), key=lambda pm: pm[0].sort_key()))
    return Factorization(f.lead, factors)


def trial_factor(f):
    """Brute-force factorization by trial division; slow, used as a cross-check."""
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    lead = f.lead
    rest = f.monic()
    counts = {}
    deg = 1
    while rest.degree >= 2 * deg:
        for cand in monic_polys(f.field, deg):
            while rest.degree >= deg and (rest % cand).is_zero():
                counts[cand] = counts.get(cand, 0) + 1
                rest = rest.exact_div(cand)
        deg += 1
    if rest.degree > 0:
        counts[rest] = counts.get(rest, 0) + 1
    factors = tuple(sorted(counts.items(), key=lambda pm: pm[0].sort_key()))
    return Factorization(lead, factors)
