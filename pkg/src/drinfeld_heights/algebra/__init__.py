"""Exact arithmetic over F_q, F_q[t] and F_q(t)."""

from .factor import Factorization, factor, squarefree_decomposition, trial_factor
from .fields import FiniteField, FqElem
from .linalg import IncrementalEliminator, first_dependency
from .parse import parse_place, parse_places, parse_poly, parse_ratfunc
from .places import (
    INFINITY,
    Place,
    finite_places_up_to,
    finite_support,
    is_integral,
    is_unit,
    log_abs,
    ord_v,
    sorted_places,
    support,
    weil_height,
    weil_height_by_places,
)
from .poly import (
    Poly,
    count_irreducible,
    irreducible_polys,
    irreducible_polys_up_to,
    monic_polys,
    monic_polys_up_to,
)
from .ratfunc import RatFunc, common_denominator

__all__ = [
    "Factorization", "factor", "squarefree_decomposition", "trial_factor",
    "FiniteField", "FqElem", "IncrementalEliminator", "first_dependency",
    "parse_place", "parse_places", "parse_poly", "parse_ratfunc",
    "INFINITY", "Place", "finite_places_up_to", "finite_support", "is_integral",
    "is_unit", "log_abs", "ord_v", "sorted_places", "support", "weil_height",
    "weil_height_by_places", "Poly", "count_irreducible", "irreducible_polys",
    "irreducible_polys_up_to", "monic_polys", "monic_polys_up_to", "RatFunc",
    "common_denominator",
]
