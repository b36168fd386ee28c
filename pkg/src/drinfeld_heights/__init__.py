"""Heights and integrality for Drinfeld modules over F_q(t), in exact arithmetic."""

from .algebra import *  # noqa: F401,F403
from .drinfeld import (DrinfeldModule, Orbit, ResidueModule, TwistedPoly, gamma,
                       good_reduction, log_abs_gamma, normalize_integral, phi_of, phi_value,
                       reduce)
from .equidist import (convergence_table, excluded_average, fixed_q_global_sum,
                       per_place_target, torsion_average)
from .errors import CharacterizationMismatch, ConfigError, DomainError, PrecisionExhausted
from .heights import (NOT_TORSION, UNDECIDED, global_height, local_height,
                      naive_height_sequence, torsion_order)
from .schinzel import (kernel_size, mobius, primitive_place_search, residue_order,
                       schinzel_frontier, valuation_conditions)
from .siegel import is_S_integral, scan_siegel

__version__ = "0.1.0"
