"""Orbits of the quasi-normed pair (l0, l1): exact criteria, functionals and
explicit sparse operator certificates."""

from .construction import OperatorCertificate, build_orbit_operator, build_prop2_operator
from .functionals import e_functional, e_star, k_eval, k_functional
from .majorization import check_orbit_criterion, check_tail_domination, k_orbit_constant, orbit_constant
from .operators import SparseOperator, apply, compose, l0_expansion_bound, l1_operator_norm
from .sequences import FiniteSequence, SortedProfile, l0_norm, l1_norm, rearrange, tail_sum

__all__ = [
    "FiniteSequence",
    "OperatorCertificate",
    "SortedProfile",
    "SparseOperator",
    "apply",
    "build_orbit_operator",
    "build_prop2_operator",
    "check_orbit_criterion",
    "check_tail_domination",
    "compose",
    "e_functional",
    "e_star",
    "k_eval",
    "k_functional",
    "k_orbit_constant",
    "l0_expansion_bound",
    "l0_norm",
    "l1_norm",
    "l1_operator_norm",
    "orbit_constant",
    "rearrange",
    "tail_sum",
]
