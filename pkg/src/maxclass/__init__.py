"""Arithmetic in F2G for 2-groups G of maximal class and computational
checks of the count of solutions of x^2 = 1 in the normalized unit group."""

from .census import (
    CensusReport,
    Method,
    corollary_check,
    count_brute,
    count_proof_decomposition,
    count_structural,
    theta_formula,
)
from .cyclic import AlgElem, CyclicContext, make_context, parse_elem
from .involutions import Involution
from .maximal_class import Family, MCElem, make_group_algebra, mc_mul

__all__ = [
    "AlgElem",
    "CensusReport",
    "CyclicContext",
    "Family",
    "Involution",
    "MCElem",
    "Method",
    "corollary_check",
    "count_brute",
    "count_proof_decomposition",
    "count_structural",
    "make_context",
    "make_group_algebra",
    "mc_mul",
    "parse_elem",
    "theta_formula",
]
