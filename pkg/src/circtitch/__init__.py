"""Exact support analysis for convolutions of atomic distributions on the circle."""

from .circle import Arc, angle, arc_contains, arc_sum, lift_into, minimal_covering_arc, rn_orbit
from .cyclotomic import CycloNumber, cyclo_is_zero, cyclotomic_polynomial, root_of_unity
from .distribution import (
    Distribution,
    components,
    convolve,
    convolve_power,
    delta,
    fourier_coeff,
    inf_supp_within,
    reflect,
    restrict,
    shift,
    sup_supp_within,
    symmetrize,
)
from .errors import HypothesisViolation, InputError, TheoremViolation
from .titchmarsh import (
    analyze_pair,
    analyze_power,
    analyze_reflection,
    check_corollary_n2,
    lemma_alpha,
    make_zero_divisors,
    minimal_hull,
)

__version__ = "0.1.0"
