"""Finite skew braces: gamma functions, annihilators, derived ideals and isoclinism."""

from .brace import (
    SkewBrace,
    check_gfe,
    circ_from_gamma,
    from_left_convention,
    gamma_of,
    trivial_brace,
    validate_brace,
)
from .enumeration import census, dedup_up_to_iso, enumerate_gammas, enumerate_via_holomorph
from .groups import FiniteGroup, automorphism_group, isomorphisms, validate_group
from .isoclinism import (
    Isoclinism,
    brace_isomorphisms,
    check_multiplicative_commutators,
    classify,
    is_isoclinic,
    theorem_invariance_report,
    verify_isoclinism,
)
from .properties import is_biskew_direct, is_biskew_gamma, is_inner, is_lambda_homomorphic
from .structure import annihilator, derived_ideal, quotient_by, star

__version__ = "0.1.0"
