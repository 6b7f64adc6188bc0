"""Exact chart-level computations for log canonical rank one foliations.

Sparse rational polynomials, nilpotency and cycle structure of matrices,
log canonical thresholds of monomial ideals, tangency divisors with
checkable certificates, and degree bookkeeping on weighted projective planes.
"""

from .certificate import certificate_from_json, certificate_to_json, verify_certificate
from .foliation import (
    LOG_CANONICAL,
    NOT_LC,
    TERMINAL,
    VectorField,
    annihilator_fields,
    f_from_matrix,
    gamma_construct,
    linear_part,
    mp_classify,
    omega_contract,
    parse_vector_field,
    select_lambda,
    tangency_determinant,
    validate_pair,
)
from .matrix import RationalMatrix, characteristic_polynomial, classify_special, is_nilpotent, parse_matrix
from .newton import MonomialIdeal, lct_monomial, lct_upper_bound_from_support, newton_membership, parse_ideal
from .poly import INFINITY, Polynomial, parse_polynomial, weighted_lowest_part

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "LOG_CANONICAL",
    "NOT_LC",
    "TERMINAL",
    "MonomialIdeal",
    "Polynomial",
    "RationalMatrix",
    "VectorField",
    "annihilator_fields",
    "certificate_from_json",
    "certificate_to_json",
    "characteristic_polynomial",
    "classify_special",
    "f_from_matrix",
    "gamma_construct",
    "is_nilpotent",
    "lct_monomial",
    "lct_upper_bound_from_support",
    "linear_part",
    "mp_classify",
    "newton_membership",
    "omega_contract",
    "parse_ideal",
    "parse_matrix",
    "parse_polynomial",
    "parse_vector_field",
    "select_lambda",
    "tangency_determinant",
    "validate_pair",
    "verify_certificate",
    "weighted_lowest_part",
]
