from .certify import certify_farness, certify_farness_sampled, correlation
from .instances import Instance, InstanceKind, haar_random_function
from .polynomial import (
    PolynomialSpec,
    evaluate,
    evaluate_all,
    monomial_values,
    monomials,
    parse_polynomial,
    phase_function,
    random_polynomial,
    reduce_exponent,
)

__all__ = [
    "Instance",
    "InstanceKind",
    "PolynomialSpec",
    "certify_farness",
    "certify_farness_sampled",
    "correlation",
    "evaluate",
    "evaluate_all",
    "haar_random_function",
    "monomial_values",
    "monomials",
    "parse_polynomial",
    "phase_function",
    "random_polynomial",
    "reduce_exponent",
]
