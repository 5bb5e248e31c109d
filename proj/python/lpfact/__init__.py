"""Largest prime factors of n! + f(n): Wilson sieve, p-adic orders and exact oracles."""

from ._core import (
    DivisibilityFailed,
    Error,
    InvariantFailure,
    MismatchFound,
    PreconditionViolated,
    RangeTooLarge,
    ValueIsZero,
    ValueNotAboveOne,
    audit_window_sum,
    build_intervals,
    eval_poly_mod,
    factor,
    factorial_mod,
    heath_brown_sum,
    is_prime,
    ord_nfact_plus_f,
    p_exact,
    paper_constants,
    primes_in,
    run_cli,
    run_sieve,
    scan_prime,
    target_lambda,
)

__all__ = [
    "DivisibilityFailed",
    "Error",
    "InvariantFailure",
    "MismatchFound",
    "PreconditionViolated",
    "RangeTooLarge",
    "ValueIsZero",
    "ValueNotAboveOne",
    "audit_window_sum",
    "build_intervals",
    "eval_poly_mod",
    "factor",
    "factorial_mod",
    "heath_brown_sum",
    "is_prime",
    "ord_nfact_plus_f",
    "p_exact",
    "paper_constants",
    "primes_in",
    "run_cli",
    "run_sieve",
    "scan_prime",
    "target_lambda",
]
