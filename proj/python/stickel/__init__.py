"""Stickelberger annihilators, Solomon elements and p-adic L-values of real abelian fields."""

from ._core import (
    PrecisionError,
    analytic_valuation,
    annihilate,
    crosscheck,
    field_degree,
    golden_tables,
    lambda_coeff,
    run_golden,
    smallest_primitive_root,
)

__all__ = [
    "PrecisionError",
    "analytic_valuation",
    "annihilate",
    "crosscheck",
    "field_degree",
    "golden_tables",
    "lambda_coeff",
    "run_golden",
    "smallest_primitive_root",
]
