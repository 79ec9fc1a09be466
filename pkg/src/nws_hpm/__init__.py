"""Homotopy perturbation series for u_t = k u_xx + a u - b u^q in exact arithmetic."""

from .hpm import (
    Problem,
    ProblemError,
    build_problem,
    dump_terms,
    hpm_terms,
    nonlinear_coeff,
    partial_sum,
    partial_sums,
    preset_case,
)
from .oracle import exact_eval, exact_solution, pde_residual, taylor_coeff_numeric
from .report import ErrorTable, build_error_table, relative_error, render_table
from .scalar import IncompatibleExtensionError, Scalar
from .symexpr import EvaluationRangeError, ExpRational, Expr
from .tseries import OrderOverflowError, TSeries

__version__ = "0.1.0"

__all__ = [
    "ErrorTable",
    "EvaluationRangeError",
    "ExpRational",
    "Expr",
    "IncompatibleExtensionError",
    "OrderOverflowError",
    "Problem",
    "ProblemError",
    "Scalar",
    "TSeries",
    "build_error_table",
    "build_problem",
    "dump_terms",
    "exact_eval",
    "exact_solution",
    "hpm_terms",
    "nonlinear_coeff",
    "partial_sum",
    "partial_sums",
    "pde_residual",
    "preset_case",
    "relative_error",
    "render_table",
    "taylor_coeff_numeric",
]
