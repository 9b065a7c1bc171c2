"""Exact rewriting engine for the supercharge algebra."""

from .coeff import I, QI, CoeffExpr, sym
from .library import build, sigma
from .operator import OperatorExpr, anticommutator, commutator, multiply
from .suite import IdentityResult, format_report, verify_suite

__all__ = [
    "I", "QI", "CoeffExpr", "sym", "build", "sigma", "OperatorExpr",
    "anticommutator", "commutator", "multiply", "IdentityResult", "format_report", "verify_suite",
]
