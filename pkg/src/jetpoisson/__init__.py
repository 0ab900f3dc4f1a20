"""Exact verification of Poisson-Lie structures on truncated jet groups,
their Lie-bialgebra / r-matrix counterparts, the induced brackets on
weight-lambda densities, and the quantum semigroups deforming them.

Everything is checked as an exact identity of rational Laurent polynomials;
no floating point anywhere.  The polynomial kernel is compiled when the
extension built from ``_kernel.pyx`` is available and falls back to the pure
Python twin otherwise; ``jetpoisson.backend.BACKEND`` names the one in use.
"""

from .backend import BACKEND
from .coeffpoly import ExactScalar, LaurentPoly, Variable, VarKind, graded_degree, param

__all__ = [
    "BACKEND",
    "ExactScalar",
    "LaurentPoly",
    "Variable",
    "VarKind",
    "graded_degree",
    "param",
]
