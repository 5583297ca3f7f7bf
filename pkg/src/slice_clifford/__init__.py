"""Exact Clifford-Hermite machinery for the slice Dirac operator.

Polynomials in ``x0`` and ``r = |x_vec|`` with coefficients in the
quaternion-like algebra spanned by ``1, e0, w, w e0`` (``w`` the unit
direction of ``x_vec``) represent axially symmetric Clifford-valued
functions. Everything is computed with exact rationals and symbolic powers
of ``c`` and ``pi``; a separate floating-point oracle cross-checks the
results.
"""

from .clifford_core import Multivector, conjugate, geometric_product
from .exact_scalar import C, PI, ExactScalar, gaussian_moment, gamma_half
from .hermite import (
    A, B, C_const, HermiteConstants, hermite_function, hermite_poly, laguerre_form,
    monogenic, rodrigues,
)
from .inner_product import beta_scan, gram_matrix, inner, sphere_integral
from .kernels import BACKEND
from .operators import apply_D0, apply_euler, apply_slice_laplacian, apply_X, kernel_basis
from .slice_model import DressedFunction, SliceCoeff, SlicePoly, dressed

__version__ = "0.1.0"

__all__ = [
    "A", "B", "BACKEND", "C", "C_const", "DressedFunction", "ExactScalar",
    "HermiteConstants", "Multivector", "PI", "SliceCoeff", "SlicePoly", "apply_D0",
    "apply_X", "apply_euler", "apply_slice_laplacian", "beta_scan", "conjugate",
    "dressed", "gamma_half", "gaussian_moment", "geometric_product", "gram_matrix",
    "hermite_function", "hermite_poly", "inner", "kernel_basis", "laguerre_form",
    "monogenic", "rodrigues", "sphere_integral",
]
