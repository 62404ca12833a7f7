"""Exact Poisson brackets for log-canonical structures over Laurent polynomials."""
from .laurent import LaurentPoly
from .residual import matrix_bracket_residual, residual_is_zero, residual_size
from .structures import (
    BracketStructure,
    bracket,
    check_jacobi,
    jacobi_residual,
    lax_name,
    lax_structure,
    lv_structure,
    pq_structure,
)

__all__ = [
    "BracketStructure", "LaurentPoly", "bracket", "check_jacobi", "jacobi_residual", "lax_name",
    "lax_structure", "lv_structure", "matrix_bracket_residual", "pq_structure",
    "residual_is_zero", "residual_size",
]
