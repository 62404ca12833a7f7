"""Polynomial algebra over exact Gaussian rationals or complex floats."""
from .linalg import exact_nullspace, exact_rank, float_rank, mod_rank
from .newton import DegeneratePolygon, NewtonPolygon, newton_genus, one_form_numerators
from .poly import BiPoly, PolyMatrix, UniPoly, char_poly, elementary_invariants, polymat_det
from .roots import RootError, Roots, poly_roots
from .scalars import QI, Dual, ModeError, random_qi, scalar_mode

__all__ = [
    "BiPoly", "DegeneratePolygon", "Dual", "ModeError", "NewtonPolygon", "PolyMatrix", "QI",
    "RootError", "Roots", "UniPoly", "char_poly", "elementary_invariants", "exact_nullspace",
    "exact_rank", "float_rank", "mod_rank", "newton_genus", "one_form_numerators",
    "poly_roots", "polymat_det", "random_qi", "scalar_mode",
]
