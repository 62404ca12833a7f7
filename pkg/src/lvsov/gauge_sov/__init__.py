"""Gauge representatives, separation of variables, divisors and linearization probes."""
from .abel import AbelReport, abel_linearity_probe, read_divisor_csv, stencil_derivative, track, write_divisor_csv
from .canonical import CanonicalReport, canonical_bracket_check
from .recipes import (
    GaugeRecipe,
    NonGenericPoint,
    RepresentativeMatrix,
    UnsupportedClass,
    apply_gauge,
    expected_eta,
    gauge_matrix,
    gauge_recipe,
    pattern_violations,
)
from .separation import (
    DimensionReport,
    Divisor,
    DivisorError,
    SeparationResult,
    curve_residual,
    diagonal_conjugate,
    divisor,
    divisor_distance,
    gauge_invariance,
    level_set_dimension,
    one_form_monomials,
    separation,
    separation_polynomial,
    theta_test,
)

__all__ = [
    "AbelReport", "CanonicalReport", "DimensionReport", "Divisor", "DivisorError", "GaugeRecipe",
    "NonGenericPoint", "RepresentativeMatrix", "SeparationResult", "UnsupportedClass",
    "abel_linearity_probe", "apply_gauge", "canonical_bracket_check", "curve_residual",
    "diagonal_conjugate", "divisor", "divisor_distance", "expected_eta", "gauge_invariance",
    "gauge_matrix", "gauge_recipe", "level_set_dimension", "one_form_monomials",
    "pattern_violations", "read_divisor_csv", "separation", "separation_polynomial",
    "stencil_derivative", "theta_test", "track", "write_divisor_csv",
]
