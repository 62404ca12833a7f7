"""Patterned monodromy matrices, Lax products and their classification."""
from .classify import ClassificationError, MonodromyMatrix, all_classes, build_T, classify_F, random_T
from .lax import (
    SpectralReport,
    brute_force_classes,
    formula_class,
    lax_from_values,
    lax_product,
    lax_product_class,
    local_lax,
    numeric_lax_product,
    ordered_product,
    verify_spectral_invariants,
)
from .patterns import MonodromyClass, MuPattern, product_residues, mu_pattern

__all__ = [
    "ClassificationError", "MonodromyClass", "MonodromyMatrix", "MuPattern", "SpectralReport",
    "all_classes", "brute_force_classes", "build_T", "classify_F", "formula_class",
    "lax_from_values", "lax_product", "lax_product_class", "product_residues", "local_lax",
    "mu_pattern", "numeric_lax_product", "ordered_product", "random_T", "verify_spectral_invariants",
]
