"""Lax monodromy, separation of variables and the extended Lotka-Volterra lattice."""
__version__ = "0.1.0"
