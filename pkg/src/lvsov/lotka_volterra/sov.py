"""Separated variables of LV(N, L) instances."""
from __future__ import annotations

import numpy as np

from ..gauge_sov.canonical import CanonicalReport, canonical_bracket_check
from ..gauge_sov.recipes import gauge_recipe
from ..gauge_sov.separation import Divisor, divisor
from ..poly_core.poly import char_poly
from .model import dual_T, lv_model, numeric_T


def poisson_tensor(N: int, V) -> np.ndarray:
    """``{V_n, V_m}`` evaluated at ``V``."""
    V = np.asarray(V)
    L = len(V)
    s = lv_model(N, L).structure
    C = s.C[:L, :L] / s.denom
    return C * np.outer(V, V)


def lv_divisor(N: int, V, tol: float = 1e-9) -> Divisor:
    T = numeric_T(N, V)
    cls = lv_model(N, len(V)).cls
    return divisor(T, char_poly(T), cls, tol)


def lv_canonical_check(N: int, V) -> CanonicalReport:
    cls = lv_model(N, len(V)).cls
    return canonical_bracket_check(dual_T(N, V), poisson_tensor(N, V), gauge_recipe(cls).sep_index)


def divisor_trajectory(system, flow, V0, t_end: float, dt: float, method: str = "rk4"):
    """Integrate ``flow`` and separate variables at every sample.

    Returns
    -------
    traj : Trajectory
    F : BiPoly
        Spectral curve at the initial state.
    points : list of ndarray
        Divisor ``(z_j, w_j)`` per sample.
    """
    from .flows import integrate

    traj = integrate(system, flow, V0, t_end, dt, method=method)
    N = system.N
    T0 = numeric_T(N, traj.V[0])
    F = char_poly(T0)
    cls = lv_model(N, system.L).cls
    points = [np.array(divisor(numeric_T(N, V), F, cls, tol=1e-7).points, dtype=complex) for V in traj.V]
    return traj, F, points
