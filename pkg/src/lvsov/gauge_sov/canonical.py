"""Poisson brackets of separated variables by implicit differentiation."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..poly_core.poly import PolyMatrix, UniPoly
from ..poly_core.scalars import Dual, to_complex
from .recipes import NonGenericPoint
from .separation import eigenvalue_at, separation, separation_polynomial


@dataclass
class CanonicalReport:
    """Brackets among separated variables.

    ``zw[i, j]`` is ``{z_i, w_j}``; ``deviation`` is the largest relative
    deviation from ``{z_i, z_j} = 0`` and ``{z_i, w_j} = 2 delta_ij z_i w_i``.
    """

    z: np.ndarray
    w: np.ndarray
    zz: np.ndarray
    zw: np.ndarray
    ww: np.ndarray
    deviation: float
    skipped: list = field(default_factory=list)

    def passed(self, tol: float = 1e-6) -> bool:
        return self.deviation <= tol and not self.skipped

    @property
    def ratios(self) -> np.ndarray:
        """``{z_i, w_i} / (z_i w_i)``, ideally 2."""
        return np.diag(self.zw) / (self.z * self.w)


def _grad(d, n: int) -> np.ndarray:
    if not isinstance(d, Dual):
        return np.zeros(n, dtype=complex)
    g = np.zeros(n, dtype=complex)
    for k, v in d.grad.items():
        g[k] = v
    return g


def _eval_dual(p: UniPoly, z):
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def canonical_bracket_check(T_dual: PolyMatrix, poisson: np.ndarray, sep_index: int,
                            root_tol: float = 1e-8) -> CanonicalReport:
    """Brackets ``{z_i, z_j}``, ``{z_i, w_j}``, ``{w_i, w_j}`` at one phase-space point.

    Parameters
    ----------
    T_dual : PolyMatrix
        Monodromy matrix whose coefficients are float duals in the phase
        variables ``x_0..x_{n-1}``.
    poisson : ndarray
        Poisson tensor ``{x_a, x_b}`` at the point.
    sep_index : int
        Normalization index of the separation.
    root_tol : float
        Roots with ``|B'(z_i)|`` below this (relative) are skipped as near-multiple.
    """
    n = poisson.shape[0]
    T_val = T_dual.map(lambda c: c.val if isinstance(c, Dual) else c)
    sep = separation(T_val, sep_index=sep_index)
    B = separation_polynomial(T_dual, sep_index)
    dB = UniPoly([to_complex(c) for c in B.coeffs]).derivative()
    scale = max(abs(to_complex(c)) for c in B.coeffs)
    zs, ws, Gz, Gw, skipped = [], [], [], [], []
    for z in sep.roots:
        bz = _eval_dual(B, complex(z))
        slope = complex(dB(z))
        if abs(slope) * max(1.0, abs(z)) < root_tol * scale:
            skipped.append((complex(z), "near-multiple root"))
            continue
        gz = -_grad(bz, n) / slope
        zd = Dual(complex(z), {k: v for k, v in enumerate(gz) if v})
        Tz = [[_eval_dual(T_dual[i, j], zd) if T_dual[i, j].coeffs else 0 for j in range(T_dual.n)]
              for i in range(T_dual.n)]
        try:
            w = eigenvalue_at(Tz, sep_index)
        except NonGenericPoint as exc:
            skipped.append((complex(z), str(exc)))
            continue
        zs.append(complex(z))
        ws.append(to_complex(w))
        Gz.append(gz)
        Gw.append(_grad(w, n))
    Gz, Gw = np.array(Gz).reshape(-1, n), np.array(Gw).reshape(-1, n)
    zz = Gz @ poisson @ Gz.T
    zw = Gz @ poisson @ Gw.T
    ww = Gw @ poisson @ Gw.T
    z, w = np.array(zs), np.array(ws)
    dev = 0.0
    if len(z):
        sz, sw = np.abs(z), np.abs(w)
        dev = max(
            float(np.max(np.abs(zz) / np.outer(sz, sz))),
            float(np.max(np.abs(zw - 2 * np.diag(z * w)) / np.outer(sz, sw))),
            float(np.max(np.abs(ww) / np.outer(sw, sw))),
        )
    return CanonicalReport(z, w, zz, zw, ww, dev, skipped)
