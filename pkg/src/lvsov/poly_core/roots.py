"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .poly import UniPoly
from .scalars import to_complex


class RootError(RuntimeError):
    """Aberth iteration failed to converge; carries the best residuals."""

    def __init__(self, msg: str, roots: np.ndarray, residuals: np.ndarray):
        super().__init__(msg)
        self.roots = roots
        self.residuals = residuals


@dataclass
class Roots:
    """All roots with repetition, plus multiplicity clusters.

    Attributes
    ----------
    values : ndarray of complex
        Every root, repeated by multiplicity; ``len(values) == deg p``.
    clusters : list of (complex, int)
        Cluster centers with their multiplicities.
    residuals : ndarray
        Relative residual ``|p(r)| / sum |c_k| |r|^k`` for each root.
    iterations : int
    """

    values: np.ndarray
    clusters: list = field(default_factory=list)
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))
    iterations: int = 0

    def nonzero(self, tol: float = 0.0) -> np.ndarray:
        return self.values[np.abs(self.values) > tol]

    def __len__(self):
        return len(self.values)


def _coeff_array(p) -> np.ndarray:
    if isinstance(p, UniPoly):
        return np.array([to_complex(c) for c in p.coeffs], dtype=complex)
    return np.asarray(p, dtype=complex)


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    """Points on a circle whose radius is a geometric-mean root-size estimate."""
    n = len(c) - 1
    radius = abs(c[0] / c[-1]) ** (1.0 / n)
    radius = radius if np.isfinite(radius) and radius > 0 else 1.0
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * angles)


def _cluster(roots: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    remaining = list(range(len(roots)))
    out = []
    while remaining:
        i = remaining.pop(0)
        group = [i]
        rad = 1e3 * tol * max(1.0, abs(roots[i]))
        for j in remaining[:]:
            if abs(roots[j] - roots[i]) <= rad:
                group.append(j)
                remaining.remove(j)
        out.append((complex(np.mean(roots[group])), len(group)))
    return out


def _backward_error(z: np.ndarray, desc: np.ndarray) -> float:
    """Relative coefficient error of the monic polynomial rebuilt from ``z``."""
    return float(np.max(np.abs(np.poly(z) - desc)) / np.max(np.abs(desc)))


def _polish(z: np.ndarray, desc: np.ndarray, ddesc: np.ndarray, steps: int = 8) -> np.ndarray:
    """Newton steps on isolated roots, each kept only where it lowers ``|p|``."""
    if len(z) > 1:
        gap = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(gap, np.inf)
        isolated = gap.min(axis=1) > 1e-4 * np.abs(z)
    else:
        isolated = np.ones(len(z), dtype=bool)
    pz = np.abs(np.polyval(desc, z))
    for _ in range(steps):
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = z - np.polyval(desc, z) / np.polyval(ddesc, z)
        pc = np.abs(np.polyval(desc, cand))
        better = isolated & np.isfinite(cand) & (pc < pz)
        if not better.any():
            break
        z = np.where(better, cand, z)
        pz = np.where(better, pc, pz)
    return z


def poly_roots(p, tol: float = 1e-10, max_iter: int = 800) -> Roots:
    """All complex roots of a polynomial.

    Parameters
    ----------
    p : UniPoly or array_like
        Coefficients in ascending degree. Exact coefficients are converted
        to complex floats.
    tol : float
        Relative residual target; multiplicities are decided by clustering
        at distance ``1e3 * tol``.

    Raises
    ------
    RootError
        If the iteration does not converge within ``max_iter`` steps.
    """
    c = _coeff_array(p)
    nz = np.flatnonzero(c)
    if len(nz) == 0:
        raise ValueError("zero polynomial has no finite root set")
    c = c[: nz[-1] + 1]
    if len(c) < 2:
        raise ValueError("polynomial must have degree >= 1")
    zeros_at_origin = int(nz[0])
    core = c[zeros_at_origin:]
    roots = np.zeros(0, dtype=complex)
    it = 0
    if len(core) > 1:
        desc = core[::-1] / core[-1]
        ddesc = np.polyder(desc)
        scale_c = np.abs(desc)
        z = _initial_guesses(core)
        n = len(z)
        for it in range(1, max_iter + 1):
            pz = np.polyval(desc, z)
            dpz = np.polyval(ddesc, z)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = pz / dpz
                step = ratio / (1.0 - ratio * s)
            step = np.where(np.isfinite(step), step, 0.0)
            z = z - step
            # relative to |z| so that roots much smaller than the rest still converge
            if np.all(np.abs(step) <= 1e-15 * np.abs(z) + np.finfo(float).tiny):
                break
        else:
            res = np.abs(np.polyval(desc, z)) / np.polyval(scale_c, np.abs(z))
            if np.max(res) > tol:
                raise RootError(f"Aberth iteration did not converge in {max_iter} steps", z, res)
        if _backward_error(z, desc) > 1e-10:
            # clustered roots can stall the iteration off-centre; the companion
            # eigenvalues are backward stable, keep whichever reproduces p better
            alt = np.roots(desc)
            if _backward_error(alt, desc) < _backward_error(z, desc):
                z = alt.astype(complex)
        polished = _polish(z, desc, ddesc)
        if _backward_error(polished, desc) <= max(_backward_error(z, desc), 1e-15):
            z = polished
        roots = z if n else roots
    vals = np.concatenate([np.zeros(zeros_at_origin, dtype=complex), roots])
    desc_full = c[::-1]
    res = np.abs(np.polyval(desc_full, vals)) / np.maximum(
        np.polyval(np.abs(desc_full), np.abs(vals)), np.finfo(float).tiny
    )
    # per-root residuals are unreliable for roots far below the others in size,
    # so only fail when the root set as a whole also misses p
    if len(res) and np.max(res) > max(tol, 1e-6) and _backward_error(vals, desc_full / desc_full[0]) > 1e-8:
        raise RootError("root residuals exceed tolerance", vals, res)
    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    return Roots(vals, _cluster(vals, tol), res[order], it)
