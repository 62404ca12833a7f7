"""Abel-velocity probe: flatness of one-form sums along a divisor trajectory."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..poly_core.poly import BiPoly
from ..poly_core.scalars import to_complex
from .separation import one_form_monomials


class CollisionError(ValueError):
    pass


def track(points: list, min_gap: float = 1e-8) -> tuple[np.ndarray, int | None]:
    """Order divisor points consistently in time by nearest-neighbour matching.

    Parameters
    ----------
    points : list of array-like, shape (g, 2)
        ``(z_i, w_i)`` per sample, in arbitrary order.
    min_gap : float
        Relative separation below which two points count as colliding.

    Returns
    -------
    tracked : ndarray, shape (n, g, 2)
    collision : int or None
        First sample index with a collision; the array is truncated there.
    """
    out = []
    prev = None
    for n, P in enumerate(points):
        P = np.asarray(P, dtype=complex).reshape(-1, 2)
        z = P[:, 0]
        if len(z) > 1:
            gaps = np.abs(z[:, None] - z[None, :])
            np.fill_diagonal(gaps, np.inf)
            if np.min(gaps) < min_gap * max(1.0, float(np.max(np.abs(z)))):
                return np.array(out).reshape(len(out), len(z), 2), n
        if prev is not None:
            if len(P) != len(prev):
                return np.array(out).reshape(len(out), len(prev), 2), n
            cost = np.abs(prev[:, None, 0] - P[None, :, 0])
            _, col = linear_sum_assignment(cost)
            P = P[col]
        out.append(P)
        prev = P
    g = out[0].shape[0] if out else 0
    return np.array(out).reshape(len(out), g, 2), None


def stencil_derivative(x: np.ndarray, dt: float) -> np.ndarray:
    """Fourth-order central differences along axis 0; the two edge samples on each side are dropped."""
    return (x[:-4] - 8 * x[1:-3] + 8 * x[3:-1] - x[4:]) / (12 * dt)


@dataclass
class AbelReport:
    """Per-form flatness ``max_t |v_k(t) - mean| / |mean|``.

    Attributes
    ----------
    monomials : list of (int, int)
        Exponents ``(a, b)`` of ``h_k = z^a w^b``.
    velocities : ndarray, shape (n, g)
    flatness : ndarray, shape (g,)
    truncated : str
        Diagnostic when the trajectory was cut short.
    """

    monomials: list
    t: np.ndarray
    velocities: np.ndarray
    flatness: np.ndarray
    truncated: str = ""
    means: np.ndarray = field(default=None)

    @property
    def max_flatness(self) -> float:
        return float(np.max(self.flatness)) if self.flatness.size else 0.0


def abel_linearity_probe(t: np.ndarray, points: list, F: BiPoly, monomials: list | None = None,
                         floor: float = 1e-12) -> AbelReport:
    """Abel velocities ``v_k = sum_i h_k(z_i, w_i) zdot_i / F_w(z_i, w_i)``.

    Near branch points, where ``F_w`` vanishes, the equivalent form
    ``-h_k wdot_i / F_z`` is used instead.
    ``points`` holds one divisor per uniformly spaced time in ``t``.
    Velocities that vanish identically (stationary data) report zero flatness.
    """
    t = np.asarray(t, dtype=float)
    mons = monomials if monomials is not None else one_form_monomials(F)
    tracked, hit = track(points)
    msg = ""
    if hit is not None:
        msg = f"divisor points collide at t={t[hit]:.6g}; probe truncated"
    n = len(tracked)
    if n < 5:
        return AbelReport(mons, t[:0], np.zeros((0, len(mons))), np.zeros(len(mons)), msg or "too few samples")
    dt = t[1] - t[0]
    z, w = tracked[:, :, 0], tracked[:, :, 1]
    zdot, wdot = stencil_derivative(z, dt), stencil_derivative(w, dt)
    zc, wc = z[2:-2], w[2:-2]
    fw, fz = _eval(F.deriv_w(), zc, wc), _eval(F.deriv_z(), zc, wc)
    # dz/F_w = -dw/F_z on the curve; the second form stays regular at branch points
    use_w = np.abs(fw) >= np.abs(fz)
    rate = np.where(use_w, zdot / np.where(use_w, fw, 1.0), -wdot / np.where(use_w, 1.0, fz))
    v = np.stack([np.sum(zc**a * wc**b * rate, axis=1) for a, b in mons], axis=1)
    means = v.mean(axis=0)
    dev = np.max(np.abs(v - means), axis=0)
    scale = np.abs(means)
    flat = np.where(scale > floor, dev / np.where(scale > floor, scale, 1.0), np.where(dev > floor, np.inf, 0.0))
    return AbelReport(mons, t[2 : n - 2], v, flat, msg, means)


def _eval(P: BiPoly, z: np.ndarray, w: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    for (a, b), c in P.terms.items():
        out = out + to_complex(c) * z**a * w**b
    return out


def write_divisor_csv(path: str, t: np.ndarray, tracked: np.ndarray) -> None:
    """Columns ``t, Re z_i, Im z_i, Re w_i, Im w_i`` for each point ``i``."""
    g = tracked.shape[1] if tracked.ndim == 3 else 0
    header = ["t"]
    for i in range(1, g + 1):
        header += [f"Re z_{i}", f"Im z_{i}", f"Re w_{i}", f"Im w_{i}"]
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(header)
        for k in range(len(tracked)):
            row = [repr(float(t[k]))]
            for z, w in tracked[k]:
                row += [repr(float(z.real)), repr(float(z.imag)), repr(float(w.real)), repr(float(w.imag))]
            wr.writerow(row)


def read_divisor_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    data = np.array([[float(x) for x in r] for r in rows[1:]])
    if data.size == 0:
        return np.zeros(0), np.zeros((0, 0, 2), dtype=complex)
    t = data[:, 0]
    rest = data[:, 1:].reshape(len(t), -1, 4)
    tracked = np.stack([rest[:, :, 0] + 1j * rest[:, :, 1], rest[:, :, 2] + 1j * rest[:, :, 3]], axis=2)
    return t, tracked
