"""Rank and null space: exact over Q(i) and floating with a pivot threshold."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import QI, to_complex


def _inv(x):
    if isinstance(x, QI):
        return x.inverse()
    return Fraction(1) / x


def _rref(rows: list[list]) -> tuple[list[list], list[int]]:
    a = [list(r) for r in rows]
    if not a:
        return a, []
    ncol = len(a[0])
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = _inv(a[r][c])
        a[r] = [x * inv if x else 0 for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def exact_rank(rows: list[list]) -> int:
    """Rank over the exact field (int, Fraction or QI entries)."""
    return len(_rref(rows)[1])


def exact_nullspace(rows: list[list], ncol: int | None = None) -> list[list]:
    """Basis of ``{x : A x = 0}`` as a list of column vectors."""
    if ncol is None:
        ncol = len(rows[0]) if rows else 0
    a, pivots = _rref(rows)
    free = [c for c in range(ncol) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncol
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = -a[i][f]
        basis.append(v)
    return basis


def mod_rank(rows: list[list[int]], prime: int = 2**61 - 1) -> int:
    """Rank over GF(prime); a lower bound for the rational rank, equal generically."""
    a = [[x % prime for x in r] for r in rows]
    if not a:
        return 0
    ncol = len(a[0])
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], prime - 2, prime)
        a[r] = [(x * inv) % prime for x in a[r]]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % prime for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


@dataclass
class FloatRank:
    rank: int
    pivots: list
    indeterminate: bool
    min_accepted: float
    max_rejected: float


def float_rank(mat, threshold: float = 1e-8, margin: float = 1e2) -> FloatRank:
    """Rank by Gaussian elimination with complete pivoting.

    The matrix is scaled so its largest entry is 1. Pivots at or below
    ``threshold`` are treated as zero. The result is flagged indeterminate
    when an accepted pivot lies within ``margin`` of the threshold or a
    rejected pivot lies within ``margin`` below it.
    """
    a = np.array([[to_complex(x) for x in r] for r in mat], dtype=complex) if not isinstance(mat, np.ndarray) else mat.astype(complex)
    if a.size == 0:
        return FloatRank(0, [], False, np.inf, 0.0)
    scale = np.max(np.abs(a))
    if scale == 0:
        return FloatRank(0, [], False, np.inf, 0.0)
    a = a / scale
    m, n = a.shape
    pivots = []
    rank = 0
    for k in range(min(m, n)):
        sub = np.abs(a[k:, k:])
        idx = np.unravel_index(np.argmax(sub), sub.shape)
        val = sub[idx]
        if val <= threshold:
            break
        i, j = idx[0] + k, idx[1] + k
        a[[k, i]] = a[[i, k]]
        a[:, [k, j]] = a[:, [j, k]]
        pivots.append(float(val))
        a[k + 1 :, k:] -= np.outer(a[k + 1 :, k] / a[k, k], a[k, k:])
        rank += 1
    rest = np.abs(a[rank:, rank:])
    max_rejected = float(rest.max()) if rest.size else 0.0
    min_accepted = min(pivots) if pivots else np.inf
    indet = min_accepted < threshold * margin or max_rejected > threshold / margin
    return FloatRank(rank, pivots, bool(indet), min_accepted, max_rejected)
