"""Independent reference computations used to cross-check the package.

Nothing here imports the algorithms under test; only plain numpy, fractions
and itertools are used.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def leibniz_det(M):
    """Determinant of a matrix of coefficient lists by the permutation expansion."""
    n = len(M)
    total = [0]
    for p in itertools.permutations(range(n)):
        term = [perm_sign(p)]
        for i in range(n):
            term = poly_mul(term, M[i][p[i]])
        total = poly_add(total, term)
    return trim(total)


def rational_rank(rows) -> int:
    """Rank over Q by plain Gaussian elimination on Fractions."""
    A = [[Fraction(x) for x in r] for r in rows]
    rank, ncol = 0, len(A[0]) if A else 0
    for c in range(ncol):
        piv = next((r for r in range(rank, len(A)) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c] != 0:
                f = A[r][c] / A[rank][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def lv_structure_matrix(N: int, L: int) -> np.ndarray:
    """``C[a, b]`` in ``{V_a, V_b} = C[a, b] V_a V_b`` for the extended lattice."""
    C = np.zeros((L, L), dtype=int)
    for n in range(L):
        for k in range(1, N):
            C[n, (n + k) % L] += 1
            C[(n + k) % L, n] -= 1
    return C


def center_dimension(N: int, L: int) -> int:
    """Number of independent Casimir monomials: the corank of the structure matrix."""
    return L - rational_rank(lv_structure_matrix(N, L).tolist())


def pick_genus(support) -> int:
    """Interior lattice points of the convex hull by Pick's theorem."""
    pts = sorted(set(support))
    if len(pts) < 3:
        return 0

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    area2 = abs(sum(hull[i][0] * hull[i - 1][1] - hull[i - 1][0] * hull[i][1] for i in range(len(hull))))
    boundary = sum(math.gcd(abs(hull[i][0] - hull[i - 1][0]), abs(hull[i][1] - hull[i - 1][1]))
                   for i in range(len(hull)))
    return (area2 - boundary + 2) // 2


def lv_field(V, N: int) -> np.ndarray:
    """``dV_n/dt = 2 V_n (sum_k V_{n+k} - V_{n-k})``, ``k = 1..N-1``."""
    V = np.asarray(V, dtype=float)
    out = np.zeros_like(V)
    for k in range(1, N):
        out += np.roll(V, -k) - np.roll(V, k)
    return 2 * V * out


def n2_table_genus(L: int) -> int:
    m, r = divmod(L, 2)
    return m - 1 if r == 0 else m


def n3_table_genus(L: int) -> int:
    m, r = divmod(L, 6)
    return {0: 3 * m - 2, 1: 3 * m, 2: 3 * m, 3: 3 * m, 4: 3 * m + 1, 5: 3 * m + 2}[r]


def closed_form_genus(N: int, m: int, n1: int, n2: int) -> int:
    if N == 2:
        return m - 1
    if N == 3:
        return {(1, 1): 3 * m - 2, (2, 2): 3 * m - 3, (1, 3): 3 * m - 3,
                (2, 1): 3 * m - 3, (1, 2): 3 * m - 2, (2, 3): 3 * m - 4}[(n1, n2)]
    assert (n1, n2) == (1, 1)
    return (N - 1) * (N * m - 2) // 2


def hamiltonian_field(H, V, C, h: float = 1e-6) -> np.ndarray:
    """``dV_a/dt = sum_b C_ab V_a V_b dH/dV_b`` with central-difference gradients."""
    V = np.asarray(V, dtype=float)
    grad = np.zeros_like(V)
    for b in range(len(V)):
        e = np.zeros_like(V)
        e[b] = h
        grad[b] = (H(V + e) - H(V - e)) / (2 * h)
    return (np.asarray(C) * np.outer(V, V)) @ grad
