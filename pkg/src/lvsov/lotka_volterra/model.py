"""The LV(N, L) monodromy matrix, symbolic and numeric."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..monodromy.lax import lax_product_class
from ..monodromy.patterns import MonodromyClass, product_residues
from ..poly_core.poly import PolyMatrix, UniPoly, polymat_det
from ..poly_core.scalars import Dual
from ..symbolic_poisson.laurent import LaurentPoly
from ..symbolic_poisson.structures import BracketStructure, lv_structure


class ConsistencyError(RuntimeError):
    pass


def check_range(N: int, L: int) -> None:
    if N < 2:
        raise ValueError("N must be at least 2")
    if L < 2 * N - 1:
        raise ValueError(f"LV({N},{L}) requires L >= 2N-1 = {2 * N - 1}")


def site_matrix(N: int, v, one=1) -> PolyMatrix:
    """``v * sum_k E_{k,k+1} + z (-1)^(N-1) E_{N,1} + z (-1)^(N-2) E_{N,2}``."""
    rows = [[UniPoly(()) for _ in range(N)] for _ in range(N)]
    for k in range(N - 1):
        rows[k][k + 1] = UniPoly([v])
    s1 = one if (N - 1) % 2 == 0 else -one
    s2 = one if (N - 2) % 2 == 0 else -one
    rows[N - 1][0] = UniPoly([0, s1])
    rows[N - 1][1] = rows[N - 1][1] + UniPoly([0, s2])
    return PolyMatrix(rows)


def raw_product(N: int, values, one=1) -> PolyMatrix:
    """``M_L ... M_2 M_1`` (site 1 acts first)."""
    out = None
    for v in values:
        M = site_matrix(N, v, one)
        out = M if out is None else M @ out
    return out


def reduce_p0(p: LaurentPoly, N: int, L: int) -> LaurentPoly:
    """Canonical form under ``P0^N * V_1 ... V_L = 1``: P0 exponent in ``0..N-1``."""
    out = LaurentPoly(p.nvars)
    for k, c in p.terms.items():
        t = k[L] // N
        kk = tuple(e - t for e in k[:L]) + (k[L] - t * N,)
        out = out + LaurentPoly(p.nvars, {kk: c})
    return out


class LVModel:
    """Symbolic data of LV(N, L).

    Attributes
    ----------
    N, L : int
    structure : BracketStructure
        Lattice bracket on ``V1..VL`` plus the commuting ``P0``.
    cls : MonodromyClass
    raw : PolyMatrix
        ``M_L ... M_1`` with Laurent-polynomial coefficients.
    T : PolyMatrix
        ``P0^(N-1) z^(-m2) M_L ... M_1``.
    """

    def __init__(self, N: int, L: int):
        check_range(N, L)
        self.N, self.L = N, L
        self.structure: BracketStructure = lv_structure(N, L)
        self.cls: MonodromyClass = lax_product_class(N, L)
        _, _, self.m2, _, _, self.k2 = product_residues(N, L)
        s = self.structure
        V = [s.gen(n) for n in range(L)]
        self.raw = raw_product(N, V)
        low = min(e.order() for r in self.raw.rows for e in r if not e.is_zero())
        if low < self.m2:
            raise ConsistencyError(f"negative z-power after shifting by z^-{self.m2}")
        pref = s.gen("P0", N - 1)
        self.T = self.raw.shift(-self.m2).map(lambda c: c * pref)

    @property
    def V(self) -> list[LaurentPoly]:
        return [self.structure.gen(n) for n in range(self.L)]

    def det_check(self) -> bool:
        """``Det T = z^k2`` after reducing by the P0 relation."""
        d = polymat_det(self.T)
        reduced = [reduce_p0(c, self.N, self.L) if c else c for c in d.coeffs]
        target = [0] * self.k2 + [self.structure.const(1)]
        return len(reduced) == len(target) and all(
            (a == b) for a, b in zip(reduced, target)
        )

    def zero_masks(self) -> list[np.ndarray]:
        N = self.N
        return [np.array([[1 if self.T[i, j][p] else 0 for j in range(N)] for i in range(N)], dtype=np.int8)
                for p in range(self.T.degree + 1)]


@lru_cache(maxsize=None)
def lv_model(N: int, L: int) -> LVModel:
    return LVModel(N, L)


def p0_value(V, N: int):
    V = np.asarray(V)
    prod = np.prod(V.astype(complex)) if np.iscomplexobj(V) else np.prod(V)
    if np.isrealobj(V) and prod > 0:
        return float(prod) ** (-1.0 / N)
    return complex(prod) ** (-1.0 / N)


def numeric_T(N: int, V) -> PolyMatrix:
    """Float T_LV at a state; entries are UniPoly with float/complex coefficients."""
    V = list(V)
    L = len(V)
    m2 = L // N
    raw = raw_product(N, [float(v) if np.isrealobj(v) else complex(v) for v in V], one=1.0)
    pref = p0_value(np.array(V), N) ** (N - 1)
    return raw.shift(-m2).map(lambda c: c * pref)


def numeric_T_array(N: int, V) -> np.ndarray:
    """T_LV as an array ``[power, row, col]`` (vectorized, for monitors)."""
    V = np.asarray(V)
    L = len(V)
    dtype = complex if np.iscomplexobj(V) else float
    A = np.zeros((N, N), dtype=dtype)
    for k in range(N - 1):
        A[k, k + 1] = 1
    B = np.zeros((N, N), dtype=dtype)
    B[N - 1, 0] = (-1) ** (N - 1)
    B[N - 1, 1] = (-1) ** (N - 2)
    T = np.zeros((L + 1, N, N), dtype=dtype)
    T[0] = np.eye(N)
    deg = 0
    for v in V:
        new = np.zeros_like(T)
        new[: deg + 1] = (v * A) @ T[: deg + 1]
        new[1 : deg + 2] += B @ T[: deg + 1]
        T = new
        deg += 1
    m2 = L // N
    return T[m2 : deg + 1] * p0_value(V, N) ** (N - 1)


def dual_T(N: int, V) -> PolyMatrix:
    """T_LV with Dual coefficients; variable ``n`` is ``V_{n+1}`` (P0 differentiated as a function of V)."""
    V = list(V)
    L = len(V)
    duals = [Dual.variable(float(v) if np.isrealobj(v) else complex(v), n) for n, v in enumerate(V)]
    raw = raw_product(N, duals, one=1.0)
    p0 = p0_value(np.array(V), N)
    pref_val = p0 ** (N - 1)
    pref = Dual(pref_val, {n: -(N - 1) * pref_val / (N * v) for n, v in enumerate(V)})
    return raw.shift(-(L // N)).map(lambda c: c * pref)
