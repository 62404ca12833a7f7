"""Log-canonical Poisson structures and the exact bracket."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .laurent import LaurentPoly, from_arrays, small_int_coeffs

_CHUNK = 2_000_000


@dataclass
class BracketStructure:
    """Generators ``g_a`` with ``{g_a, g_b} = C[a][b] * g_a * g_b``.

    Attributes
    ----------
    names : list of str
    C : ndarray of int
        Antisymmetric integer matrix; the rational structure is ``C / denom``.
    denom : int
    p0 : int or None
        Index of the commuting normalization generator, if any.
    constraint : str
        Human-readable relation tying ``p0`` to the other generators. It is
        used for reporting only and never enters arithmetic.
    """

    names: list
    C: np.ndarray
    denom: int = 1
    p0: int | None = None
    constraint: str = ""
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.C = np.asarray(self.C, dtype=np.int64)
        if self.C.shape != (len(self.names),) * 2:
            raise ValueError("structure matrix shape does not match generator count")
        if not np.array_equal(self.C, -self.C.T):
            raise ValueError("structure matrix must be antisymmetric")
        self.index = {n: i for i, n in enumerate(self.names)}

    @classmethod
    def from_rational(cls, names, C, **kw) -> "BracketStructure":
        fr = [[Fraction(x) for x in row] for row in C]
        d = 1
        for row in fr:
            for x in row:
                d = d * x.denominator // math.gcd(d, x.denominator)
        ints = [[int(x * d) for x in row] for row in fr]
        return cls(list(names), np.array(ints, dtype=np.int64), denom=d, **kw)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gen(self, name_or_index, power: int = 1) -> LaurentPoly:
        i = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        return LaurentPoly.generator(self.nvars, i, power)

    def const(self, c) -> LaurentPoly:
        return LaurentPoly.constant(self.nvars, c)

    def zero(self) -> LaurentPoly:
        return LaurentPoly(self.nvars)

    def coefficient(self, a: int, b: int) -> Fraction | int:
        c = int(self.C[a, b])
        return c if self.denom == 1 else Fraction(c, self.denom)

    def bracket(self, f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
        return bracket(f, g, self)


def bracket(f: LaurentPoly, g: LaurentPoly, s: BracketStructure) -> LaurentPoly:
    """Exact bracket from ``{x^a, x^b} = (a^T C b) x^(a+b)`` and bilinearity."""
    nv = s.nvars
    if not f.terms or not g.terms:
        return LaurentPoly(nv)
    ef, cf = f.to_arrays()
    eg, cg = g.to_arrays()
    left = ef @ s.C
    if small_int_coeffs(f) and small_int_coeffs(g):
        cf = np.array(cf, dtype=np.int64)
        cg = np.array(cg, dtype=np.int64)
        bound = int(np.abs(cf).max()) * int(np.abs(cg).max()) * int(np.abs(s.C).max() or 1)
        bound *= int(np.abs(ef).sum(axis=1).max() + 1) * int(np.abs(eg).sum(axis=1).max() + 1)
        if bound * min(len(cf), len(cg)) < 2**62:
            res = _bracket_numpy(left, ef, cf, eg, cg, nv)
            return res if s.denom == 1 else res * Fraction(1, s.denom)
    out: dict = {}
    for i, (ka, va) in enumerate(zip(map(tuple, ef), cf)):
        w_row = eg @ left[i]
        for j in np.flatnonzero(w_row):
            kb = eg[j]
            k = tuple(int(x) for x in (np.asarray(ka) + kb))
            t = va * cg[j] * int(w_row[j])
            out[k] = out.get(k, 0) + t
    res = LaurentPoly(nv, out)
    return res if s.denom == 1 else res * Fraction(1, s.denom)


def _bracket_numpy(left, ef, cf, eg, cg, nv) -> LaurentPoly:
    rows = max(1, _CHUNK // max(len(cg), 1))
    exps_parts, coeff_parts = [], []
    for start in range(0, len(cf), rows):
        sl = slice(start, start + rows)
        W = left[sl] @ eg.T
        ii, jj = np.nonzero(W)
        if len(ii) == 0:
            continue
        coeff_parts.append(cf[sl][ii] * cg[jj] * W[ii, jj])
        exps_parts.append(ef[sl][ii] + eg[jj])
    if not exps_parts:
        return LaurentPoly(nv)
    return from_arrays(nv, np.concatenate(exps_parts), np.concatenate(coeff_parts))


def lv_structure(N: int, L: int) -> BracketStructure:
    """Lattice bracket ``{V_n, V_m} = 2 V_n V_m sum_k (d_{m,n+k} - d_{m,n-k})``.

    Generators are ``V1..VL`` followed by ``P0``, which commutes with all of
    them and stands for ``(prod V_n)^(-1/N)``.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    if L < 2 * N - 1:
        raise ValueError(f"L={L} < 2N-1={2 * N - 1}: the bracket wraps inconsistently")
    C = np.zeros((L + 1, L + 1), dtype=np.int64)
    for n in range(L):
        for k in range(1, N):
            C[n, (n + k) % L] += 2
            C[n, (n - k) % L] -= 2
    names = [f"V{n}" for n in range(1, L + 1)] + ["P0"]
    return BracketStructure(names, C, p0=L, constraint=f"P0^{N} * V1*...*V{L} = 1")


def pq_structure(L: int) -> BracketStructure:
    """Canonical pairs ``{P_n, Q_m} = delta_nm P_n Q_n``; generators ``P1..PL, Q1..QL``."""
    if L < 1:
        raise ValueError("L must be positive")
    C = np.zeros((2 * L, 2 * L), dtype=np.int64)
    for n in range(L):
        C[n, L + n] = 1
        C[L + n, n] = -1
    names = [f"P{n}" for n in range(1, L + 1)] + [f"Q{n}" for n in range(1, L + 1)]
    return BracketStructure(names, C)


def lax_name(site: int, k: int) -> str:
    return f"l{site}_{k}"


def lax_structure(N: int, sites: int) -> BracketStructure:
    """Site variables ``l_n^(k)``, ``k = 0..N``, ``n = 1..sites``.

    Only ``{l^(0), l^(1)} = -l^(0) l^(1)`` and ``{l^(0), l^(N)} = l^(0) l^(N)``
    are nonzero, always within one site.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    names = [lax_name(n, k) for n in range(1, sites + 1) for k in range(N + 1)]
    M = len(names)
    C = np.zeros((M, M), dtype=np.int64)
    for n in range(sites):
        base = n * (N + 1)
        C[base, base + 1] = -1
        C[base + 1, base] = 1
        C[base, base + N] += 1
        C[base + N, base] -= 1
    return BracketStructure(names, C)


def random_monomial(s: BracketStructure, rng: random.Random, span: int = 2) -> LaurentPoly:
    exps = [rng.randint(-span, span) for _ in range(s.nvars)]
    return LaurentPoly.monomial(s.nvars, exps, rng.choice([1, -1, 2, 3]))


def jacobi_residual(f: LaurentPoly, g: LaurentPoly, h: LaurentPoly, s: BracketStructure) -> LaurentPoly:
    """Cyclic sum ``{f,{g,h}} + {g,{h,f}} + {h,{f,g}}``."""
    return (
        bracket(f, bracket(g, h, s), s)
        + bracket(g, bracket(h, f, s), s)
        + bracket(h, bracket(f, g, s), s)
    )


def check_jacobi(s: BracketStructure, rng: random.Random | None = None, trials: int = 3) -> bool:
    rng = rng or random.Random(0)
    for _ in range(trials):
        f, g, h = (random_monomial(s, rng) for _ in range(3))
        if jacobi_residual(f, g, h, s):
            return False
    return True


def generator_brackets(s: BracketStructure, f: LaurentPoly, gens: Sequence[int] | None = None) -> list[LaurentPoly]:
    """``[{x_a, f} for a in gens]``."""
    gens = range(s.nvars) if gens is None else gens
    return [bracket(s.gen(a), f, s) for a in gens]
