"""Residual of the fundamental Poisson relation with the trigonometric r-matrix."""
from __future__ import annotations

from ..poly_core.poly import BiPoly, PolyMatrix
from .structures import BracketStructure, bracket


def r_coefficient(a: int, b: int) -> dict:
    """Entry ``((a,b),(b,a))`` of ``(z - z') r(z/z')`` as ``{(p, q): c}`` in ``z^p z'^q``."""
    if a == b:
        return {(1, 0): 1, (0, 1): 1}
    if a > b:
        return {(1, 0): 2}
    return {(0, 1): 2}


def _acc(out: dict, key, val):
    prev = out.get(key)
    out[key] = val if prev is None else prev + val


def matrix_bracket_residual(T: PolyMatrix, s: BracketStructure, N: int | None = None) -> list[list[BiPoly]]:
    """``(z - z') ({T(z) (x), T(z')} - [r(z/z'), T(z) (x) T(z')])`` cleared of the pole.

    Rows and columns are indexed by pairs ``(i, k)`` flattened as ``i*N + k``;
    each entry is a :class:`BiPoly` in ``(z, z')`` (first exponent is the
    power of ``z``) with Laurent-polynomial coefficients. The relation holds
    iff every entry is the zero polynomial.
    """
    N = T.n if N is None else N
    if T.n != N:
        raise ValueError("matrix size does not match N")
    coeffs = [[list(T[i, j].coeffs) for j in range(N)] for i in range(N)]
    cache: dict = {}

    def br(i, j, k, l):
        key = (i, j, k, l)
        if key not in cache:
            out = {}
            for p, a in enumerate(coeffs[i][j]):
                if not a:
                    continue
                for q, b in enumerate(coeffs[k][l]):
                    if not b:
                        continue
                    val = bracket(a, b, s)
                    if val:
                        out[(p, q)] = val
            cache[key] = out
        return cache[key]

    def outer(x, y):
        out = {}
        for p, a in enumerate(coeffs[x[0]][x[1]]):
            if not a:
                continue
            for q, b in enumerate(coeffs[y[0]][y[1]]):
                if b:
                    out[(p, q)] = a * b
        return out

    rows = []
    for i in range(N):
        for k in range(N):
            row = []
            for j in range(N):
                for l in range(N):
                    acc: dict = {}
                    for (p, q), v in br(i, j, k, l).items():
                        _acc(acc, (p + 1, q), v)
                        _acc(acc, (p, q + 1), -v)
                    # -c(i,k) T_kj(z) T_il(z')
                    prod = outer((k, j), (i, l))
                    for (dp, dq), c in r_coefficient(i, k).items():
                        for (p, q), v in prod.items():
                            _acc(acc, (p + dp, q + dq), v * (-c))
                    # +c(l,j) T_il(z) T_kj(z')
                    prod = outer((i, l), (k, j))
                    for (dp, dq), c in r_coefficient(l, j).items():
                        for (p, q), v in prod.items():
                            _acc(acc, (p + dp, q + dq), v * c)
                    row.append(BiPoly(acc))
            rows.append(row)
    return rows


def residual_is_zero(R: list[list[BiPoly]]) -> bool:
    return all(not e.terms for row in R for e in row)


def residual_size(R: list[list[BiPoly]]) -> int:
    """Total number of surviving monomials across all entries."""
    return sum(len(c) if hasattr(c, "__len__") else 1 for row in R for e in row for c in e.terms.values())
