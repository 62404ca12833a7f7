"""Separation polynomials, divisors, the theta test and level-set dimensions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..monodromy.classify import MonodromyMatrix, build_T
from ..monodromy.patterns import MonodromyClass
from ..poly_core.linalg import exact_nullspace, exact_rank, float_rank
from ..poly_core.newton import newton_genus
from ..poly_core.poly import BiPoly, PolyMatrix, UniPoly, _det_cofactor, elementary_invariants
from ..poly_core.roots import poly_roots
from ..poly_core.scalars import Dual, to_complex
from .recipes import NonGenericPoint, gauge_matrix, gauge_recipe, conjugate
from ..poly_core.poly import inverse_scalar


def _split(T: PolyMatrix, a: int):
    """Row ``a`` without its diagonal entry, and the complementary block."""
    idx = [j for j in range(T.n) if j != a]
    b = [T[a, j] for j in idx]
    d = [[T[i, j] for j in idx] for i in idx]
    return b, d


def _vecmat(v, d):
    n = len(d)
    out = []
    for j in range(n):
        acc = UniPoly(()) if isinstance(v[0], UniPoly) else 0
        for k in range(n):
            if v[k] and d[k][j]:
                acc = acc + v[k] * d[k][j]
        out.append(acc)
    return out


def krylov_rows(b, d, count: int) -> list:
    rows = [list(b)]
    for _ in range(count - 1):
        rows.append(_vecmat(rows[-1], d))
    return rows


def separation_polynomial(T: PolyMatrix, sep_index: int) -> UniPoly:
    """``B(z) = Det(b; b d; ...; b d^{N-2})`` for the normalization ``e_{sep_index}``."""
    b, d = _split(T, sep_index - 1)
    K = krylov_rows(b, d, T.n - 1)
    res = _det_cofactor(K)
    return res if isinstance(res, UniPoly) else UniPoly([res])


def eigenvalue_at(T_at_z: list[list], sep_index: int):
    """Eigenvalue whose eigenvector is orthogonal to ``e_{sep_index}``, at a root of B.

    The eigenvector restricted to the complementary block is the common
    kernel of ``b, b d, ..., b d^{N-3}``; its components are signed maximal
    minors, so the formula is polynomial and works for duals as well.
    """
    a = sep_index - 1
    n = len(T_at_z)
    idx = [j for j in range(n) if j != a]
    b = [T_at_z[a][j] for j in idx]
    d = [[T_at_z[i][j] for j in idx] for i in idx]
    rows = krylov_rows(b, d, n - 2) if n > 2 else []
    k = n - 1
    if k == 1:
        psi = [1]
    else:
        psi = []
        for j in range(k):
            sub = [[r[c] for c in range(k) if c != j] for r in rows]
            det = _det_cofactor(sub)
            if isinstance(det, UniPoly):
                det = det[0]
            psi.append(det if j % 2 == 0 else -det)
    mags = [abs(to_complex(p)) for p in psi]
    j = int(np.argmax(mags))
    if mags[j] == 0:
        raise NonGenericPoint("eigenvector component vanishes (non-generic point)")
    dpsi = 0
    for c in range(k):
        if d[j][c] and psi[c]:
            dpsi = dpsi + d[j][c] * psi[c]
    return dpsi / psi[j]


@dataclass
class SeparationResult:
    """Separation data for one monodromy matrix.

    Attributes
    ----------
    B : UniPoly
    B0 : complex
        Leading coefficient of B.
    f : int
        Multiplicity of the root at the origin.
    roots : ndarray
        Nonzero roots ``z_i``.
    eigenvalues : ndarray
        ``w_i`` paired with ``roots``.
    sep_index : int
    """

    B: UniPoly
    B0: complex
    f: int
    roots: np.ndarray
    eigenvalues: np.ndarray
    sep_index: int

    @property
    def g(self) -> int:
        return len(self.roots)


def _as_matrix(T) -> PolyMatrix:
    return T.matrix if isinstance(T, MonodromyMatrix) else T


def origin_order(B: UniPoly, rel_tol: float = 1e-12) -> int:
    """Number of vanishing low-order coefficients (exact zero, or negligible in float mode)."""
    cs = [to_complex(c) for c in B.coeffs]
    scale = max(abs(c) for c in cs)
    f = 0
    for c in cs:
        if B.mode == "float" and abs(c) <= rel_tol * scale:
            f += 1
        elif B.mode != "float" and c == 0:
            f += 1
        else:
            break
    return f


def separation(T, cls: MonodromyClass | None = None, tol: float = 1e-10, sep_index: int | None = None) -> SeparationResult:
    """Separation polynomial, its nonzero roots, and the paired eigenvalues."""
    M = _as_matrix(T)
    if sep_index is None:
        cls = cls or T.cls
        sep_index = gauge_recipe(cls).sep_index
    B = separation_polynomial(M, sep_index)
    if B.is_zero():
        raise NonGenericPoint("separation polynomial vanishes identically (non-generic)")
    scale = max(abs(to_complex(c)) for c in B.coeffs)
    if B.mode == "float":
        # drop top coefficients that are pure cancellation noise
        cs = list(B.coeffs)
        while len(cs) > 1 and abs(to_complex(cs[-1])) <= 1e-13 * scale:
            cs.pop()
        B = UniPoly(cs)
    B0 = to_complex(B.leading())
    if abs(B0) < tol * scale:
        raise NonGenericPoint(f"leading coefficient {B0} below tolerance (non-generic)")
    f = origin_order(B)
    core = [to_complex(c) for c in B.coeffs[f:]]
    if len(core) > 1:
        roots = poly_roots(core, tol=tol).values
    else:
        roots = np.zeros(0, dtype=complex)
    ws = []
    for z in roots:
        Tz = [[complex(sum(to_complex(c) * z**p for p, c in enumerate(M[i, j].coeffs))) for j in range(M.n)]
              for i in range(M.n)]
        ws.append(eigenvalue_at(Tz, sep_index))
    return SeparationResult(B, B0, f, roots, np.array(ws, dtype=complex), sep_index)


@dataclass
class Divisor:
    points: list
    residuals: list = field(default_factory=list)

    def __len__(self):
        return len(self.points)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


class DivisorError(ValueError):
    pass


def curve_residual(F: BiPoly, z: complex, w: complex) -> float:
    """``|F(z, w)|`` relative to the sum of absolute term magnitudes."""
    val = 0j
    scale = 0.0
    for (a, b), c in F.terms.items():
        t = to_complex(c) * z**a * w**b
        val += t
        scale += abs(t)
    return abs(val) / scale if scale else abs(val)


def divisor(T, F: BiPoly, cls: MonodromyClass | None = None, tol: float = 1e-9) -> Divisor:
    sep = separation(T, cls)
    pts = list(zip(sep.roots.tolist(), sep.eigenvalues.tolist()))
    res = [curve_residual(F, z, w) for z, w in pts]
    if res and max(res) > tol:
        worst = int(np.argmax(res))
        raise DivisorError(f"point {pts[worst]} misses the curve: residual {res[worst]:.3e}")
    return Divisor(pts, res)


def one_form_monomials(F: BiPoly) -> list[tuple[int, int]]:
    """``(a-1, b-1)`` numerator exponents of the holomorphic one-forms."""
    _, pts = newton_genus(F)
    return [(a - 1, b - 1) for a, b in sorted(pts)]


def theta_test(P: Divisor, F: BiPoly, tol: float = 1e-12, monomials: list | None = None) -> bool:
    """True iff the matrix ``h_i(z_j, w_j)`` is singular (divisor in the excluded set).

    Rows and columns are equilibrated before comparing the smallest singular
    value with the largest; a raw determinant is useless here because the
    monomial matrix is badly scaled once ``g`` grows.
    """
    mons = monomials if monomials is not None else one_form_monomials(F)
    g = len(mons)
    if len(P) != g:
        raise ValueError(f"divisor has {len(P)} points but the genus is {g}")
    if g == 0:
        return False
    H = np.array([[z**a * w**b for (z, w) in P.points] for (a, b) in mons], dtype=complex)
    for _ in range(5):
        rn = np.linalg.norm(H, axis=1, keepdims=True)
        H = H / np.where(rn > 0, rn, 1.0)
        cn = np.linalg.norm(H, axis=0, keepdims=True)
        H = H / np.where(cn > 0, cn, 1.0)
    sv = np.linalg.svd(H, compute_uv=False)
    return bool(sv[0] == 0 or sv[-1] <= tol * sv[0])


@dataclass
class DimensionReport:
    value: int
    free: int
    rank: int
    exact_rank: int
    indeterminate: bool


def _dual_T(T: MonodromyMatrix) -> tuple[PolyMatrix, int]:
    cls = T.cls
    vals = []
    for p, mask in enumerate(cls.block_masks()):
        for i in range(cls.N):
            for j in range(cls.N):
                if mask[i, j]:
                    vals.append(T.matrix[i, j][p])
    duals = [Dual.variable(v, k) for k, v in enumerate(vals)]
    return build_T(cls, duals).matrix, len(vals)


def _jacobian(entries: list, nvars: int) -> list[list]:
    rows = []
    for e in entries:
        if isinstance(e, Dual):
            rows.append([e.grad.get(k, 0) for k in range(nvars)])
    return rows


def _char_entries(M: PolyMatrix) -> list:
    out = []
    for e in elementary_invariants(M):
        out.extend(c for c in e.coeffs)
    return out


def level_set_dimension(T: MonodromyMatrix, which: str = "T", threshold: float = 1e-8) -> DimensionReport:
    """Dimension of the fixed-curve level set through ``T``.

    ``which="T"``: free parameters minus the rank of the map to the
    spectral-curve coefficients. ``which="M"``: rank of the gauge map
    ``T -> S T S^-1`` restricted to the tangent space of that level set.
    """
    TD, n = _dual_T(T)
    JF = _jacobian(_char_entries(TD), n)
    fr = float_rank(JF, threshold)
    er = exact_rank(JF)
    if which == "T":
        return DimensionReport(n - fr.rank, n, fr.rank, er, fr.indeterminate or fr.rank != er)
    if which != "M":
        raise ValueError("which must be 'T' or 'M'")
    K = exact_nullspace(JF, n)
    recipe = gauge_recipe(T.cls)
    S = gauge_matrix(TD, recipe)
    try:
        S_inv = inverse_scalar(S)
    except ZeroDivisionError:
        raise NonGenericPoint("gauge matrix is singular at this point (non-generic point)") from None
    M = conjugate(TD, S, S_inv)
    entries = [c for row in M.rows for e in row for c in e.coeffs]
    JM = _jacobian(entries, n)
    # JM @ K: directional derivatives along the level set
    prod = [[sum((r[k] * v[k] for k in range(n) if r[k] and v[k]), 0) for v in K] for r in JM]
    if not K:
        return DimensionReport(0, n, 0, 0, False)
    fr2 = float_rank(prod, threshold)
    er2 = exact_rank(prod)
    return DimensionReport(fr2.rank, n, fr2.rank, er2, fr2.indeterminate or fr2.rank != er2)


def divisor_distance(P: Divisor | list, Q: Divisor | list) -> float:
    """Largest relative distance between optimally matched points of two divisors."""
    from scipy.optimize import linear_sum_assignment

    a = np.array(P.points if isinstance(P, Divisor) else P, dtype=complex).reshape(-1, 2)
    b = np.array(Q.points if isinstance(Q, Divisor) else Q, dtype=complex).reshape(-1, 2)
    if len(a) != len(b):
        return float("inf")
    if len(a) == 0:
        return 0.0
    scale = np.maximum(np.abs(a[:, None, :]), np.abs(b[None, :, :]))
    scale = np.where(scale > 0, scale, 1.0)
    cost = np.max(np.abs(a[:, None, :] - b[None, :, :]) / scale, axis=2)
    r, c = linear_sum_assignment(cost)
    return float(np.max(cost[r, c]))


def diagonal_conjugate(T: PolyMatrix, d) -> PolyMatrix:
    """``D T D^-1`` for ``D = diag(d)``."""
    n = T.n
    if T.mode == "float":
        d = [float(x) for x in d]
    else:
        d = [Fraction(x) for x in d]  # exact input stays exact
    D = [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]
    Di = [[1 / d[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return PolyMatrix.constant(D) @ T @ PolyMatrix.constant(Di)


@dataclass
class InvarianceReport:
    base: Divisor
    gauge: float
    diagonal: list


def gauge_invariance(T: PolyMatrix, cls: MonodromyClass, F: BiPoly, seed: int = 0, trials: int = 3,
                     tol: float = 1e-9) -> InvarianceReport:
    """Divisor distances between T and its gauge / random diagonal conjugates."""
    base = divisor(T, F, cls, tol)
    recipe = gauge_recipe(cls)
    S = gauge_matrix(T, recipe)
    try:
        S_inv = inverse_scalar(S)
    except ZeroDivisionError:
        raise NonGenericPoint("gauge matrix is singular at this point (non-generic point)") from None
    gauged = divisor(conjugate(T, S, S_inv), F, cls, tol)
    rng = np.random.default_rng(seed)
    diag = []
    for _ in range(trials):
        d = rng.uniform(0.5, 2.0, T.n) * rng.choice([-1.0, 1.0], T.n)
        diag.append(divisor_distance(base, divisor(diagonal_conjugate(T, d), F, cls, tol)))
    return InvarianceReport(base, divisor_distance(base, gauged), diag)
