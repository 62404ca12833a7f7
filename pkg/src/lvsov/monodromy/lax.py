"""Local Lax matrices, their ordered products, and the product classification."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from ..poly_core.poly import PolyMatrix, UniPoly, elementary_invariants, polymat_det
from ..symbolic_poisson.structures import BracketStructure, bracket, lax_name, lax_structure
from .classify import ClassificationError
from .patterns import MonodromyClass, product_residues, masks_equal


def lax_from_values(N: int, vals) -> PolyMatrix:
    """``sum_k l^(k) E_{k,k+1} + z l^(N) E_{N,1} + z l^(0) E_{N,2}`` with ``vals[k] = l^(k)``."""
    rows = [[UniPoly(()) for _ in range(N)] for _ in range(N)]
    for k in range(1, N):
        rows[k - 1][k] = UniPoly([vals[k]])
    rows[N - 1][0] = UniPoly([0, vals[N]])
    rows[N - 1][1] = rows[N - 1][1] + UniPoly([0, vals[0]])
    return PolyMatrix(rows)


def local_lax(N: int, site: int, s: BracketStructure) -> PolyMatrix:
    """Symbolic Lax matrix of one site over a structure providing ``l<site>_<k>``."""
    return lax_from_values(N, [s.gen(lax_name(site, k)) for k in range(N + 1)])


def ordered_product(mats, order: str = "left") -> PolyMatrix:
    """``A_L ... A_1`` for ``order="left"``, ``A_1 ... A_L`` for ``order="right"``."""
    mats = list(mats)
    if order == "left":
        mats = mats[::-1]
    elif order != "right":
        raise ValueError("order must be 'left' or 'right'")
    out = mats[0]
    for a in mats[1:]:
        out = out @ a
    return out


def lax_product(N: int, L: int, s: BracketStructure | None = None, order: str = "left"):
    """Symbolic product of ``L`` local Lax matrices; returns ``(T, structure)``."""
    s = s or lax_structure(N, L)
    return ordered_product([local_lax(N, n, s) for n in range(1, L + 1)], order), s


def numeric_lax_product(N: int, L: int, rng: random.Random, order: str = "left", low: int = 1, high: int = 9) -> PolyMatrix:
    """Product of Lax matrices with positive integer entries (no cancellation possible)."""
    mats = [lax_from_values(N, [rng.randint(low, high) for _ in range(N + 1)]) for _ in range(L)]
    return ordered_product(mats, order)


def formula_class(N: int, L: int) -> MonodromyClass:
    """Class of ``z^{-m2} prod L_n`` from the residues of ``L``."""
    if N < 2 or L < 1:
        raise ValueError("need N >= 2 and L >= 1")
    m, _, _, _, k1, k2 = product_residues(N, L)
    if k1 == 0 and k2 == 0:
        return MonodromyClass(N, m, 1, 1, L=L)
    d = k1 - k2
    if 0 <= d <= N - 2:
        return MonodromyClass(N, m + 1, N - k1, k2 + 1, L=L)
    if d <= -1:
        return MonodromyClass(N, m + 2, N - k1, k2 + 1, L=L)
    raise ClassificationError(f"residues k1={k1}, k2={k2} fall outside every branch")


def product_masks(T: PolyMatrix) -> tuple[int, list[np.ndarray]]:
    """Lowest z-power present and the per-power support masks above it."""
    N = T.n
    low = min(e.order() for r in T.rows for e in r if not e.is_zero())
    masks = []
    for p in range(low, T.degree + 1):
        masks.append(np.array([[1 if T[i, j][p] else 0 for j in range(N)] for i in range(N)], dtype=np.int8))
    return low, masks


def brute_force_classes(N: int, L: int, seed: int = 0) -> list[MonodromyClass]:
    """All classes whose block pattern equals that of an explicit positive-integer product."""
    T = numeric_lax_product(N, L, random.Random(seed))
    low, masks = product_masks(T)
    if low != L // N:
        raise ClassificationError(f"lowest z-power {low} differs from floor(L/N)={L // N}")
    m = len(masks) - 1
    if m < 1:
        return []
    return [MonodromyClass(N, m, n1, n2, L=L)
            for n1 in range(1, N) for n2 in range(1, N + 1)
            if masks_equal(MonodromyClass(N, m, n1, n2).block_masks(), masks)]


def lax_product_class(N: int, L: int, seed: int = 0) -> MonodromyClass:
    """Class of the L-site product, from residues and confirmed by the explicit product."""
    formula = formula_class(N, L)
    brute = brute_force_classes(N, L, seed)
    if brute != [formula]:
        raise ClassificationError(
            f"formula gives {formula}, explicit product matches {[str(b) for b in brute]}"
        )
    return formula


@dataclass
class SpectralReport:
    center_residuals: list = field(default_factory=list)
    involution_residuals: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r == 0 for _, r in self.center_residuals) and all(
            r == 0 for _, r in self.involution_residuals
        )


def verify_spectral_invariants(T: PolyMatrix, s: BracketStructure) -> SpectralReport:
    """Exact checks that ``Det T`` is central and the spectral invariants commute.

    Residuals are monomial counts of the computed brackets (0 means exact zero).
    """
    rep = SpectralReport()
    det = polymat_det(T)
    det_coeffs = [(q, c) for q, c in enumerate(det.coeffs) if c]
    for i in range(T.n):
        for j in range(T.n):
            for p, t in enumerate(T[i, j].coeffs):
                if not t:
                    continue
                for q, d in det_coeffs:
                    rep.center_residuals.append(((i, j, p, q), len(bracket(t, d, s))))
    inv = elementary_invariants(T)
    flat = [((a, p), c) for a, e in enumerate(inv, start=1) for p, c in enumerate(e.coeffs) if c]
    for (ka, fa), (kb, fb) in combinations_with_replacement(flat, 2):
        if ka == kb:
            continue
        rep.involution_residuals.append(((ka, kb), len(bracket(fa, fb, s))))
    return rep
