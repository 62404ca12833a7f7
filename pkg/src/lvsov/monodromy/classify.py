"""Assembling patterned monodromy matrices and reading their class back off F."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..poly_core.poly import BiPoly, PolyMatrix, UniPoly
from ..poly_core.scalars import random_qi
from .patterns import MonodromyClass


class ClassificationError(ValueError):
    pass


@dataclass
class MonodromyMatrix:
    """A patterned polynomial matrix together with its class and per-power blocks."""

    cls: MonodromyClass
    matrix: PolyMatrix
    seed: int | None = None

    def block(self, power: int) -> list[list]:
        """Coefficient matrix of ``z**power``."""
        return self.matrix.coefficient(power)

    def zero_masks(self) -> list[np.ndarray]:
        return [np.array([[1 if self.matrix[i, j][p] else 0 for j in range(self.cls.N)]
                          for i in range(self.cls.N)], dtype=np.int8)
                for p in range(self.cls.m + 1)]


def build_T(cls: MonodromyClass, coeffs: Sequence) -> MonodromyMatrix:
    """Fill the free entries of every block, in order of increasing z-power and row-major order."""
    masks = cls.block_masks()
    need = cls.free_count()
    coeffs = list(coeffs)
    if len(coeffs) != need:
        raise ValueError(f"{cls} needs {need} coefficients, got {len(coeffs)}")
    N = cls.N
    it = iter(coeffs)
    grid = [[[0] * (cls.m + 1) for _ in range(N)] for _ in range(N)]
    for p, mask in enumerate(masks):
        for i in range(N):
            for j in range(N):
                if mask[i, j]:
                    grid[i][j][p] = next(it)
    return MonodromyMatrix(cls, PolyMatrix([[UniPoly(grid[i][j]) for j in range(N)] for i in range(N)]))


def random_T(cls: MonodromyClass, seed: int | None = 0, sampler: Callable | None = None) -> MonodromyMatrix:
    """Generic instance with small nonzero Gaussian-rational entries."""
    rng = random.Random(seed)
    sampler = sampler or (lambda r: random_qi(r))
    out = build_T(cls, [sampler(rng) for _ in range(cls.free_count())])
    out.seed = seed
    return out


def classify_F(F: BiPoly, N: int) -> MonodromyClass:
    """Recover ``(m; n1, n2)`` from the degree profile of ``f_1..f_N``."""
    if F.w_degree() != N:
        raise ClassificationError(f"expected degree {N} in w, got {F.w_degree()}")
    lead = F.w_coeff(N)
    if lead.degree != 0 or lead[0] != 1:
        raise ClassificationError("not in the T-family: F is not monic in w")
    fs = F.char_coeffs()
    m = 1
    for i, f in enumerate(fs, start=1):
        if f.degree > 0:
            m = max(m, -(-f.degree // i))
    fN1 = fs[N - 2]
    if fN1.is_zero():
        raise ClassificationError("not in the T-family: f_{N-1} vanishes")
    n1 = (N - 1) * m + 1 - fN1.degree
    n2 = fN1.order() + 1
    if not (1 <= n1 <= N - 1 and 1 <= n2 <= N):
        raise ClassificationError(f"not in the T-family: derived (m={m}, n1={n1}, n2={n2})")
    return MonodromyClass(N, m, n1, n2)


def all_classes(N: int, m_max: int) -> list[MonodromyClass]:
    return [MonodromyClass(N, m, n1, n2)
            for m in range(1, m_max + 1) for n1 in range(1, N) for n2 in range(1, N + 1)]
