"""Triangular zero patterns and the monodromy-class bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

MINUS, PLUS, MINUS0, PLUS0, FULL = "minus", "plus", "minus0", "plus0", "full"


def _minus_mask(N: int, j: int) -> np.ndarray:
    # free iff c - r <= 1 - j, and the first j rows vanish (0-indexed r >= j)
    r, c = np.indices((N, N))
    return ((c - r <= 1 - j) & (r >= j)).astype(np.int8)


def _plus_mask(N: int, j: int) -> np.ndarray:
    r, c = np.indices((N, N))
    return (c - r >= j - 1).astype(np.int8)


@dataclass(frozen=True)
class MuPattern:
    """A named N x N free-entry mask (1 = free, 0 = structural zero)."""

    N: int
    kind: str
    index: int
    mask: tuple

    @property
    def array(self) -> np.ndarray:
        return np.array(self.mask, dtype=np.int8)

    def __and__(self, other: "MuPattern") -> np.ndarray:
        return self.array & other.array


def mu_pattern(N: int, kind: str, index: int = 0) -> MuPattern:
    """The named pattern.

    ``kind`` is one of ``"minus"`` (``i = 1..N-1``), ``"plus"`` (``i = 1..N``),
    ``"minus0"`` and ``"plus0"`` (nonpositive upper index ``-i``, ``i = 0..N-3``)
    or ``"full"`` (any ``j``).
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    if kind == MINUS:
        if not 1 <= index <= N - 1:
            raise ValueError(f"minus({index}) undefined for N={N}")
        m = _minus_mask(N, index)
    elif kind == PLUS:
        if not 1 <= index <= N:
            raise ValueError(f"plus({index}) undefined for N={N}")
        m = _plus_mask(N, index)
    elif kind == MINUS0:
        if not 0 <= index <= N - 3:
            raise ValueError(f"minus0(-{index}) undefined for N={N}")
        m = _minus_mask(N, -index)
    elif kind == PLUS0:
        if not 0 <= index <= N - 3:
            raise ValueError(f"plus0(-{index}) undefined for N={N}")
        m = _plus_mask(N, -index)
    elif kind == FULL:
        m = np.ones((N, N), dtype=np.int8)
    else:
        raise ValueError(f"unknown pattern kind {kind!r}")
    return MuPattern(N, kind, index, tuple(map(tuple, m.tolist())))


def minus_upper(N: int, j: int) -> np.ndarray:
    """Mask of the lower pattern with upper index ``j``; full when ``j`` is out of range."""
    return _minus_mask(N, j) if j >= 3 - N else np.ones((N, N), dtype=np.int8)


def plus_upper(N: int, j: int) -> np.ndarray:
    """Mask of the upper pattern with upper index ``j``; full when ``j`` is out of range."""
    return _plus_mask(N, j) if j >= 3 - N else np.ones((N, N), dtype=np.int8)


def product_residues(N: int, L: int) -> tuple[int, int, int, int, int, int]:
    """``(m, m1, m2, k, k1, k2)`` with ``k1`` lifted to ``N-1`` when it vanishes but ``k2`` does not."""
    m = L // (N * (N - 1))
    m1 = L // (N - 1)
    m2 = L // N
    k = L % (N * (N - 1))
    k1 = L % (N - 1)
    k2 = L % N
    if k1 == 0 and k2 != 0:
        k1 = N - 1
    return m, m1, m2, k, k1, k2


@dataclass(frozen=True)
class MonodromyClass:
    """The triple ``(m; n1, n2)`` for a given ``N``; ``L`` is set when realized by a product."""

    N: int
    m: int
    n1: int
    n2: int
    L: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.m < 1:
            raise ValueError("m must be positive")
        if not 1 <= self.n1 <= self.N - 1:
            raise ValueError(f"n1={self.n1} outside 1..{self.N - 1}")
        if not 1 <= self.n2 <= self.N:
            raise ValueError(f"n2={self.n2} outside 1..{self.N}")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.m, self.n1, self.n2)

    def derived(self) -> dict:
        """``m1, m2, k, k1, k2`` for the realizing periodicity (requires ``L``)."""
        if self.L is None:
            raise ValueError("derived integers need the periodicity L")
        _, m1, m2, k, k1, k2 = product_residues(self.N, self.L)
        return {"m1": m1, "m2": m2, "k": k, "k1": k1, "k2": k2}

    def block_masks(self) -> list[np.ndarray]:
        """Free-entry mask of the ``z**p`` coefficient, ``p = 0..m``."""
        N, m, n1, n2 = self.N, self.m, self.n1, self.n2
        top = minus_upper(N, n1)
        sub = minus_upper(N, n1 - N + 1)
        lin = plus_upper(N, n2 - N)
        bot = plus_upper(N, n2)
        if m >= 3:
            full = np.ones((N, N), dtype=np.int8)
            return [bot, lin] + [full] * (m - 3) + [sub, top]
        if m == 2:
            return [bot, sub & lin, top]
        return [sub & bot, top & lin]

    def free_count(self) -> int:
        return int(sum(int(b.sum()) for b in self.block_masks()))

    def __str__(self):
        return f"T[N={self.N}; m={self.m}; n1={self.n1}, n2={self.n2}]"


def masks_equal(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    return all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, b))
