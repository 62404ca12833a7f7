"""Gauge matrices built from the blocks of a patterned monodromy matrix."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..monodromy.classify import MonodromyMatrix
from ..monodromy.patterns import MonodromyClass
from ..poly_core.poly import PolyMatrix, inverse_scalar, matmul_scalar
from ..poly_core.scalars import FLOAT

# block tokens -> z-power of the corresponding coefficient of T
TOP, SUB, LIN, BOT, MU1 = "top", "sub", "lin", "bot", "mu1"


class UnsupportedClass(NotImplementedError):
    pass


class NonGenericPoint(ValueError):
    pass


def block_power(token: str, m: int) -> int:
    return {TOP: m, SUB: m - 1, LIN: 1, BOT: 0, MU1: m - 1}[token]


def block_label(token: str, cls: MonodromyClass) -> str:
    N, n1, n2 = cls.N, cls.n1, cls.n2
    return {
        TOP: f"mu_-^({n1})",
        SUB: f"mu_-^({n1 - N + 1})",
        LIN: f"mu_+^({n2 - N})",
        BOT: f"mu_+^({n2})",
        MU1: "mu_1",
    }[token]


@dataclass(frozen=True)
class GaugeRecipe:
    """Rows ``e_i * B_1 * B_2 * ...`` where each ``B`` names a block of T.

    Attributes
    ----------
    cls : MonodromyClass
    rows : tuple of (int, tuple of str)
        1-based basis index and the word of block tokens.
    sep_index : int
        1-based index of the normalization vector used for separation.
    case : str
        Short case label.
    """

    cls: MonodromyClass
    rows: tuple
    sep_index: int
    case: str = ""

    def describe(self) -> list[str]:
        out = []
        for i, word in self.rows:
            out.append(" ".join([f"e{i}"] + [block_label(t, self.cls) for t in word]))
        return out


_N3 = {
    (1, 1): ("i", 1, [(1, ()), (1, (MU1, TOP)), (1, (MU1,))]),
    (2, 2): ("ii", 3, [(3, (TOP,)), (3, (TOP, BOT)), (3, ())]),
    (1, 3): ("iii", 1, [(1, ()), (1, (BOT, LIN)), (1, (BOT,))]),
    (2, 1): ("iv", 3, [(3, (TOP,)), (3, (TOP, BOT)), (3, ())]),
    (1, 2): ("v", 1, [(1, ()), (1, (BOT, BOT)), (1, (BOT,))]),
    (2, 3): ("vi", 3, [(3, (LIN,)), (3, (LIN, TOP)), (3, ())]),
}


def gauge_recipe(cls: MonodromyClass) -> GaugeRecipe:
    """The gauge recipe of an implemented class.

    Raises
    ------
    UnsupportedClass
        For ``N >= 4`` with ``(n1, n2) != (1, 1)``; the existence of a gauge
        there is an unproven conjecture.
    """
    N = cls.N
    if N == 2:
        if cls.n2 == 1:
            return GaugeRecipe(cls, ((1, ()), (1, (MU1,))), 1, "i")
        return GaugeRecipe(cls, ((2, (TOP,)), (2, ())), 2, "ii")
    if N == 3:
        case, a, rows = _N3[(cls.n1, cls.n2)]
        return GaugeRecipe(cls, tuple(rows), a, case)
    if (cls.n1, cls.n2) == (1, 1):
        rows = [(1, ())] + [(1, (MU1,) + (TOP,) * k) for k in range(N - 2, -1, -1)]
        return GaugeRecipe(cls, tuple(rows), 1, "general")
    raise UnsupportedClass(
        f"no gauge for {cls}: a gauge matrix is only conjectured to exist for N >= 4 beyond (m;1,1)"
    )


def gauge_matrix(T: MonodromyMatrix | PolyMatrix, recipe: GaugeRecipe) -> list[list]:
    """Assemble the constant matrix S from the blocks of T."""
    mat = T.matrix if isinstance(T, MonodromyMatrix) else T
    N, m = recipe.cls.N, recipe.cls.m
    one = 1.0 if mat.mode == FLOAT else 1
    blocks = {}
    rows = []
    for i, word in recipe.rows:
        v = [[one if j == i - 1 else 0 for j in range(N)]]
        for tok in word:
            p = block_power(tok, m)
            if p not in blocks:
                blocks[p] = mat.coefficient(p)
            v = matmul_scalar(v, blocks[p])
        rows.append(v[0])
    return rows


@dataclass
class RepresentativeMatrix:
    """``M = S T S^-1`` with its gauge and class."""

    cls: MonodromyClass
    M: PolyMatrix
    S: list
    S_inv: list
    recipe: GaugeRecipe = field(repr=False, default=None)

    def eta(self, i: int) -> list[list]:
        """Coefficient of ``z**(m - i)``."""
        return self.M.coefficient(self.cls.m - i)


def conjugate(T: PolyMatrix, S: list, S_inv: list) -> PolyMatrix:
    return PolyMatrix.constant(S) @ T @ PolyMatrix.constant(S_inv)


def apply_gauge(T: MonodromyMatrix, recipe: GaugeRecipe | None = None) -> RepresentativeMatrix:
    recipe = recipe or gauge_recipe(T.cls)
    S = gauge_matrix(T, recipe)
    try:
        S_inv = inverse_scalar(S)
    except ZeroDivisionError:
        raise NonGenericPoint("gauge matrix is singular at this point (non-generic point)") from None
    return RepresentativeMatrix(T.cls, conjugate(T.matrix, S, S_inv), S, S_inv, recipe)


# expected eta patterns: '0' vanishes, '1' equals one, '*' unconstrained
_ETA = {
    (2, 1, 1): {"0": ["00", "**"], "1": ["01", "**"]},
    (2, 1, 2): {"0": ["*0", "10"], "m": ["0*", "00"]},
    (3, 1, 1): {"0": ["000", "***", "010"], "1": ["001", "***", "***"]},
    (3, 2, 2): {"0": ["000", "*00", "100"], "m": ["010", "00*", "000"]},
    (3, 1, 3): {"0": ["000", "***", "***"], "m-1": ["***", "***", "010"], "m": ["001", "000", "000"]},
    (3, 2, 1): {"0": ["000", "*00", "100"], "m": ["010", "***", "00*"]},
    (3, 1, 2): {"0": ["000", "***", "***"], "m": ["001", "000", "010"]},
    (3, 2, 3): {"0": ["010", "000", "0*0"], "m-1": ["***", "***", "100"], "m": ["000", "00*", "000"]},
}


def expected_eta(cls: MonodromyClass) -> dict[int, list[str]]:
    """Printed eta patterns keyed by eta index; empty for general-N classes."""
    table = _ETA.get((cls.N, cls.n1, cls.n2), {})
    out = {}
    for key, pat in table.items():
        idx = {"0": 0, "1": 1, "m": cls.m, "m-1": cls.m - 1}[key]
        if idx in out:
            merged = []
            for r_old, r_new in zip(out[idx], pat):
                row = ""
                for a, b in zip(r_old, r_new):
                    if a != "*" and b != "*" and a != b:
                        raise ValueError(f"eta patterns conflict at m={cls.m}")
                    row += b if a == "*" else a
                merged.append(row)
            pat = merged
        out[idx] = pat
    return out


def pattern_violations(rep: RepresentativeMatrix) -> list[tuple]:
    """``(eta index, row, col, expected, actual)`` for every mismatch."""
    bad = []
    for idx, pat in expected_eta(rep.cls).items():
        eta = rep.eta(idx)
        for r, row in enumerate(pat):
            for c, ch in enumerate(row):
                x = eta[r][c]
                if ch == "0" and x:
                    bad.append((idx, r + 1, c + 1, "0", x))
                elif ch == "1" and x != 1:
                    bad.append((idx, r + 1, c + 1, "1", x))
    return bad
