"""Univariate and bivariate polynomials, polynomial matrices, determinants."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .scalars import EXACT, FLOAT, SYMBOLIC, Dual, ModeError, scalar_mode

_COMPATIBLE = {
    (EXACT, EXACT): EXACT,
    (FLOAT, FLOAT): FLOAT,
    (SYMBOLIC, SYMBOLIC): SYMBOLIC,
    (SYMBOLIC, EXACT): SYMBOLIC,
    (EXACT, SYMBOLIC): SYMBOLIC,
}


def combine_modes(a: str | None, b: str | None) -> str | None:
    if a is None:
        return b
    if b is None:
        return a
    try:
        return _COMPATIBLE[(a, b)]
    except KeyError:
        raise ModeError(f"cannot combine {a} and {b} coefficients") from None


def _infer_mode(coeffs: Iterable) -> str | None:
    mode = None
    for c in coeffs:
        if isinstance(c, (int, Dual)) and not c:
            continue
        mode = combine_modes(mode, scalar_mode(c))
    return mode


class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "var", "mode")

    def __init__(self, coeffs: Sequence = (), var: str = "z", mode: str | None = None):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var
        self.mode = mode if mode is not None else _infer_mode(self.coeffs)

    @classmethod
    def monomial(cls, coeff, power: int, var: str = "z") -> "UniPoly":
        return cls([0] * power + [coeff], var)

    @classmethod
    def constant(cls, c, var: str = "z") -> "UniPoly":
        return cls([c], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def order(self) -> int:
        """Order of vanishing at the origin (-1 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other: "UniPoly") -> str | None:
        if self.var != other.var and self.coeffs and other.coeffs:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        return combine_modes(self.mode, other.mode)

    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._lift(other)
        mode = self._check(o)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var, None if not out else mode)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var, self.mode)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            combine_modes(self.mode, scalar_mode(other))
            if not other:
                return UniPoly((), self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        mode = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly((), self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return UniPoly(out, self.var, mode)

    def __rmul__(self, other):
        if isinstance(other, UniPoly):
            return other.__mul__(self)
        combine_modes(self.mode, scalar_mode(other))
        if not other:
            return UniPoly((), self.var)
        return UniPoly([other * c for c in self.coeffs], self.var)

    def __pow__(self, k: int):
        out = UniPoly([1], self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return self.coeffs == UniPoly([other]).coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "UniPoly":
        """Multiply by ``var**k``; negative ``k`` divides and requires exactness."""
        if k >= 0:
            return UniPoly([0] * k + list(self.coeffs), self.var, self.mode)
        k = -k
        if any(self.coeffs[:k]):
            raise ValueError(f"polynomial not divisible by {self.var}^{k}")
        return UniPoly(self.coeffs[k:], self.var, self.mode)

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.var, self.mode)

    def map(self, fn: Callable) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs], self.var)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Long division over a field (exact or float coefficients)."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        if isinstance(lead, int):
            lead = Fraction(lead)  # keep integer division exact
        dq = other.degree
        q = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1 - dq, -1, -1):
            c = rem[i + dq]
            if not c:
                continue
            f = c / lead
            q[i] = f
            for j, oc in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - f * oc
            rem[i + dq] = 0
        return UniPoly(q, self.var), UniPoly(rem[:dq] if dq > 0 else [], self.var)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r.coeffs and self.mode == EXACT:
            raise ValueError("division is not exact")
        return q

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c!r})*{self.var}^{i}" if i else f"({c!r})")
        return "UniPoly(" + " + ".join(terms) + ")"


class BiPoly:
    """Sparse bivariate polynomial ``sum c[a, b] z**a w**b``."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self.mode = _infer_mode(self.terms.values())

    @classmethod
    def from_w_coeffs(cls, ws: Sequence[UniPoly]) -> "BiPoly":
        """Build from polynomials in z multiplying ``w**0, w**1, ...``."""
        terms = {}
        for b, p in enumerate(ws):
            for a, c in enumerate(p.coeffs):
                if c:
                    terms[(a, b)] = c
        return cls(terms)

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.terms)

    def w_degree(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    def w_coeff(self, b: int) -> UniPoly:
        deg = max((a for a, bb in self.terms if bb == b), default=-1)
        cs = [0] * (deg + 1)
        for (a, bb), c in self.terms.items():
            if bb == b:
                cs[a] = c
        return UniPoly(cs)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        combine_modes(self.mode, other.mode)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly({k: v * other for k, v in self.terms.items()})
        combine_modes(self.mode, other.mode)
        out: dict = {}
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a + a2, b + b2)
                out[k] = out.get(k, 0) + c * c2
        return BiPoly(out)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __call__(self, z, w):
        """Horner evaluation of the w-collected form."""
        acc = 0
        for b in range(self.w_degree(), -1, -1):
            acc = acc * w + self.w_coeff(b)(z)
        return acc

    def deriv_w(self) -> "BiPoly":
        return BiPoly({(a, b - 1): c * b for (a, b), c in self.terms.items() if b > 0})

    def deriv_z(self) -> "BiPoly":
        return BiPoly({(a - 1, b): c * a for (a, b), c in self.terms.items() if a > 0})

    def map(self, fn: Callable) -> "BiPoly":
        return BiPoly({k: fn(v) for k, v in self.terms.items()})

    def char_coeffs(self) -> list[UniPoly]:
        """Return ``[f_1, ..., f_N]`` for ``F = w^N - f_1 w^{N-1} + ... + (-1)^N f_N``."""
        n = self.w_degree()
        out = []
        for i in range(1, n + 1):
            p = self.w_coeff(n - i)
            out.append(p if i % 2 == 0 else -p)
        return out

    def __repr__(self):
        return f"BiPoly({self.terms!r})"


class PolyMatrix:
    """Square matrix of :class:`UniPoly` entries."""

    __slots__ = ("rows", "n", "mode")

    def __init__(self, rows: Sequence[Sequence]):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("PolyMatrix must be square")
        self.rows = tuple(tuple(e if isinstance(e, UniPoly) else UniPoly([e]) for e in r) for r in rows)
        self.n = n
        mode = None
        for r in self.rows:
            for e in r:
                mode = combine_modes(mode, e.mode)
        self.mode = mode

    @classmethod
    def from_coefficients(cls, mats: Sequence[Sequence[Sequence]]) -> "PolyMatrix":
        """``mats[p]`` is the N x N coefficient matrix of ``z**p``."""
        n = len(mats[0])
        return cls([[UniPoly([m[i][j] for m in mats]) for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, n: int, one=1) -> "PolyMatrix":
        return cls([[UniPoly([one if i == j else 0]) for j in range(n)] for i in range(n)])

    @classmethod
    def constant(cls, mat: Sequence[Sequence]) -> "PolyMatrix":
        return cls([[UniPoly([x]) for x in r] for r in mat])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def degree(self) -> int:
        return max(e.degree for r in self.rows for e in r)

    def coefficient(self, p: int) -> list[list]:
        return [[e[p] for e in r] for r in self.rows]

    def coefficients(self) -> list[list[list]]:
        return [self.coefficient(p) for p in range(self.degree + 1)]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = UniPoly(())
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a.coeffs and b.coeffs:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[e * c for e in r] for r in self.rows])

    def shift(self, k: int) -> "PolyMatrix":
        return PolyMatrix([[e.shift(k) for e in r] for r in self.rows])

    def map(self, fn: Callable) -> "PolyMatrix":
        return PolyMatrix([[e.map(fn) for e in r] for r in self.rows])

    def evaluate(self, x) -> list[list]:
        return [[e(x) for e in r] for r in self.rows]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(c) for c in zip(*self.rows)])

    def submatrix(self, idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.rows[i][j] for j in idx] for i in idx])

    def zero_mask(self) -> list[list[list[int]]]:
        """Per-power nonzero masks (1 = entry nonzero)."""
        return [[[1 if e[p] else 0 for e in r] for r in self.rows] for p in range(self.degree + 1)]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"PolyMatrix({[list(r) for r in self.rows]!r})"


def _det_cofactor(rows: Sequence[Sequence]):
    """Leibniz/Laplace determinant by dynamic programming over column subsets.

    Works for any commutative coefficient ring (no division).
    """
    n = len(rows)
    if n == 0:
        return UniPoly([1])
    dp = {0: None}
    for i in range(n):
        nxt: dict = {}
        for mask, acc in dp.items():
            for j in range(n):
                if mask >> j & 1:
                    continue
                a = rows[i][j]
                if not a:
                    continue
                term = a if acc is None else acc * a
                if bin(mask >> (j + 1)).count("1") % 2:
                    term = -term
                key = mask | (1 << j)
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        dp = nxt
        if not dp:
            break
    full = (1 << n) - 1
    res = dp.get(full)
    if res is None:
        return UniPoly(())
    return res


def _det_bareiss(rows: Sequence[Sequence[UniPoly]]) -> UniPoly:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = UniPoly([1])
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return UniPoly(())
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def polymat_det(m: PolyMatrix) -> UniPoly:
    """Determinant of a square polynomial matrix.

    Cofactor expansion for N <= 4 and for symbolic coefficients,
    fraction-free Bareiss elimination otherwise.
    """
    if m.n <= 4 or m.mode == SYMBOLIC:
        res = _det_cofactor(m.rows)
    else:
        res = _det_bareiss(m.rows)
    if not isinstance(res, UniPoly):
        res = UniPoly([res])
    return res


def elementary_invariants(m: PolyMatrix) -> list[UniPoly]:
    """``[e_1, ..., e_N]``: sums of principal minors of each size."""
    n = m.n
    out = []
    for k in range(1, n + 1):
        acc = UniPoly(())
        for idx in combinations(range(n), k):
            sub = [[m.rows[i][j] for j in idx] for i in idx]
            d = _det_cofactor(sub)
            if not isinstance(d, UniPoly):
                d = UniPoly([d])
            acc = acc + d
        out.append(acc)
    return out


def char_poly(m: PolyMatrix) -> BiPoly:
    """``Det(w*1 - M(z))`` collected as ``w^N - f_1 w^{N-1} + ... + (-1)^N f_N``."""
    fs = elementary_invariants(m)
    n = m.n
    ws = [UniPoly(()) for _ in range(n + 1)]
    one = 1.0 if m.mode == FLOAT else 1
    ws[n] = UniPoly([one])
    for i, f in enumerate(fs, start=1):
        ws[n - i] = f if i % 2 == 0 else -f
    return BiPoly.from_w_coeffs(ws)


def matmul_scalar(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = 0
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def vecmat(v: Sequence, a: Sequence[Sequence]) -> list:
    return matmul_scalar([list(v)], a)[0]


def inverse_scalar(a: Sequence[Sequence]) -> list[list]:
    """Gauss-Jordan inverse over a field (exact, float, or dual coefficients)."""
    n = len(a)
    m = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = None
        best = None
        for r in range(c, n):
            x = m[r][c]
            if not x:
                continue
            if scalar_mode(x) == FLOAT:
                if best is None or abs(x) > best:
                    piv, best = r, abs(x)
            else:
                val = getattr(x, "val", x)
                if val:
                    piv = r
                    break
                if piv is None:
                    piv = r
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c] if scalar_mode(m[c][c]) == FLOAT else _exact_inv(m[c][c])
        m[c] = [x * inv if x else 0 for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y if y else x for x, y in zip(m[r], m[c])]
    return [r[n:] for r in m]


def _exact_inv(x):
    from fractions import Fraction

    if isinstance(x, int):
        return Fraction(1, x)
    if isinstance(x, Fraction):
        return 1 / x
    return x.inverse()


def det_scalar(a: Sequence[Sequence]):
    res = _det_cofactor(a)
    if isinstance(res, UniPoly):
        return res[0] if res.degree <= 0 else res
    return res
