"""Sparse Laurent polynomials over a fixed, ordered set of generators."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from ..poly_core.scalars import EXACT, FLOAT, QI, ModeError, scalar_mode

_INT_BOUND = 2**31


class LaurentPoly:
    """``sum_k c_k * prod_j x_j**e_kj`` with integer exponent vectors.

    Parameters
    ----------
    nvars : int
        Number of generators; every exponent key is a tuple of this length.
    terms : mapping
        ``{exponent tuple: exact coefficient}``. Zero coefficients are dropped.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        if terms:
            self.terms = {k: v for k, v in terms.items() if v}
        else:
            self.terms = {}

    @classmethod
    def constant(cls, nvars: int, c) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars: int, exps: Iterable[int], c=1) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def generator(cls, nvars: int, index: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[index] = power
        return cls(nvars, {tuple(e): 1})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("generator sets differ")
            return other
        if scalar_mode(other) != EXACT:
            raise ModeError(f"cannot mix {type(other).__name__} into a Laurent polynomial")
        return LaurentPoly.constant(self.nvars, other)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly) and scalar_mode(other) != EXACT:
            if scalar_mode(other) == FLOAT:
                raise ModeError("cannot mix floats into a Laurent polynomial")
            return NotImplemented
        o = self._lift(other)
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        out = dict(big)
        for k, v in small.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = LaurentPoly(self.nvars)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = LaurentPoly(self.nvars)
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if scalar_mode(other) != EXACT:
                return NotImplemented
            if not other:
                return LaurentPoly(self.nvars)
            res = LaurentPoly(self.nvars)
            res.terms = {k: v * other for k, v in self.terms.items()}
            return res
        o = self._lift(other)
        if not self.terms or not o.terms:
            return LaurentPoly(self.nvars)
        if len(self.terms) * len(o.terms) > 4000:
            fast = _mul_numpy(self, o)
            if fast is not None:
                return fast
        out: dict = {}
        for ka, va in self.terms.items():
            for kb, vb in o.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                s = out.get(k, 0) + va * vb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        res = LaurentPoly(self.nvars)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            inv = QI.coerce(c).inverse() if isinstance(c, QI) else Fraction(1) / c
            if isinstance(inv, Fraction) and inv.denominator == 1:
                inv = int(inv)
            return LaurentPoly(self.nvars, {tuple(-x for x in e): inv}) ** (-k)
        out = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == {(0,) * self.nvars: other}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree_profile(self, weights: Iterable[int]) -> set[int]:
        w = tuple(weights)
        return {sum(a * b for a, b in zip(k, w)) for k in self.terms}

    def min_exponents(self) -> tuple[int, ...]:
        return tuple(min(col) for col in zip(*self.terms)) if self.terms else (0,) * self.nvars

    def shift(self, exps: Iterable[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x**exps`` (coefficient 1)."""
        e = tuple(exps)
        res = LaurentPoly(self.nvars)
        res.terms = {tuple(a + b for a, b in zip(k, e)): v for k, v in self.terms.items()}
        return res

    def evaluate(self, values, inverse_values=None):
        """Evaluate at a point; ``values`` is indexable by generator index."""
        acc = 0
        for k, c in self.terms.items():
            t = c
            for i, e in enumerate(k):
                if e > 0:
                    t = t * values[i] ** e
                elif e < 0:
                    iv = inverse_values[i] if inverse_values is not None else 1 / values[i]
                    t = t * iv ** (-e)
            acc = acc + t
        return acc

    def substitute(self, images: list["LaurentPoly"]) -> "LaurentPoly":
        """Replace generator ``j`` by the monomial ``images[j]`` (Laurent substitution)."""
        nv = images[0].nvars
        out = LaurentPoly(nv)
        for k, c in self.terms.items():
            t = LaurentPoly.constant(nv, c)
            for j, e in enumerate(k):
                if e:
                    t = t * images[j] ** e
            out = out + t
        return out

    def derivative(self, index: int) -> "LaurentPoly":
        out = {}
        for k, c in self.terms.items():
            e = k[index]
            if e:
                kk = list(k)
                kk[index] -= 1
                out[tuple(kk)] = c * e
        return LaurentPoly(self.nvars, out)

    def to_arrays(self) -> tuple[np.ndarray, list]:
        keys = list(self.terms)
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), self.nvars)
        return exps, [self.terms[k] for k in keys]

    def format(self, names: list[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(names, k) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.format()})"


def small_int_coeffs(p: LaurentPoly) -> bool:
    return all(type(c) is int and -_INT_BOUND < c < _INT_BOUND for c in p.terms.values())


def from_arrays(nvars: int, exps: np.ndarray, coeffs: np.ndarray) -> LaurentPoly:
    """Aggregate duplicate exponent rows and build a polynomial."""
    if len(exps) == 0:
        return LaurentPoly(nvars)
    uniq, inv = np.unique(exps, axis=0, return_inverse=True)
    sums = np.zeros(len(uniq), dtype=object if coeffs.dtype == object else np.int64)
    np.add.at(sums, inv.ravel(), coeffs)
    res = LaurentPoly(nvars)
    res.terms = {tuple(int(x) for x in row): int(c) for row, c in zip(uniq, sums) if c}
    return res


def _mul_numpy(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    if not (small_int_coeffs(a) and small_int_coeffs(b)):
        return None
    ea, ca = a.to_arrays()
    eb, cb = b.to_arrays()
    ca = np.array(ca, dtype=np.int64)
    cb = np.array(cb, dtype=np.int64)
    if np.abs(ca).max() * np.abs(cb).max() * min(len(ca), len(cb)) >= 2**62:
        return None
    exps = (ea[:, None, :] + eb[None, :, :]).reshape(-1, a.nvars)
    coeffs = (ca[:, None] * cb[None, :]).ravel()
    return from_arrays(a.nvars, exps, coeffs)
