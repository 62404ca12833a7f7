"""Scalar types: exact Gaussian rationals, float complex, and forward-mode duals.

Exact mode uses :class:`QI` (elements of Q(i)); plain ``int`` and
``Fraction`` values are accepted as exact scalars with zero imaginary part.
Float mode uses Python/numpy ``float`` and ``complex``. Mixing the two raises
:class:`ModeError`.
"""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

EXACT = "exact"
FLOAT = "float"
SYMBOLIC = "symbolic"


class ModeError(TypeError):
    """Raised when exact and floating values are combined."""


_EXACT_TYPES = (int, Fraction)
_FLOAT_TYPES = (float, complex, np.floating, np.complexfloating)


def scalar_mode(x) -> str:
    if isinstance(x, bool):
        return EXACT
    if isinstance(x, Dual):
        return scalar_mode(x.val)
    if isinstance(x, QI) or isinstance(x, _EXACT_TYPES) or isinstance(x, np.integer):
        return EXACT
    if isinstance(x, _FLOAT_TYPES):
        return FLOAT
    return SYMBOLIC


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    raise ModeError(f"cannot use {type(x).__name__} in exact arithmetic")


class QI:
    """Gaussian rational ``re + im*i`` with ``Fraction`` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    @staticmethod
    def coerce(x) -> "QI":
        if isinstance(x, QI):
            return x
        return QI(_as_fraction(x), 0)

    def __add__(self, other):
        if isinstance(other, QI):
            return QI(self.re + other.re, self.im + other.im)
        if isinstance(other, _EXACT_TYPES):
            return QI(self.re + other, self.im)
        if isinstance(other, _FLOAT_TYPES):
            raise ModeError("mixed exact/float arithmetic")
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, QI):
            return QI(self.re - other.re, self.im - other.im)
        if isinstance(other, _EXACT_TYPES):
            return QI(self.re - other, self.im)
        if isinstance(other, _FLOAT_TYPES):
            raise ModeError("mixed exact/float arithmetic")
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _EXACT_TYPES):
            return QI(other - self.re, -self.im)
        if isinstance(other, _FLOAT_TYPES):
            raise ModeError("mixed exact/float arithmetic")
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QI):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return QI(a * c, 0)
            return QI(a * c - b * d, a * d + b * c)
        if isinstance(other, _EXACT_TYPES):
            return QI(self.re * other, self.im * other)
        if isinstance(other, _FLOAT_TYPES):
            raise ModeError("mixed exact/float arithmetic")
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "QI":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("QI division by zero")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, QI):
            return self * other.inverse()
        if isinstance(other, _EXACT_TYPES):
            if not other:
                raise ZeroDivisionError("QI division by zero")
            return QI(self.re / other, self.im / other)
        if isinstance(other, _FLOAT_TYPES):
            raise ModeError("mixed exact/float arithmetic")
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _EXACT_TYPES):
            return self.inverse() * other
        if isinstance(other, _FLOAT_TYPES):
            raise ModeError("mixed exact/float arithmetic")
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QI(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _EXACT_TYPES):
            return self.im == 0 and self.re == other
        if isinstance(other, _FLOAT_TYPES):
            raise ModeError("mixed exact/float comparison")
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        if not self.im:
            return f"QI({self.re})"
        return f"QI({self.re}, {self.im})"


def to_complex(x) -> complex:
    if isinstance(x, QI):
        return complex(x)
    if isinstance(x, Dual):
        return to_complex(x.val)
    return complex(x)


def random_qi(rng: random.Random, bound: int = 5, gaussian: bool = True) -> QI:
    """A random nonzero Gaussian rational with small numerator and denominator."""
    while True:
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) if gaussian else Fraction(0)
        if re or im:
            return QI(re, im)


class Dual:
    """Forward-mode dual number: value plus sparse gradient ``{index: coeff}``.

    Used to obtain exact Jacobians of polynomial and rational maps.
    """

    __slots__ = ("val", "grad")

    def __init__(self, val, grad=None):
        self.val = val
        self.grad = grad if grad is not None else {}

    @staticmethod
    def variable(val, index: int) -> "Dual":
        return Dual(val, {index: 1})

    def _is_float(self) -> bool:
        return isinstance(self.val, _FLOAT_TYPES)

    def _wrap(self, other):
        if isinstance(other, Dual):
            return other
        if isinstance(other, _FLOAT_TYPES) and not self._is_float():
            raise ModeError("mixed exact/float arithmetic")
        return Dual(other)

    def __add__(self, other):
        o = self._wrap(other)
        g = dict(self.grad)
        for k, v in o.grad.items():
            s = g.get(k, 0) + v
            if s:
                g[k] = s
            else:
                g.pop(k, None)
        return Dual(self.val + o.val, g)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, {k: -v for k, v in self.grad.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Dual):
            if isinstance(other, _FLOAT_TYPES) and not self._is_float():
                raise ModeError("mixed exact/float arithmetic")
            if not other:
                return Dual(0)
            return Dual(self.val * other, {k: v * other for k, v in self.grad.items()})
        g = {}
        a, b = self.val, other.val
        if b:
            for k, v in self.grad.items():
                g[k] = v * b
        if a:
            for k, v in other.grad.items():
                s = g.get(k, 0) + v * a
                if s:
                    g[k] = s
                else:
                    g.pop(k, None)
        return Dual(a * b, g)

    __rmul__ = __mul__

    def inverse(self) -> "Dual":
        v = self.val
        if isinstance(v, QI):
            inv = v.inverse()
        elif isinstance(v, _EXACT_TYPES):
            inv = Fraction(1) / v
        else:
            inv = 1 / v
        f = -(inv * inv)
        return Dual(inv, {k: v * f for k, v in self.grad.items()})

    def __truediv__(self, other):
        return self * self._wrap(other).inverse()

    def __rtruediv__(self, other):
        return self._wrap(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Dual):
            return self.val == other.val and self.grad == other.grad
        return not self.grad and self.val == other

    def __hash__(self):
        return hash(self.val)

    def __bool__(self):
        return bool(self.val) or bool(self.grad)

    def __repr__(self):
        return f"Dual({self.val!r}, {self.grad!r})"
