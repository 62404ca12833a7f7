"""Newton polygon of a bivariate polynomial and the lattice-point genus."""
from __future__ import annotations

from dataclasses import dataclass

from .poly import BiPoly


class DegeneratePolygon(ValueError):
    pass


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[tuple[int, int]]:
    """Counter-clockwise hull vertices (Andrew's monotone chain), no collinear points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class NewtonPolygon:
    support: tuple
    vertices: tuple
    interior: tuple

    @classmethod
    def of(cls, F: BiPoly) -> "NewtonPolygon":
        support = tuple(F.support())
        if not support:
            raise ValueError("zero polynomial has no Newton polygon")
        hull = convex_hull(support)
        if len(hull) < 3:
            raise DegeneratePolygon("curve is rational or reducible; genus test unavailable")
        amin = min(a for a, _ in hull)
        amax = max(a for a, _ in hull)
        bmin = min(b for _, b in hull)
        bmax = max(b for _, b in hull)
        inner = []
        k = len(hull)
        for a in range(amin, amax + 1):
            for b in range(bmin, bmax + 1):
                if all(_cross(hull[i], hull[(i + 1) % k], (a, b)) > 0 for i in range(k)):
                    inner.append((a, b))
        return cls(support, tuple(hull), tuple(inner))

    def contains(self, pt) -> bool:
        k = len(self.vertices)
        return all(_cross(self.vertices[i], self.vertices[(i + 1) % k], pt) >= 0 for i in range(k))


def newton_genus(F: BiPoly) -> tuple[int, list[tuple[int, int]]]:
    """Genus as the interior lattice-point count of the Newton polygon.

    Returns
    -------
    genus : int
    interior : list of (a, b)
        Exponents with ``a`` the z-power and ``b`` the w-power. The one-form
        numerator attached to ``(a, b)`` is ``z**(a-1) * w**(b-1)``.
    """
    poly = NewtonPolygon.of(F)
    return len(poly.interior), list(poly.interior)


def one_form_numerators(F: BiPoly) -> list[tuple[int, int]]:
    """Exponent pairs ``(a-1, b-1)`` of the holomorphic one-form numerators."""
    _, pts = newton_genus(F)
    return [(a - 1, b - 1) for a, b in pts]
