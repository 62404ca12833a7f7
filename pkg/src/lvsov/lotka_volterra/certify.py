"""Canonical P/Q realization, the integrability certificate and the L-g table."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..gauge_sov.recipes import UnsupportedClass, gauge_recipe
from ..monodromy.classify import random_T
from ..monodromy.lax import lax_product_class
from ..monodromy.patterns import product_residues
from ..poly_core.newton import newton_genus
from ..poly_core.poly import char_poly
from ..symbolic_poisson.laurent import LaurentPoly
from ..symbolic_poisson.structures import bracket, lv_structure, pq_structure
from .center import center_count
from .integrals import SYMBOLIC_CAPS, count_im_by_rank, extract_im
from .model import check_range


class OutOfScope(ValueError):
    pass


def pq_monomial(N: int, L: int, n: int, s) -> LaurentPoly:
    """``V_n = (P_n ... P_{n+N-1})^-1 Q_n^-1 Q_{n+N-1}`` (0-based ``n``, indices mod L)."""
    out = s.gen(f"Q{(n + N - 1) % L + 1}") * s.gen(f"Q{n + 1}", -1)
    for k in range(N):
        out = out * s.gen(f"P{(n + k) % L + 1}", -1)
    return out


@dataclass
class PQReport:
    N: int
    L: int
    pairs: int
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def pq_realization_check(N: int, L: int) -> PQReport:
    """Compare ``{V_n, V_m}`` computed through canonical P/Q variables with the lattice bracket."""
    check_range(N, L)
    pq = pq_structure(L)
    lv = lv_structure(N, L)
    V = [pq_monomial(N, L, n, pq) for n in range(L)]
    bad, pairs = [], 0
    for a in range(L):
        for b in range(L):
            pairs += 1
            got = bracket(V[a], V[b], pq)
            coef = lv.coefficient(a, b)
            want = V[a] * V[b] * coef if coef else pq.zero()
            if got != want:
                bad.append((a + 1, b + 1))
    return PQReport(N, L, pairs, bad)


def in_scope(N: int, L: int) -> bool:
    if N in (2, 3):
        return L >= 2 * N - 1
    return L >= 2 * N - 1 and L % (N * (N - 1)) == 0


def class_genus(N: int, L: int, seed: int = 0) -> int:
    """Genus of a generic curve in the class realized by LV(N, L)."""
    cls = lax_product_class(N, L)
    g, _ = newton_genus(char_poly(random_T(cls, seed).matrix))
    return g


@dataclass
class Certificate:
    """Integrability certificate ``g = n_H = (L - n0) / 2``.

    ``checks`` lists ``{name, status, residual}`` entries.
    """

    N: int
    L: int
    cls: object
    g: int
    n_H: int
    n0: int
    checks: list
    seed: int = 0
    im_method: str = "symbolic"

    @property
    def passed(self) -> bool:
        return all(c["status"] == "PASS" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "L": self.L,
            "class": {"m": self.cls.m, "n1": self.cls.n1, "n2": self.cls.n2},
            "g": self.g,
            "n_H": self.n_H,
            "n0": self.n0,
            "im_method": self.im_method,
            "status": "PASS" if self.passed else "FAIL",
            "checks": self.checks,
            "seed": self.seed,
        }


def _check(name: str, ok: bool, residual=0) -> dict:
    return {"name": name, "status": "PASS" if ok else "FAIL", "residual": residual}


def certify(N: int, L: int, seed: int = 0) -> Certificate:
    """Certify algebraic complete integrability of LV(N, L) by counting.

    Raises
    ------
    OutOfScope
        For N >= 4 unless ``L`` is a multiple of ``N (N - 1)``.
    """
    check_range(N, L)
    if not in_scope(N, L):
        raise OutOfScope(f"LV({N},{L}) is out of proven scope")
    cls = lax_product_class(N, L)
    g = class_genus(N, L, seed)
    n0 = center_count(N, L)
    if L <= SYMBOLIC_CAPS.get(N, 0):
        n_H, method = extract_im((N, L), seed=seed).n_H, "symbolic"
    else:
        n_H, method = count_im_by_rank(N, L, seed)["n_H"], "jacobian-rank"
    try:
        gauge_recipe(cls)
        has_recipe = True
    except UnsupportedClass:
        has_recipe = False
    gap = abs(2 * n_H - (L - n0))
    checks = [
        _check("g == n_H", g == n_H, abs(g - n_H)),
        _check("n_H == (L - n0)/2", gap == 0, gap // 2 if gap % 2 == 0 else gap / 2),
        _check("gauge recipe exists", has_recipe),
    ]
    return Certificate(N, L, cls, g, n_H, n0, checks, seed, method)


def table(N: int, Lmin: int, Lmax: int, seed: int = 0) -> list[tuple[int, int]]:
    """Rows ``(L, g)`` for ``Lmin <= L <= Lmax``."""
    lo = max(Lmin, 2 * N - 1)
    return [(L, class_genus(N, L, seed)) for L in range(lo, Lmax + 1)]


def lv_residues(N: int, L: int) -> dict:
    m, m1, m2, k, k1, k2 = product_residues(N, L)
    return {"m1": m1, "m2": m2, "k": k, "k1": k1, "k2": k2}
