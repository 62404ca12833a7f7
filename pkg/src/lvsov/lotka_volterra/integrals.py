"""Integrals of motion from the graded spectral invariants of T_LV."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..poly_core.linalg import exact_rank, mod_rank
from ..poly_core.poly import elementary_invariants
from ..symbolic_poisson.laurent import LaurentPoly
from ..symbolic_poisson.structures import bracket
from .center import center_count, center_spec, k0_set
from .model import LVModel, check_range, lv_model, raw_product
from ..poly_core.scalars import Dual

SYMBOLIC_CAPS = {2: 14, 3: 12, 4: 12}


class CapExceeded(ValueError):
    pass


@dataclass
class Coefficient:
    """One z-coefficient of an elementary invariant, reduced by the central product.

    ``poly`` equals ``sign * c_ij / (V_1...V_L)^strip``.
    """

    i: int
    j: int
    poly: LaurentPoly
    degree: int
    strip: int
    sign: int
    central: bool


@dataclass
class IMResult:
    H: list
    coefficients: list = field(default_factory=list)
    accepted: list = field(default_factory=list)

    @property
    def n_H(self) -> int:
        return len(self.H)

    @property
    def central(self) -> list:
        return [c for c in self.coefficients if c.central]


def _strip_center(p: LaurentPoly, L: int) -> tuple[LaurentPoly, int]:
    mins = p.min_exponents()[:L]
    t = min(mins)
    if t <= 0:
        return p, 0
    return p.shift([-t] * L + [0] * (p.nvars - L)), t


def sign_of(p: LaurentPoly) -> int:
    """+1 if the lexicographically largest V1-monomial has positive coefficient."""
    keys = sorted((k for k in p.terms if k[0] > 0), reverse=True)
    if not keys:
        keys = sorted(p.terms, reverse=True)
    c = p.terms[keys[0]]
    return 1 if c > 0 else -1


def _gradient(p: LaurentPoly, point: list[int], L: int) -> list:
    return [p.derivative(n).evaluate(point) for n in range(L)]


def extract_im(model: LVModel | tuple, seed: int = 0, enforce_caps: bool = True) -> IMResult:
    """Split every char-poly coefficient into central elements and independent IM.

    Parameters
    ----------
    model : LVModel or (N, L)
    seed : int
        Seed of the random integer point used for the independence rank.
    enforce_caps : bool
        Refuse sizes beyond the symbolic caps (N=2: L<=14, N=3,4: L<=12).
    """
    if isinstance(model, tuple):
        N, L = model
        if enforce_caps and L > SYMBOLIC_CAPS.get(N, 0):
            raise CapExceeded(f"symbolic extraction for LV({N},{L}) exceeds the desk-scale cap")
        model = lv_model(N, L)
    N, L = model.N, model.L
    if enforce_caps and L > SYMBOLIC_CAPS.get(N, 0):
        raise CapExceeded(f"symbolic extraction for LV({N},{L}) exceeds the desk-scale cap")
    s = model.structure
    V = [s.gen(n) for n in range(L)]
    inv = elementary_invariants(model.raw)
    coeffs = []
    for i, e in enumerate(inv, start=1):
        for j, c in enumerate(e.coeffs):
            if not c:
                continue
            if not isinstance(c, LaurentPoly):
                c = s.const(c)
            degs = c.degree_profile([1] * L + [0])
            if degs != {i * L - j}:
                raise RuntimeError(f"coefficient ({i},{j}) is not homogeneous: degrees {sorted(degs)}")
            q, t = _strip_center(c, L)
            sg = sign_of(q)
            q = q * sg
            central = all(not bracket(v, q, s) for v in V)
            coeffs.append(Coefficient(i, j, q, i * L - j - t * L, t, sg, central))
    rng = random.Random(seed)
    point = [rng.randint(2, 30) for _ in range(L)] + [1]
    spec = center_spec(N, L, verify=False)
    basis = [_gradient(P, point, L) for _, P in spec.generator_list()]
    rank = exact_rank(basis) if basis else 0
    H, accepted = [], []
    for c in sorted((c for c in coeffs if not c.central), key=lambda c: (c.degree, c.i, c.j)):
        trial = basis + [_gradient(c.poly, point, L)]
        r = exact_rank(trial)
        if r > rank:
            basis, rank = trial, r
            H.append(c.poly)
            accepted.append(c)
    return IMResult(H, coeffs, accepted)


def count_im_by_rank(N: int, L: int, seed: int = 0) -> dict:
    """``n_H`` and ``n0`` from exact Jacobian ranks at a random integer point.

    All char-poly coefficients of ``M_L ... M_1`` are differentiated with dual
    numbers; ``n_H = rank(coefficients + centers) - rank(centers)``. Scales
    beyond the symbolic caps.
    """
    check_range(N, L)
    rng = random.Random(seed)
    vals = [rng.randint(2, 50) for _ in range(L)]
    duals = [Dual.variable(v, n) for n, v in enumerate(vals)]
    raw = raw_product(N, duals)
    rows = []
    for e in elementary_invariants(raw):
        for c in e.coeffs:
            if isinstance(c, Dual) and c.grad:
                rows.append([int(c.grad.get(n, 0)) for n in range(L)])
    centers = []
    for k in k0_set(N, L):
        for i in range(1, k + 1):
            idx = [k * n + i - 1 for n in range(L // k)]
            prod = 1
            for t in idx:
                prod *= vals[t]
            centers.append([prod // vals[n] if n in idx else 0 for n in range(L)])
    rc = mod_rank(centers)
    rall = mod_rank(centers + rows)
    return {"n_H": rall - rc, "center_rank": rc, "n0": center_count(N, L)}
