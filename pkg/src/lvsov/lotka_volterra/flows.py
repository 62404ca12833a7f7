"""Hamiltonian flows of the integrals and their numerical integration."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from ..symbolic_poisson.laurent import LaurentPoly
from ..symbolic_poisson.structures import bracket
from .center import center_spec
from .integrals import IMResult, extract_im
from .model import lv_model, numeric_T_array


class FlowAborted(RuntimeError):
    pass


class PolyPlan:
    """Vectorized evaluation of several Laurent polynomials in ``V`` (P0-free)."""

    def __init__(self, polys: list[LaurentPoly], L: int):
        exps, coeffs, target = [], [], []
        for t, p in enumerate(polys):
            for k, c in p.terms.items():
                if len(k) > L and any(k[L:]):
                    raise ValueError("plan polynomials must not involve P0")
                exps.append(k[:L])
                coeffs.append(float(c))
                target.append(t)
        self.n = len(polys)
        self.L = L
        self.exps = np.array(exps, dtype=np.int64).reshape(len(exps), L)
        self.coeffs = np.array(coeffs)
        self.target = np.array(target, dtype=np.int64)

    def __call__(self, V: np.ndarray) -> np.ndarray:
        V = np.asarray(V)
        if len(self.coeffs) == 0:
            return np.zeros(self.n, dtype=V.dtype)
        terms = self.coeffs * np.prod(V[None, :] ** self.exps, axis=1)
        if np.iscomplexobj(terms):
            out = np.zeros(self.n, dtype=complex)
            np.add.at(out, self.target, terms)
            return out
        return np.bincount(self.target, weights=terms, minlength=self.n)


class FlowSystem:
    """Precompiled vector fields ``dV_n/dt_i = {V_n, H_i}`` of LV(N, L)."""

    def __init__(self, N: int, L: int, im: IMResult | None = None):
        self.N, self.L = N, L
        self.model = lv_model(N, L)
        self.im = im or extract_im(self.model)
        s = self.model.structure
        self.H = self.im.H
        self.H_plan = PolyPlan(self.H, L)
        self.center = center_spec(N, L)
        self.center_plan = PolyPlan([P for _, P in self.center.generator_list()], L)
        self._plans: dict[int, PolyPlan] = {}
        self._brackets: dict[int, list] = {}
        self._s = s

    @property
    def n_H(self) -> int:
        return len(self.H)

    def weights(self, flow) -> tuple:
        """Normalize a flow key: an index ``i``, ``"all"``, or a weight per integral."""
        if flow == "all":
            return (1,) * self.n_H
        if isinstance(flow, (int, np.integer)):
            if not 1 <= flow <= self.n_H:
                raise IndexError(f"flow index {flow} outside 1..{self.n_H}")
            return tuple(1 if k == flow - 1 else 0 for k in range(self.n_H))
        w = tuple(flow)
        if len(w) != self.n_H:
            raise IndexError(f"expected {self.n_H} flow weights, got {len(w)}")
        return w

    def brackets(self, flow) -> list[LaurentPoly]:
        """``{V_n, H}`` for ``H = sum_i c_i H_i`` given by ``flow``."""
        key = self.weights(flow)
        if key not in self._brackets:
            s = self._s
            H = s.zero()
            for c, h in zip(key, self.H):
                if c:
                    H = H + h * c
            self._brackets[key] = [bracket(s.gen(n), H, s) for n in range(self.L)]
        return self._brackets[key]

    def plan(self, flow) -> PolyPlan:
        key = self.weights(flow)
        if key not in self._plans:
            self._plans[key] = PolyPlan(self.brackets(key), self.L)
        return self._plans[key]

    def field(self, flow, V) -> np.ndarray:
        return self.plan(flow)(np.asarray(V))

    def spectral_coefficients(self, V) -> np.ndarray:
        """All coefficients ``f_i(z)`` of the characteristic polynomial of T_LV at ``V``."""
        T = numeric_T_array(self.N, np.asarray(V))
        return np.concatenate(_elementary_numeric(T))


def _conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)


def _det_poly(T: np.ndarray, idx: list[int]) -> np.ndarray:
    """Determinant of the principal submatrix ``idx`` of a polynomial matrix ``T[p, i, j]``."""
    if len(idx) == 1:
        return T[:, idx[0], idx[0]].copy()
    out = None
    first = idx[0]
    for c_pos, c in enumerate(idx):
        rest_cols = [x for x in idx if x != c]
        rest_rows = idx[1:]
        minor = _minor_det(T, rest_rows, rest_cols)
        term = _conv(T[:, first, c], minor)
        term = term if c_pos % 2 == 0 else -term
        out = term if out is None else _padd(out, term)
    return out


def _minor_det(T, rows, cols):
    if len(rows) == 1:
        return T[:, rows[0], cols[0]].copy()
    out = None
    for c_pos, c in enumerate(cols):
        rest = [x for x in cols if x != c]
        term = _conv(T[:, rows[0], c], _minor_det(T, rows[1:], rest))
        term = term if c_pos % 2 == 0 else -term
        out = term if out is None else _padd(out, term)
    return out


def _padd(a, b):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.result_type(a, b))
    out[: len(a)] += a
    out[: len(b)] += b
    return out


def _elementary_numeric(T: np.ndarray) -> list[np.ndarray]:
    from itertools import combinations

    N = T.shape[1]
    out = []
    for k in range(1, N + 1):
        acc = np.zeros(1, dtype=T.dtype)
        for idx in combinations(range(N), k):
            acc = _padd(acc, _det_poly(T, list(idx)))
        out.append(acc)
    return out


@dataclass
class Trajectory:
    """Sampled solution with conservation monitors.

    ``H``, ``centers`` and ``spectral`` hold one row per sample.
    """

    t: np.ndarray
    V: np.ndarray
    H: np.ndarray
    centers: np.ndarray
    spectral: np.ndarray
    aborted: bool = False
    message: str = ""
    drift: dict = field(default_factory=dict)


def relative_drift(series: np.ndarray, zero: float = 1e-13) -> float:
    """``max_t |x(t) - x(0)| / |x(0)|`` over all components.

    Components that vanish at ``t = 0`` up to roundoff (below ``zero`` times
    the largest entry) are structurally zero; their deviation is measured
    against the largest entry instead.
    """
    series = np.asarray(series)
    if series.size == 0:
        return 0.0
    x0 = series[0]
    dev = np.abs(series - x0)
    top = float(np.max(np.abs(x0))) or 1.0
    scale = np.where(np.abs(x0) > zero * top, np.abs(x0), top)
    return float(np.max(dev / scale))


def _monitor(sys: FlowSystem, V):
    return sys.H_plan(V), sys.center_plan(V), sys.spectral_coefficients(V)


def integrate(sys: FlowSystem, flow, V0, t_end: float, dt: float, method: str = "rk4",
              monitor_every: int = 1, floor: float = 1e-12, rtol: float = 1e-12, atol: float = 1e-14) -> Trajectory:
    """Integrate a flow from ``V0`` over ``[0, t_end]``.

    ``flow`` is an integral index ``i``, ``"all"``, or a weight tuple.

    ``method="rk4"`` is the classical fixed-step scheme; ``"dopri"`` uses an
    adaptive Dormand-Prince 8(5,3) solver sampled on the same grid.
    Integration stops early if any ``|V_n|`` falls below ``floor``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    V = np.array(V0, dtype=complex if np.iscomplexobj(V0) else float)
    steps = int(round(t_end / dt))
    plan = sys.plan(flow)
    ts, Vs = [0.0], [V.copy()]
    aborted, msg = False, ""
    if method == "rk4":
        for n in range(1, steps + 1):
            k1 = plan(V)
            k2 = plan(V + 0.5 * dt * k1)
            k3 = plan(V + 0.5 * dt * k2)
            k4 = plan(V + dt * k3)
            V = V + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            if np.min(np.abs(V)) < floor:
                aborted, msg = True, f"|V| fell below {floor} at t={n * dt:.6g}"
                break
            if n % monitor_every == 0 or n == steps:
                ts.append(n * dt)
                Vs.append(V.copy())
    elif method == "dopri":
        grid = np.linspace(0.0, steps * dt, steps // monitor_every + 1)

        def small(t, y):
            return np.min(np.abs(y)) - floor

        small.terminal = True
        sol = solve_ivp(lambda t, y: plan(y), (0.0, grid[-1]), V, method="DOP853", t_eval=grid,
                        rtol=rtol, atol=atol, events=small)
        ts = list(sol.t)
        Vs = list(sol.y.T)
        if sol.status == 1:
            aborted, msg = True, f"|V| fell below {floor}"
        elif sol.status < 0:
            aborted, msg = True, sol.message
    else:
        raise ValueError(f"unknown method {method!r}")
    mons = [_monitor(sys, v) for v in Vs]
    traj = Trajectory(
        np.array(ts), np.array(Vs),
        np.array([m[0] for m in mons]), np.array([m[1] for m in mons]), np.array([m[2] for m in mons]),
        aborted, msg,
    )
    traj.drift = {
        "H": relative_drift(traj.H),
        "centers": relative_drift(traj.centers),
        "spectral": relative_drift(traj.spectral),
    }
    if aborted:
        raise FlowAborted(msg) if not Vs else _Partial(traj, msg)
    return traj


class _Partial(FlowAborted):
    def __init__(self, traj: Trajectory, msg: str):
        super().__init__(msg)
        self.trajectory = traj


def bogoyavlensky_field(V, N: int) -> np.ndarray:
    """``2 V_n sum_{k=1}^{N-1} (V_{n+k} - V_{n-k})`` with periodic indices."""
    V = np.asarray(V)
    out = np.zeros_like(V)
    for k in range(1, N):
        out = out + np.roll(V, -k) - np.roll(V, k)
    return 2 * V * out


def initial_state(L: int, seed: int = 0, low: float = 0.5, high: float = 1.5) -> np.ndarray:
    return np.random.default_rng(seed).uniform(low, high, L)
