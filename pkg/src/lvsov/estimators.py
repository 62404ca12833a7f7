"""scikit-learn transformers over LV(N, L) states.

Rows of ``X`` are states ``(V_1, ..., V_L)``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .gauge_sov.recipes import NonGenericPoint
from .gauge_sov.separation import DivisorError
from .lotka_volterra.flows import PolyPlan
from .lotka_volterra.integrals import extract_im
from .lotka_volterra.model import check_range, lv_model
from .lotka_volterra.sov import lv_divisor
from .poly_core.roots import RootError


def _check_states(est, X, reset: bool):
    X = check_array(X, dtype=np.float64)
    if reset:
        est.n_features_in_ = X.shape[1]
    if X.shape[1] != est.L:
        raise ValueError(f"expected {est.L} columns (V_1..V_{est.L}), got {X.shape[1]}")
    if np.any(X == 0):
        raise ValueError("states must have all V_n nonzero")
    return X


class SpectralInvariants(TransformerMixin, BaseEstimator):
    """Map states to the values of the integrals of motion ``H_1..H_{n_H}``.

    Parameters
    ----------
    N, L : int
        Lattice parameters, ``L >= 2N - 1``.
    seed : int
        Seed of the independence test used while extracting the integrals.

    Attributes
    ----------
    n_H_ : int
    integrals_ : list of str
        The integrals as readable polynomials in ``V1..VL``.
    """

    def __init__(self, N: int = 2, L: int = 4, seed: int = 0):
        self.N = N
        self.L = L
        self.seed = seed

    def fit(self, X, y=None):
        check_range(self.N, self.L)
        _check_states(self, X, reset=True)
        im = extract_im(lv_model(self.N, self.L), seed=self.seed)
        names = [f"V{n}" for n in range(1, self.L + 1)] + ["P0"]
        self.integrals_ = [h.format(names) for h in im.H]
        self.n_H_ = im.n_H
        self.plan_ = PolyPlan(im.H, self.L)
        return self

    def transform(self, X):
        check_is_fitted(self, "plan_")
        X = _check_states(self, X, reset=False)
        return np.array([self.plan_(row) for row in X]).reshape(len(X), self.n_H_)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "plan_")
        return np.array([f"H{i}" for i in range(1, self.n_H_ + 1)], dtype=object)


class SeparatedVariables(TransformerMixin, BaseEstimator):
    """Map states to their divisor ``(z_i, w_i)``, ``i = 1..g``.

    Each output row is ``Re z_1, Im z_1, Re w_1, Im w_1, ...`` with points
    ordered by ``(Re z, Im z)``.

    Parameters
    ----------
    N, L : int
    tol : float
        Relative curve residual accepted for each point.
    on_error : {"raise", "nan"}
        Non-generic states either raise or produce a row of NaN.
    """

    def __init__(self, N: int = 2, L: int = 4, tol: float = 1e-9, on_error: str = "raise"):
        self.N = N
        self.L = L
        self.tol = tol
        self.on_error = on_error

    def fit(self, X, y=None):
        check_range(self.N, self.L)
        if self.on_error not in ("raise", "nan"):
            raise ValueError("on_error must be 'raise' or 'nan'")
        X = _check_states(self, X, reset=True)
        self.class_ = lv_model(self.N, self.L).cls
        self.g_ = len(lv_divisor(self.N, X[0], self.tol)) if len(X) else None
        return self

    def _row(self, v):
        try:
            pts = lv_divisor(self.N, v, self.tol).points
        except (NonGenericPoint, DivisorError, RootError):
            if self.on_error == "raise":
                raise
            return np.full(4 * self.g_, np.nan)
        pts = sorted(pts, key=lambda p: (p[0].real, p[0].imag))
        if len(pts) != self.g_:
            if self.on_error == "raise":
                raise NonGenericPoint(f"divisor has {len(pts)} points, expected {self.g_}")
            return np.full(4 * self.g_, np.nan)
        return np.array([x for z, w in pts for x in (z.real, z.imag, w.real, w.imag)])

    def transform(self, X):
        check_is_fitted(self, "g_")
        X = _check_states(self, X, reset=False)
        return np.array([self._row(v) for v in X]).reshape(len(X), 4 * self.g_)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "g_")
        out = []
        for i in range(1, self.g_ + 1):
            out += [f"re_z{i}", f"im_z{i}", f"re_w{i}", f"im_w{i}"]
        return np.array(out, dtype=object)
