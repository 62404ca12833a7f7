import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lvsov.monodromy import lax_product
from lvsov.symbolic_poisson import (
    BracketStructure,
    LaurentPoly,
    bracket,
    jacobi_residual,
    lax_structure,
    lv_structure,
    matrix_bracket_residual,
    pq_structure,
    residual_is_zero,
    residual_size,
)
from oracles import lv_structure_matrix

STRUCTURES = [lv_structure(2, 5), lv_structure(3, 7), pq_structure(3), lax_structure(3, 2)]


@st.composite
def laurent(draw, s, max_terms=3):
    out = s.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        exps = draw(st.lists(st.integers(-2, 2), min_size=s.nvars, max_size=s.nvars))
        out = out + LaurentPoly.monomial(s.nvars, exps, draw(st.integers(-3, 3)))
    return out


@st.composite
def structure_and_polys(draw, k=3):
    s = draw(st.sampled_from(STRUCTURES))
    return (s, *[draw(laurent(s)) for _ in range(k)])


class TestLaurent:
    def test_generator_inverse(self):
        s = lv_structure(2, 3)
        x = s.gen("V2")
        assert x * s.gen("V2", -1) == s.const(1)

    def test_evaluate(self):
        s = lv_structure(2, 3)
        p = s.gen(0) * s.gen(1, -1) + s.const(3)
        assert p.evaluate([2.0, 4.0, 1.0, 1.0]) == pytest.approx(3.5)


class TestBracket:
    def test_lv_generators(self):
        s = lv_structure(2, 4)
        V = [s.gen(i) for i in range(4)]
        assert bracket(V[0], V[1], s) == V[0] * V[1] * 2
        assert bracket(V[1], V[0], s) == V[0] * V[1] * -2
        assert not bracket(V[0], V[2], s)

    @pytest.mark.parametrize("N,L", [(2, 3), (2, 6), (3, 5), (3, 8), (4, 9)])
    def test_lv_matrix_matches_definition(self, N, L):
        s = lv_structure(N, L)
        assert np.array_equal(s.C[:L, :L] // s.denom, 2 * lv_structure_matrix(N, L))

    @pytest.mark.parametrize("N,L", [(2, 4), (3, 7)])
    def test_p0_commutes(self, N, L):
        s = lv_structure(N, L)
        P0 = s.gen("P0")
        assert all(not bracket(P0, s.gen(n), s) for n in range(L))

    def test_pq_canonical(self):
        s = pq_structure(2)
        P1, P2, Q1 = s.gen("P1"), s.gen("P2"), s.gen("Q1")
        assert bracket(P1, Q1, s) == P1 * Q1
        assert not bracket(P2, Q1, s)

    def test_rejects_non_antisymmetric(self):
        with pytest.raises(ValueError):
            BracketStructure(["a", "b"], [[0, 1], [1, 0]])

    @given(structure_and_polys(2))
    def test_antisymmetry(self, data):
        s, f, g = data
        assert bracket(f, g, s) == -bracket(g, f, s)

    @given(structure_and_polys(3))
    def test_leibniz(self, data):
        s, f, g, h = data
        assert bracket(f * g, h, s) == f * bracket(g, h, s) + bracket(f, h, s) * g

    @given(structure_and_polys(3))
    def test_jacobi(self, data):
        s, f, g, h = data
        assert not jacobi_residual(f, g, h, s)


class TestRMatrix:
    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_single_site(self, N):
        T, s = lax_product(N, 1)
        assert residual_is_zero(matrix_bracket_residual(T, s))

    @pytest.mark.parametrize("N,L", [(2, L) for L in range(2, 9)] + [(3, L) for L in range(2, 9)])
    def test_products(self, N, L):
        T, s = lax_product(N, L)
        assert residual_size(matrix_bracket_residual(T, s)) == 0

    @pytest.mark.parametrize("N,L", [(2, 1), (2, 3), (3, 4)])
    def test_detects_wrong_structure(self, N, L):
        s = lax_structure(N, L)
        flipped = BracketStructure(s.names, -s.C)
        T, _ = lax_product(N, L, flipped)
        assert residual_size(matrix_bracket_residual(T, flipped)) > 0

    def test_rejects_size_mismatch(self):
        T, s = lax_product(2, 1)
        with pytest.raises(ValueError):
            matrix_bracket_residual(T, s, N=3)
