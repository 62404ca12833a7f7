import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lvsov.monodromy import (
    ClassificationError,
    MonodromyClass,
    all_classes,
    brute_force_classes,
    build_T,
    classify_F,
    lax_product,
    lax_product_class,
    local_lax,
    mu_pattern,
    product_residues,
    random_T,
    verify_spectral_invariants,
)
from lvsov.poly_core import BiPoly, UniPoly, char_poly, polymat_det
from lvsov.symbolic_poisson import lax_structure, matrix_bracket_residual, residual_is_zero


# m=1 classes whose monodromy is nilpotent: char_poly is w^N and carries no class data
NILPOTENT = {(3, 1, 2, 3), (4, 1, 2, 4), (4, 1, 3, 3), (4, 1, 3, 4)}


def cls_strategy(Ns=(2, 3, 4), m_max=3):
    return st.sampled_from([c for N in Ns for c in all_classes(N, m_max) if (N, *c.triple) not in NILPOTENT])


class TestPatterns:
    def test_minus_n3(self):
        assert mu_pattern(3, "minus", 1).array.tolist() == [[0, 0, 0], [1, 1, 0], [1, 1, 1]]

    def test_plus_n2(self):
        assert mu_pattern(2, "plus", 2).array.tolist() == [[0, 1], [0, 0]]

    def test_plus0_n3(self):
        assert mu_pattern(3, "plus0", 0).array.tolist() == [[1, 1, 1], [1, 1, 1], [0, 1, 1]]

    @pytest.mark.parametrize("N,kind,i", [(2, "minus0", 0), (3, "minus", 3), (2, "plus", 3), (3, "bogus", 1)])
    def test_out_of_range(self, N, kind, i):
        with pytest.raises(ValueError):
            mu_pattern(N, kind, i)


class TestClass:
    @pytest.mark.parametrize("args", [(1, 2, 1, 1), (2, 0, 1, 1), (2, 1, 2, 1), (2, 1, 1, 3)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            MonodromyClass(*args)

    @given(st.integers(2, 5), st.integers(1, 60))
    def test_residue_identities(self, N, L):
        m, m1, m2, k, k1, k2 = product_residues(N, L)
        assert N * (N - 1) * m + k == L
        assert N * m2 + k2 == L
        # k1 is lifted to N-1 when it would vanish while k2 does not
        assert (N - 1) * m1 + (k1 if k1 != N - 1 or L % (N - 1) else 0) == L
        assert 0 <= k2 < N and 0 <= k1 <= N - 1

    def test_build_count_mismatch(self):
        with pytest.raises(ValueError):
            build_T(MonodromyClass(2, 2, 1, 1), [1, 2])

    def test_m2_n2_example(self):
        T = random_T(MonodromyClass(2, 2, 1, 1), 3)
        masks = T.zero_masks()
        assert masks[2].tolist() == mu_pattern(2, "minus", 1).array.tolist()
        assert masks[0].tolist() == mu_pattern(2, "plus", 1).array.tolist()
        assert masks[1].tolist() == [[1, 1], [1, 1]]

    def test_m1_intersection_example(self):
        c = MonodromyClass(3, 1, 2, 2)
        masks = random_T(c, 0).zero_masks()
        # plus0(-1) does not exist for N=3, so the upper factor is the full block
        assert masks[1].tolist() == mu_pattern(3, "minus", 2).array.tolist()
        assert masks[0].tolist() == (mu_pattern(3, "minus0", 0) & mu_pattern(3, "plus", 2)).tolist()

    @pytest.mark.parametrize("cls", [c for N in (2, 3) for c in all_classes(N, 4) if c.m >= 3], ids=str)
    def test_constant_term_is_plus_block(self, cls):
        T = random_T(cls, 0)
        assert T.zero_masks()[0].tolist() == mu_pattern(cls.N, "plus", cls.n2).array.tolist()


class TestClassifyF:
    def test_n2_example(self):
        F = char_poly(random_T(MonodromyClass(2, 2, 1, 1), 0).matrix)
        f1 = F.char_coeffs()[0]
        assert (f1.degree, f1.order()) == (2, 0)
        assert classify_F(F, 2).triple == (2, 1, 1)

    def test_n3_example(self):
        F = char_poly(random_T(MonodromyClass(3, 2, 2, 2), 0).matrix)
        f2 = F.char_coeffs()[1]
        assert (f2.degree, f2.order()) == (3, 1)
        assert classify_F(F, 3).triple == (2, 2, 2)

    @given(cls_strategy(), st.integers(0, 10_000))
    def test_round_trip(self, cls, seed):
        F = char_poly(random_T(cls, seed).matrix)
        fN1 = F.char_coeffs()[cls.N - 2]
        assert fN1.degree == (cls.N - 1) * cls.m - cls.n1 + 1
        assert fN1.order() == cls.n2 - 1
        assert classify_F(F, cls.N) == cls

    @pytest.mark.parametrize("key", sorted(NILPOTENT))
    def test_nilpotent_classes(self, key):
        N, m, n1, n2 = key
        F = char_poly(random_T(MonodromyClass(N, m, n1, n2), 0).matrix)
        assert F.terms == {(0, N): 1}
        with pytest.raises(ClassificationError):
            classify_F(F, N)

    def test_not_monic(self):
        F = BiPoly({(0, 2): 2, (1, 1): 1, (0, 0): 1})
        with pytest.raises(ClassificationError):
            classify_F(F, 2)

    def test_wrong_degree(self):
        with pytest.raises(ClassificationError):
            classify_F(BiPoly({(0, 3): 1, (1, 0): 1}), 2)


class TestLax:
    def test_local_lax_n2(self):
        s = lax_structure(2, 1)
        T = local_lax(2, 1, s)
        l0, l1, l2 = (s.gen(f"l1_{k}") for k in range(3))
        assert T[0, 0].is_zero()
        assert T[0, 1] == UniPoly([l1])
        assert T[1, 0] == UniPoly([0, l2])
        assert T[1, 1] == UniPoly([0, l0])
        assert polymat_det(T) == UniPoly([0, -(l1 * l2)])

    def test_local_lax_n3_degrees(self):
        T = local_lax(3, 1, lax_structure(3, 1))
        assert T[0, 1].degree == 0 and T[1, 2].degree == 0
        assert T[2, 0].degree == 1 and T[2, 1].degree == 1

    @pytest.mark.parametrize("N,L,triple", [(3, 1, (1, 2, 2)), (2, 5, (3, 1, 2)), (3, 7, (2, 2, 2)),
                                            (3, 12, (2, 1, 1)), (2, 4, (2, 1, 1)), (3, 9, (2, 2, 1))])
    def test_class_examples(self, N, L, triple):
        assert lax_product_class(N, L).triple == triple

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_class_matches_brute_force(self, N):
        for L in range(1, 21):
            brute = brute_force_classes(N, L, seed=L)
            assert brute == [lax_product_class(N, L)], (N, L)

    @pytest.mark.parametrize("N,L", [(2, 4), (3, 7), (2, 1), (3, 5)])
    def test_spectral_invariants(self, N, L):
        rep = verify_spectral_invariants(*lax_product(N, L))
        assert rep.passed
        assert rep.center_residuals and (rep.involution_residuals or N == 2 and L == 1)

    @pytest.mark.parametrize("N,L", [(2, 3), (3, 4)])
    def test_right_order_also_satisfies_relation(self, N, L):
        T, s = lax_product(N, L, order="right")
        assert residual_is_zero(matrix_bracket_residual(T, s))
