import itertools

import numpy as np
import pytest

from lvsov.lotka_volterra import (
    CapExceeded,
    FlowAborted,
    FlowSystem,
    OutOfScope,
    bogoyavlensky_field,
    center_count,
    center_spec,
    certify,
    check_range,
    count_im_by_rank,
    extract_im,
    initial_state,
    integrate,
    k_set,
    lv_canonical_check,
    lv_divisor,
    lv_model,
    numeric_T,
    pq_realization_check,
    relative_drift,
    sharpness,
    table,
)
from lvsov.monodromy import lax_product_class
from lvsov.poly_core import char_poly, polymat_det
from lvsov.symbolic_poisson import bracket
from oracles import center_dimension, hamiltonian_field, lv_field, lv_structure_matrix, n2_table_genus, n3_table_genus

NAMES = {L: [f"V{n}" for n in range(1, L + 1)] + ["P0"] for L in range(3, 20)}


class TestModel:
    @pytest.mark.parametrize("N,L", [(2, 2), (3, 4), (1, 5)])
    def test_range(self, N, L):
        with pytest.raises(ValueError):
            check_range(N, L)

    @pytest.mark.parametrize("N,L", [(2, L) for L in range(3, 13)] + [(3, L) for L in range(5, 13)])
    def test_det_is_power_of_z(self, N, L):
        assert lv_model(N, L).det_check()

    @pytest.mark.parametrize("N,L", [(2, L) for L in range(3, 13)] + [(3, L) for L in range(5, 13)])
    def test_zero_pattern_matches_class(self, N, L):
        m = lv_model(N, L)
        expected = m.cls.block_masks()
        got = m.zero_masks()
        assert len(got) == len(expected)
        assert all(np.array_equal(a, b) for a, b in zip(got, expected))

    def test_24_trace_profile(self):
        m = lv_model(2, 4)
        s = m.structure
        V = m.V
        P0 = s.gen("P0")
        f1 = m.T[0, 0] + m.T[1, 1]
        assert list(f1.coeffs) == [P0 * (V[0] * V[2] + V[1] * V[3]), -P0 * (V[0] + V[1] + V[2] + V[3]), P0]

    def test_37_class(self):
        assert lv_model(3, 7).cls.triple == (2, 2, 2)

    def test_numeric_matches_symbolic(self):
        V = [0.7, 1.3, 0.9, 1.1, 0.6]
        T = numeric_T(2, V)
        m = lv_model(2, 5)
        p0 = np.prod(V) ** (-1 / 2)
        vals = V + [p0]
        for i, j in itertools.product(range(2), repeat=2):
            sym = [c.evaluate(vals) if c else 0 for c in m.T[i, j].coeffs]
            num = [complex(c) for c in T[i, j].coeffs]
            assert np.allclose(sym + [0] * (len(num) - len(sym)), num + [0] * (len(sym) - len(num)), atol=1e-12)


class TestIntegrals:
    def test_24(self):
        im = extract_im(lv_model(2, 4))
        assert [h.format(NAMES[4]) for h in im.H] == ["V1 + V2 + V3 + V4"]
        s = lv_model(2, 4).structure
        V = lv_model(2, 4).V
        assert any(c.central and c.poly == V[0] * V[2] + V[1] * V[3] for c in im.central)

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_even_count(self, m):
        assert extract_im(lv_model(2, 2 * m)).n_H == m - 1

    @pytest.mark.parametrize("N,L", [(2, L) for L in range(3, 11)] + [(3, L) for L in range(5, 10)])
    def test_involution(self, N, L):
        model = lv_model(N, L)
        H = extract_im(model).H
        for a, b in itertools.combinations(H, 2):
            assert not bracket(a, b, model.structure)

    @pytest.mark.parametrize("N,L", [(2, 7), (3, 8)])
    def test_homogeneous_and_sign(self, N, L):
        H = extract_im(lv_model(N, L)).H
        degs = []
        for h in H:
            prof = h.degree_profile([1] * L + [0])
            assert len(prof) == 1
            degs.append(prof.pop())
            assert h.format(NAMES[L]).split()[0][0] != "-"
        assert degs == sorted(degs)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            extract_im((2, 30))

    @pytest.mark.parametrize("N,L", [(2, 9), (3, 10)])
    def test_rank_count_matches_symbolic(self, N, L):
        assert count_im_by_rank(N, L)["n_H"] == extract_im((N, L)).n_H


class TestCenter:
    def test_k_set(self):
        assert k_set(3, 12) == [1, 2, 3]
        assert k_set(2, 7) == [1]

    @pytest.mark.parametrize("N,L", [(N, L) for N in (2, 3, 4) for L in range(2 * N - 1, 19)])
    def test_count_is_corank(self, N, L):
        assert center_count(N, L) == center_dimension(N, L)

    @pytest.mark.parametrize("N,L", [(2, L) for L in range(3, 11)] + [(3, L) for L in range(5, 10)])
    def test_generators_central_and_sharp(self, N, L):
        spec = center_spec(N, L)  # raises if any generator fails
        assert len(spec.generators) >= spec.n0
        assert all(sharpness(N, L).values())

    def test_36_relations(self):
        # f_2m, f_3m, f_4m of LV(3,6m) are central
        im = extract_im(lv_model(3, 6))
        assert all(c.central for c in im.central)
        assert len(im.central) >= 3


class TestPQ:
    @pytest.mark.parametrize("N,L", [(N, L) for N in (2, 3) for L in range(2 * N - 1, 11)])
    def test_realization(self, N, L):
        rep = pq_realization_check(N, L)
        assert rep.passed and rep.pairs == L * L


class TestCertify:
    @pytest.mark.parametrize("L", range(3, 13))
    def test_n2_table_rows(self, L):
        c = certify(2, L)
        assert c.passed and c.g == n2_table_genus(L) and c.n_H == (L - c.n0) // 2

    @pytest.mark.parametrize("L", range(5, 18))
    def test_n3_table_rows(self, L):
        c = certify(3, L)
        assert c.passed and c.g == n3_table_genus(L)

    def test_beyond_cap_uses_rank(self):
        c = certify(2, 20)
        assert c.im_method == "jacobian-rank" and c.passed and c.g == 9

    def test_n4_in_scope(self):
        c = certify(4, 12)
        assert c.passed and c.g == c.n_H == 3 and c.n0 == 6

    def test_n4_out_of_scope(self):
        with pytest.raises(OutOfScope):
            certify(4, 10)

    def test_to_dict(self):
        d = certify(3, 9).to_dict()
        assert d["class"] == {"m": 2, "n1": 2, "n2": 1}
        assert d["status"] == "PASS" and [c["name"] for c in d["checks"]][0] == "g == n_H"

    def test_table(self):
        assert table(2, 3, 12) == [(L, n2_table_genus(L)) for L in range(3, 13)]
        assert table(3, 5, 17) == [(L, n3_table_genus(L)) for L in range(5, 18)]


class TestFlows:
    @pytest.mark.parametrize("N,L", [(2, 5), (2, 6), (3, 7), (4, 9)])
    def test_flow_one_is_lattice_equation(self, N, L):
        sys = FlowSystem(N, L)
        V = initial_state(L, 3)
        assert np.allclose(sys.field(1, V), lv_field(V, N), rtol=0, atol=1e-14)
        assert np.allclose(bogoyavlensky_field(V, N), lv_field(V, N), rtol=0, atol=1e-14)

    def test_bracket_example(self):
        m = lv_model(2, 4)
        V = m.V
        H1 = V[0] + V[1] + V[2] + V[3]
        assert bracket(V[0], H1, m.structure) == V[0] * V[1] * 2 - V[0] * V[3] * 2

    def test_second_flow_finite_difference(self):
        sys = FlowSystem(2, 6)
        V = initial_state(6, 5)

        def H2(x):
            return sum(x[a] * x[b] for a, b in itertools.combinations(range(6), 2) if (b - a) % 6 not in (1, 5))

        ref = hamiltonian_field(H2, V, 2 * lv_structure_matrix(2, 6))
        got = sys.field(2, V)
        assert np.max(np.abs(got - ref)) <= 1e-6 * np.max(np.abs(ref))

    def test_fixed_point(self):
        sys = FlowSystem(2, 4)
        V = np.ones(4)
        tr = integrate(sys, 1, V, 0.5, 0.01)
        assert np.allclose(tr.V, 1.0)

    @pytest.mark.parametrize("method", ["rk4", "dopri"])
    def test_short_conservation(self, method):
        sys = FlowSystem(3, 7)
        tr = integrate(sys, "all", initial_state(7, 1), 1.0, 1e-3, method=method)
        assert max(tr.drift.values()) <= 1e-9
        assert tr.V.shape == (1001, 7)

    def test_dopri_matches_rk4(self):
        sys = FlowSystem(2, 5)
        V0 = initial_state(5, 2)
        a = integrate(sys, 1, V0, 1.0, 1e-3)
        b = integrate(sys, 1, V0, 1.0, 1e-3, method="dopri")
        assert np.max(np.abs(a.V[-1] - b.V[-1])) <= 1e-10

    def test_abort_on_small_state(self):
        sys = FlowSystem(2, 4)
        with pytest.raises(FlowAborted) as exc:
            integrate(sys, 1, [1.0, 1e-13, 1.0, 1.0], 0.1, 1e-3)
        assert getattr(exc.value, "trajectory", None) is not None

    def test_bad_inputs(self):
        sys = FlowSystem(2, 4)
        with pytest.raises(ValueError):
            integrate(sys, 1, np.ones(4), 1.0, 0.0)
        with pytest.raises(ValueError):
            integrate(sys, 1, np.ones(4), 1.0, 0.1, method="euler")

    def test_relative_drift(self):
        x = np.array([[1.0, 0.0, 2.0], [1.0 + 1e-9, 1e-20, 2.0]])
        assert relative_drift(x) == pytest.approx(1e-9)
        assert relative_drift(np.zeros((0, 2))) == 0.0


class TestSeparatedVariables:
    def test_24_closed_form(self):
        # under M_L ... M_1 the separation root is z1 = V1 + V2
        D = lv_divisor(2, [1.0, 2.0, 3.0, 4.0])
        assert len(D) == 1
        assert D.points[0][0] == pytest.approx(3.0, abs=1e-12)
        assert D.max_residual <= 1e-9

    def test_24_reversed_lattice_gives_v3_plus_v4(self):
        # relabelling n -> L+1-n mirrors the product order
        D = lv_divisor(2, [4.0, 3.0, 2.0, 1.0])
        assert D.points[0][0] == pytest.approx(7.0, abs=1e-12)

    @pytest.mark.parametrize("N,L", [(2, 6), (3, 7), (2, 9), (3, 10)])
    def test_canonical(self, N, L):
        rep = lv_canonical_check(N, initial_state(L, 11))
        assert rep.passed(1e-6)
        assert np.allclose(rep.ratios, 2.0, rtol=1e-6)

    @pytest.mark.parametrize("N,L", [(2, 6), (3, 7)])
    def test_divisor_invariance(self, N, L):
        from lvsov.gauge_sov import gauge_invariance

        V = initial_state(L, 4)
        T = numeric_T(N, V)
        rep = gauge_invariance(T, lax_product_class(N, L), char_poly(T))
        assert rep.base.max_residual <= 1e-9
        assert rep.gauge <= 1e-10 and max(rep.diagonal) <= 1e-10
