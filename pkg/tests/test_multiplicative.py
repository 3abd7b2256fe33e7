"""Kummer construction: the F_61 reference context and the sweep.

u_a, its inverse and w_a match the reference listing exactly; the reduction
vector and the product are the recomputed ground truth (three independent
derivations agree; see test_acceptance for the listed variants).
"""

import random

import pytest

import nbgroup as nb
from nbgroup.errors import BadRootOfUnity, OrderTooSmall
from nbgroup.fields import spec_of_order
from nbgroup.multiplicative import smallest_generator
from nbgroup.oracle import structure_constants, to_polynomial

F61 = nb.FieldSpec(61)


class TestReferenceContext:
    def test_evaluation_vectors(self, kum61):
        assert kum61.u_vec == nb.CyclicVector(F61, [1, 9, 21, 20, 22, 52])
        assert kum61.u_inv_vec == nb.CyclicVector(F61, [43, 11, 37, 55, 46, 32])
        assert kum61.w_vec == nb.CyclicVector(F61, [1, 20, 14, 34, 57, 20])

    def test_reduction_vector(self, kum61):
        # theta_0^2 = (1 + theta + ... + theta^5)^2 with theta^6 = 2:
        # the coordinates solve a 6x6 system; checked against the oracle here
        assert kum61.i_vec == nb.CyclicVector(F61, [39, 48, 57, 31, 5, 14])
        xi0 = kum61.ext.rmul(kum61.theta_rows[0], kum61.theta_rows[0])
        assert to_polynomial(kum61, kum61.element(kum61.i_vec)) == xi0

    def test_theta0_is_all_ones_polynomial(self, kum61):
        # 1/(theta - 1) = theta^5 + ... + 1 because theta^6 - 1 = 1
        assert to_polynomial(kum61, kum61.element([1, 0, 0, 0, 0, 0])) == (1,) * 6

    def test_reference_product(self, kum61):
        x = kum61.element([1, 3, 1, 1, 2, 1])
        y = kum61.element([2, 1, 1, 4, 2, 1])
        out = nb.nb_multiply(kum61, x, y)
        assert out.coords == nb.CyclicVector(F61, [45, 44, 11, 20, 29, 54])
        assert nb.oracle_multiply(kum61, x, y).coords == out.coords

    def test_weight_is_16(self, kum61):
        assert nb.compute_weight(kum61) == 16

    def test_structure_rows_match_partial_fractions(self, kum61):
        # theta_0 * theta_i = (1/(z^-i - 1)) * (theta_0 - z^-i * theta_i)
        rows = structure_constants(kum61)
        zeta = 48
        for i in range(1, 6):
            zi = pow(zeta, -i, 61)
            c = pow((zi - 1) % 61, -1, 61)
            expected = [0] * 6
            expected[0] = c
            expected[i] = (-c * zi) % 61
            assert rows[i] == nb.CyclicVector(F61, expected)
        # the listed i = 1 row: theta_0 * theta_1 = 47*(theta_0 - 14*theta_1)
        assert rows[1] == nb.CyclicVector(F61, [47, (-47 * 14) % 61, 0, 0, 0, 0])

    def test_modulus_is_irreducible(self, kum61):
        assert nb.poly_is_irreducible(kum61.ext.modulus)

    def test_frobenius_shift_is_one(self, kum61):
        assert kum61.frobenius_shift == 1
        rng = random.Random(12)
        for _ in range(20):
            x = kum61.random_element(rng)
            shifted = nb.nb_frobenius(kum61, x, 1)
            assert to_polynomial(kum61, shifted) == kum61.ext.rpow(to_polynomial(kum61, x), 61)


class TestValidation:
    def test_order_too_small(self):
        # 4 = 2^2 is a square, so its class in K*/(K*)^6 has even-defect order
        with pytest.raises(OrderTooSmall):
            nb.build_kummer_context(nb.KummerParams(F61, 6, 10, F61.element(4), F61.element(2)))

    def test_zero_a_rejected(self):
        with pytest.raises(OrderTooSmall):
            nb.build_kummer_context(nb.KummerParams(F61, 6, 10, F61.element(0), F61.element(2)))

    def test_bad_root_of_unity(self):
        # 48 has order 6, not 60
        with pytest.raises(BadRootOfUnity):
            nb.build_kummer_context(nb.KummerParams(F61, 6, 10, F61.element(2), F61.element(48)))

    def test_mn_must_divide_q_minus_1(self):
        with pytest.raises(ValueError):
            nb.build_kummer_context(nb.KummerParams(F61, 7, 2))

    def test_m_at_least_2(self):
        with pytest.raises(ValueError):
            nb.build_kummer_context(nb.KummerParams(F61, 6, 1))

    def test_default_m_is_maximal_cofactor(self):
        ctx = nb.build_kummer_context(nb.KummerParams(F61, 6))
        assert ctx.params["m"] == "10"

    def test_smallest_generator(self):
        assert smallest_generator(F61) == F61.element(2)


class TestSweep:
    @pytest.mark.parametrize("q,n,m", [(13, 2, 6), (13, 3, 4), (16, 3, 5), (25, 4, 6),
                                       (49, 6, 8), (61, 5, 12), (64, 7, 9)])
    def test_defaults_build_and_verify(self, q, n, m):
        base = spec_of_order(q)
        ctx = nb.build_kummer_context(nb.KummerParams(base, n, m))
        assert ctx.frobenius_shift == 1
        assert 2 * n - 1 <= nb.compute_weight(ctx) <= 3 * n - 2
        matches, total = nb.oracle_trials(ctx, 25, seed=q + n)
        assert matches == total

    def test_full_sweep_weight_bounds(self, sweep_contexts):
        for ctx in sweep_contexts["kummer"]:
            w = nb.compute_weight(ctx)
            assert 2 * ctx.n - 1 <= w <= 3 * ctx.n - 2, (ctx.base.q, ctx.n, w)
