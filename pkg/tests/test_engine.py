"""The shared multiplication kernel: counters, laws, Frobenius, errors."""

import random

import pytest

import nbgroup as nb
from nbgroup.engine import OpCounter, nb_sub
from nbgroup.errors import SpecMismatch
from nbgroup.oracle import oracle_power, structure_constants


def _contexts(add5, kum61, luc7):
    return {"additive": add5, "multiplicative": kum61, "lucas": luc7}


class TestOperationCount:
    def test_exactly_5_convolutions_2_pointwise(self, add5, kum61, luc7):
        rng = random.Random(20)
        for ctx in (add5, kum61, luc7):
            counter = OpCounter()
            nb.nb_multiply(ctx, ctx.random_element(rng), ctx.random_element(rng), counter=counter)
            assert counter.convolutions == 5
            assert counter.pointwise_products == 2


class TestAlgebraicLaws:
    def test_commutative_and_distributive(self, add5, kum61, luc7):
        rng = random.Random(21)
        for ctx in (add5, kum61, luc7):
            for _ in range(40):
                x, y, z = (ctx.random_element(rng) for _ in range(3))
                assert nb.nb_multiply(ctx, x, y) == nb.nb_multiply(ctx, y, x)
                lhs = nb.nb_multiply(ctx, x, nb.nb_add(ctx, y, z))
                rhs = nb.nb_add(ctx, nb.nb_multiply(ctx, x, y), nb.nb_multiply(ctx, x, z))
                assert lhs == rhs

    def test_one_coords_are_identity(self, add5, kum61, luc7):
        rng = random.Random(22)
        for ctx in (add5, kum61, luc7):
            one = ctx.one_element()
            for _ in range(20):
                x = ctx.random_element(rng)
                assert nb.nb_multiply(ctx, one, x) == x

    def test_add_is_componentwise(self, kum61):
        x = kum61.element([1, 2, 3, 4, 5, 6])
        y = kum61.element([60, 60, 60, 60, 60, 60])
        assert nb.nb_add(kum61, x, y).coords == nb.CyclicVector(kum61.base, [0, 1, 2, 3, 4, 5])
        assert nb_sub(kum61, x, x).coords == nb.CyclicVector(kum61.base, [0] * 6)

    def test_zero_annihilates(self, add5, kum61, luc7):
        rng = random.Random(23)
        for ctx in (add5, kum61, luc7):
            zero = ctx.zero_element()
            x = ctx.random_element(rng)
            assert nb.nb_multiply(ctx, zero, x) == zero


class TestOracleEquivalence:
    def test_hundred_random_pairs_each(self, add5, kum61, luc7):
        for seed, ctx in enumerate((add5, kum61, luc7)):
            matches, total = nb.oracle_trials(ctx, 100, seed=seed)
            assert matches == total == 100

    def test_both_convolution_paths(self, kum61):
        rng = random.Random(24)
        for _ in range(25):
            x, y = kum61.random_element(rng), kum61.random_element(rng)
            fast = nb.nb_multiply(kum61, x, y, conv_mode="fast")
            naive = nb.nb_multiply(kum61, x, y, conv_mode="naive")
            assert fast == naive


class TestFrobenius:
    def test_trivial_shifts(self, kum61):
        rng = random.Random(25)
        x = kum61.random_element(rng)
        assert nb.nb_frobenius(kum61, x, 0) == x
        assert nb.nb_frobenius(kum61, x, kum61.n) == x

    def test_shift_commutes_with_multiplication(self, add5, kum61, luc7):
        rng = random.Random(26)
        for ctx in (add5, kum61, luc7):
            for _ in range(25):
                x, y = ctx.random_element(rng), ctx.random_element(rng)
                lhs = nb.nb_frobenius(ctx, nb.nb_multiply(ctx, x, y), 1)
                rhs = nb.nb_multiply(ctx, nb.nb_frobenius(ctx, x, 1), nb.nb_frobenius(ctx, y, 1))
                assert lhs == rhs

    def test_shift_matches_oracle_exponentiation(self, add5, kum61, luc7):
        # shifting by frobenius_shift equals raising to |K| on the oracle side
        rng = random.Random(27)
        for ctx in (add5, kum61, luc7):
            for _ in range(25):
                x = ctx.random_element(rng)
                shifted = nb.nb_frobenius(ctx, x, ctx.frobenius_shift)
                assert shifted == oracle_power(ctx, x, ctx.base.q)


class TestStructureRows:
    def test_rows_regenerate_basis_products(self, add5, kum61, luc7):
        for ctx in (add5, kum61, luc7):
            rows = structure_constants(ctx)
            e0 = ctx.element([1] + [0] * (ctx.n - 1))
            for i in range(ctx.n):
                ei = ctx.element([1 if j == i else 0 for j in range(ctx.n)])
                assert nb.nb_multiply(ctx, e0, ei).coords == rows[i]

    def test_ck_cyclic_shift_law(self, add5, kum61, luc7):
        # coordinates of (s^j a)(s^j b) are the j-fold shift of those of a*b
        rng = random.Random(28)
        for ctx in (add5, kum61, luc7):
            for _ in range(10):
                x, y = ctx.random_element(rng), ctx.random_element(rng)
                base_prod = nb.nb_multiply(ctx, x, y)
                for j in (1, 2, ctx.n - 1):
                    shifted = nb.nb_multiply(
                        ctx, nb.nb_frobenius(ctx, x, j), nb.nb_frobenius(ctx, y, j))
                    assert shifted == nb.nb_frobenius(ctx, base_prod, j)


class TestErrors:
    def test_wrong_length(self, kum61):
        with pytest.raises(SpecMismatch):
            kum61.element([1, 2, 3])

    def test_wrong_field(self, kum61, add5):
        foreign = add5.element([1, 0, 0, 0, 0])
        with pytest.raises(SpecMismatch):
            nb.nb_multiply(kum61, foreign, foreign)
