"""Polynomial-basis oracle: change of basis, weight, normality report."""

import random

import nbgroup as nb
from nbgroup.convolution import CyclicVector
from nbgroup.engine import NormalBasisContext
from nbgroup.oracle import from_polynomial, to_polynomial, verify_normal


class TestChangeOfBasis:
    def test_round_trip(self, add5, kum61, luc7):
        rng = random.Random(30)
        for ctx in (add5, kum61, luc7):
            for _ in range(25):
                x = ctx.random_element(rng)
                assert from_polynomial(ctx, to_polynomial(ctx, x)) == x

    def test_lucas_theta0(self, luc7):
        z = to_polynomial(luc7, luc7.element([1, 0, 0, 0]))
        assert z == (0, 3, 4, 6)   # 6*theta^3 + 4*theta^2 + 3*theta

    def test_linear(self, kum61):
        rng = random.Random(31)
        for _ in range(20):
            x, y = kum61.random_element(rng), kum61.random_element(rng)
            zx, zy = to_polynomial(kum61, x), to_polynomial(kum61, y)
            assert to_polynomial(kum61, nb.nb_add(kum61, x, y)) == kum61.ext.radd(zx, zy)


class TestOracleRing:
    def test_associative_commutative_identity(self, add5, luc7):
        rng = random.Random(32)
        for ctx in (add5, luc7):
            one = ctx.one_element()
            for _ in range(25):
                x, y, z = (ctx.random_element(rng) for _ in range(3))
                assert nb.oracle_multiply(ctx, x, y) == nb.oracle_multiply(ctx, y, x)
                lhs = nb.oracle_multiply(ctx, nb.oracle_multiply(ctx, x, y), z)
                rhs = nb.oracle_multiply(ctx, x, nb.oracle_multiply(ctx, y, z))
                assert lhs == rhs
                assert nb.oracle_multiply(ctx, one, x) == x


class TestWeight:
    def test_reference_weights(self, add5, kum61):
        assert nb.compute_weight(add5) == 13
        assert nb.compute_weight(kum61) == 16

    def test_small_additive_bound(self):
        # any additive context with p = 3 has weight <= 7
        from nbgroup.additive import default_isogeny_target
        from nbgroup.fields import spec_of_order

        base = spec_of_order(9)
        ctx = nb.build_additive_context(nb.AdditiveParams(
            base, default_isogeny_target(base),
            nb.FieldElement(base, base.raw_from_coeffs([0, 1]))))
        assert nb.compute_weight(ctx) <= 7


def _corrupt_i_vec(ctx: NormalBasisContext) -> NormalBasisContext:
    bad = list(ctx.i_vec.entries)
    bad[0] = ctx.base.radd(bad[0], ctx.base.one)
    return NormalBasisContext(
        ctx.kind, ctx.base, ctx.n,
        i_vec=CyclicVector(ctx.base, bad),
        u_vec=ctx.u_vec, u_inv_vec=ctx.u_inv_vec, w_vec=ctx.w_vec,
        scale=ctx.scale, differenced=ctx.differenced, ext=ctx.ext,
        theta_rows=ctx.theta_rows, one_coords=ctx.one_coords,
        frobenius_shift=ctx.frobenius_shift, params=ctx.params,
    )


class TestVerifyNormal:
    def test_reference_contexts_pass(self, add5, kum61, luc7):
        for ctx in (add5, kum61, luc7):
            report = verify_normal(ctx, trials=20, seed=0)
            assert report.ok, "\n".join(report.lines())

    def test_corrupted_i_vec_fails_oracle_check(self, kum61):
        report = verify_normal(_corrupt_i_vec(kum61), trials=10, seed=0)
        assert not report.ok
        failing = [name for name, passed, _ in report.checks if not passed]
        assert any("oracle" in name for name in failing)

    def test_report_is_not_an_exception(self, kum61):
        # failure reporting, not raising
        report = verify_normal(_corrupt_i_vec(kum61), trials=5, seed=1)
        assert isinstance(report.lines(), list)

    def test_weight_bounds_reported(self, add5):
        report = verify_normal(add5, trials=0)
        names = [name for name, _, _ in report.checks]
        assert any("3n-2" in n for n in names)
        assert any("2n-1" in n for n in names)

    def test_lucas_reports_lower_bound_only(self, luc7):
        report = verify_normal(luc7, trials=0)
        names = [name for name, _, _ in report.checks]
        assert not any("3n-2" in n for n in names)
        assert any("2n-1" in n for n in names)
