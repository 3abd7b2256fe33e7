"""Ground-truth arithmetic in L via the polynomial basis.

Change of basis with Theta, structure constants, weight, and the normality
report.  Everything here is independent of the convolution pipeline, so it
serves as the oracle the engine is verified against.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .convolution import CyclicVector, identity_vector, pointwise
from .engine import NBElement, NormalBasisContext, OpCounter, nb_multiply
from .errors import SingularMatrix
from .fields import mat_vec


def to_polynomial(ctx: NormalBasisContext, x: NBElement):
    """Theta-coordinates -> element of L in the polynomial basis (L-raw)."""
    return tuple(mat_vec(ctx.base, ctx._basis_matrix, list(x.coords.entries)))


def from_polynomial(ctx: NormalBasisContext, z) -> NBElement:
    """Element of L (raw over the polynomial basis) -> Theta-coordinates."""
    coords = mat_vec(ctx.base, ctx.basis_matrix_inv(), list(z))
    return ctx.element(CyclicVector(ctx.base, coords))


def oracle_multiply(ctx: NormalBasisContext, x: NBElement, y: NBElement) -> NBElement:
    """Product computed entirely on the polynomial-basis side."""
    zx = to_polynomial(ctx, x)
    zy = to_polynomial(ctx, y)
    return from_polynomial(ctx, ctx.ext.rmul(zx, zy))


def oracle_power(ctx: NormalBasisContext, x: NBElement, e: int) -> NBElement:
    return from_polynomial(ctx, ctx.ext.rpow(to_polynomial(ctx, x), e))


def structure_constants(ctx: NormalBasisContext) -> list[CyclicVector]:
    """Row i: Theta-coordinates of theta_0 * theta_i."""
    rows = []
    t0 = ctx.theta_rows[0]
    for i in range(ctx.n):
        prod = ctx.ext.rmul(t0, ctx.theta_rows[i])
        rows.append(from_polynomial(ctx, prod).coords)
    return rows


def compute_weight(ctx: NormalBasisContext) -> int:
    """Nonzero coefficients across the expansions of theta_0 * theta_i.

    The i = 0 row (theta_0^2) is included; both worked examples count it and
    the n + 2(n-1) bound only fits with it.
    """
    zero = ctx.base.zero
    return sum(
        sum(1 for c in row.entries if c != zero)
        for row in structure_constants(ctx)
    )


def oracle_trials(ctx: NormalBasisContext, trials: int, seed: int = 0,
                  conv_mode: str = "auto") -> tuple[int, int]:
    """Random products, engine vs oracle.  Returns (matches, trials)."""
    rng = random.Random(seed)
    matches = 0
    for _ in range(trials):
        x = ctx.random_element(rng)
        y = ctx.random_element(rng)
        fast = nb_multiply(ctx, x, y, conv_mode=conv_mode)
        slow = oracle_multiply(ctx, x, y)
        if fast.coords == slow.coords:
            matches += 1
    return matches, trials


@dataclass
class NormalityReport:
    """Result of verify_normal: named checks plus the computed weight."""

    n: int
    weight: int
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def lines(self) -> list[str]:
        out = [f"degree n = {self.n}, weight = {self.weight}"]
        for name, passed, detail in self.checks:
            mark = "ok" if passed else "FAIL"
            out.append(f"  [{mark}] {name}" + (f": {detail}" if detail else ""))
        return out


def verify_normal(ctx: NormalBasisContext, trials: int = 20, seed: int = 0) -> NormalityReport:
    """Check the basis is normal and the pipeline data is consistent.

    Returns a failure report rather than raising.
    """
    n = ctx.n
    checks: list[tuple[str, bool, str]] = []

    try:
        ctx.basis_matrix_inv()
        checks.append(("theta matrix invertible", True, ""))
        invertible = True
    except SingularMatrix:
        checks.append(("theta matrix invertible", False, "singular"))
        invertible = False

    conj_ok = True
    f0 = ctx.frobenius_shift
    for k in range(n):
        img = ctx.ext.frobenius(ctx.theta_rows[k])
        if img != ctx.theta_rows[(k - f0) % n]:
            conj_ok = False
            break
    checks.append((
        "theta_k are the Galois conjugates of theta_0",
        conj_ok,
        f"|K|-power acts as coordinate shift by {f0}",
    ))

    weight = compute_weight(ctx) if invertible else 0
    if invertible:
        if ctx.kind != "lucas":
            # the torus construction promises fast multiplication, not low
            # weight: its rows carry a constant term that expands densely
            checks.append((f"weight <= 3n-2 = {3 * n - 2}", weight <= 3 * n - 2, f"weight = {weight}"))
        checks.append((f"weight >= 2n-1 = {2 * n - 1}", weight >= 2 * n - 1, f"weight = {weight}"))

        one = ctx.one_element()
        one_ok = to_polynomial(ctx, one) == ctx.ext.one
        checks.append(("stored coordinates of 1 reproduce the unit of L", one_ok, ""))

    from .convolution import convolve

    pipe_ok = convolve(ctx.u_vec, ctx.u_inv_vec) == identity_vector(ctx.base, n)
    checks.append(("u * u_inv is the convolution identity", pipe_ok, ""))
    if ctx.kind != "lucas":
        checks.append(("w = u <> u", ctx.w_vec == pointwise(ctx.u_vec, ctx.u_vec), ""))

    if invertible and trials > 0:
        matches, total = oracle_trials(ctx, trials, seed)
        checks.append((
            "engine products match the polynomial-basis oracle",
            matches == total,
            f"{matches}/{total}",
        ))
        counter = OpCounter()
        rng = random.Random(seed + 1)
        nb_multiply(ctx, ctx.random_element(rng), ctx.random_element(rng), counter=counter)
        checks.append((
            "5 convolutions and 2 component-wise products per multiply",
            counter.convolutions == 5 and counter.pointwise_products == 2,
            f"{counter.convolutions} convolutions, {counter.pointwise_products} pointwise",
        ))

    return NormalityReport(n=n, weight=weight, checks=checks)
