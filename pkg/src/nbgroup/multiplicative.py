"""Normal bases from the multiplicative group: Kummer extensions L = K[X]/(X^n - a).

K must contain a primitive mn-th root of unity (mn | q - 1); the basis is
Theta = (1/(zeta_n^{-k} theta - 1))_k and the evaluation grid is the coset
of the point with x(R) = zeta_mn under the n-torsion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import NormalBasisContext, assemble_context
from .errors import BadRootOfUnity, OrderTooSmall
from .extension import ExtField
from .fields import (
    FieldElement,
    FieldSpec,
    Polynomial,
    factorize,
    multiplicative_order,
    poly_is_irreducible,
)


def smallest_generator(base: FieldSpec) -> FieldElement:
    """The first element (in canonical order) generating K*."""
    primes = list(factorize(base.q - 1))
    for k in range(1, base.q):
        c = base.int_to_raw(k)
        if all(base.rpow(c, (base.q - 1) // ell) != base.one for ell in primes):
            return FieldElement(base, c)
    raise AssertionError("K* is cyclic; unreachable")


@dataclass
class KummerParams:
    """Parameters of the Kummer construction.

    base:    K = F_q with mn | q - 1.
    n:       extension degree >= 2.
    m:       cofactor >= 2; defaults to (q-1)/n when omitted.
    a:       nonzero, class of order n in K*/(K*)^n; defaults to a generator.
    zeta_mn: primitive mn-th root of unity; defaults to g^((q-1)/(mn)) for
             the default generator g, which makes |K|-power = shift by 1.
    """

    base: FieldSpec
    n: int
    m: int | None = None
    a: FieldElement | None = None
    zeta_mn: FieldElement | None = None

    def filled(self) -> "KummerParams":
        base, n = self.base, self.n
        if n < 2:
            raise ValueError("extension degree n must be >= 2")
        m = self.m if self.m is not None else (base.q - 1) // n
        g = None
        a = self.a
        if a is None:
            g = smallest_generator(base)
            a = g
        zeta = self.zeta_mn
        if zeta is None:
            if g is None:
                g = smallest_generator(base)
            zeta = g ** ((base.q - 1) // (m * n))
        return KummerParams(base, n, m, a, zeta)

    def validate(self) -> None:
        base, n, m = self.base, self.n, self.m
        if m < 2:
            raise ValueError("cofactor m must be >= 2")
        if (base.q - 1) % (m * n) != 0:
            raise ValueError(f"mn = {m * n} does not divide q - 1 = {base.q - 1}")
        if self.a.is_zero():
            raise OrderTooSmall("a must be nonzero")
        if multiplicative_order(self.zeta_mn, base.q - 1) != m * n:
            raise BadRootOfUnity(f"zeta does not have exact order {m * n}")
        for ell in factorize(n):
            if base.rpow(self.a.raw, (base.q - 1) // ell) == base.one:
                raise OrderTooSmall(
                    f"class of a in K*/(K*)^{n} has order dividing {n}//{ell}"
                )


def kummer_polynomial(params: KummerParams) -> Polynomial:
    """X^n - a over K."""
    base = params.base
    coeffs = [base.rneg(params.a.raw)] + [base.zero] * (params.n - 1) + [base.one]
    return Polynomial(base, coeffs)


def _frobenius_shift(params: KummerParams, zeta_n) -> int:
    """j with zeta_n^j = a^((q-1)/n): |K|-power acts as shift by j."""
    base = params.base
    target = base.rpow(params.a.raw, (base.q - 1) // params.n)
    cur = base.one
    for j in range(params.n):
        if cur == target:
            return j
        cur = base.rmul(cur, zeta_n)
    raise AssertionError("a^((q-1)/n) is a primitive n-th root; unreachable")


def build_kummer_context(params: KummerParams) -> NormalBasisContext:
    """Build the degree-n context: theta_k = 1/(zeta_n^{-k} theta - 1)."""
    params = params.filled()
    params.validate()
    base, n = params.base, params.n
    modulus = kummer_polynomial(params)

    if __debug__:
        assert poly_is_irreducible(modulus), "X^n - a reducible despite class-order check"

    ext = ExtField(base, modulus)
    zeta_n = base.rpow(params.zeta_mn.raw, params.m)
    zeta_n_inv = base.rinv(zeta_n)

    theta_rows = []
    zpow = base.one                       # zeta_n^{-k}
    minus_one = base.rneg(base.one)
    for _ in range(n):
        lin = list(ext.zero)
        lin[0] = minus_one
        lin[1] = zpow
        theta_rows.append(ext.rinv(tuple(lin)))
        zpow = base.rmul(zpow, zeta_n_inv)
    xi0 = ext.rmul(theta_rows[0], theta_rows[0])

    u_raws = []
    grid = params.zeta_mn.raw             # x(R + k*t) = zeta_mn * zeta_n^k
    for _ in range(n):
        u_raws.append(base.rinv(base.rsub(grid, base.one)))
        grid = base.rmul(grid, zeta_n)
    w_raws = [base.rmul(u, u) for u in u_raws]

    return assemble_context(
        "multiplicative", base, n,
        ext=ext, theta_rows=theta_rows, xi0_raw=xi0,
        u_raws=u_raws, w_raws=w_raws,
        scale=base.element(1), differenced=False,
        frobenius_shift=_frobenius_shift(params, zeta_n),
        params={
            "n": str(n), "m": str(params.m),
            "a": params.a.text(), "zeta": params.zeta_mn.text(),
        },
    )
