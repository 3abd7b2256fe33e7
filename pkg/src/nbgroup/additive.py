"""Normal bases from the additive group: degree-p extensions L = K[Y]/(Y^p - Y - a).

The basis is Theta = (1/(theta - k))_k, the evaluation grid sits on the
coset of R under the F_p-rational subgroup, and the reduction vector comes
from expanding theta_0^2 back into Theta.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import NormalBasisContext, assemble_context
from .errors import EvaluationPointInPrimeField, TraceZero
from .extension import ExtField
from .fields import FieldElement, FieldSpec, Polynomial, poly_gcd

ONE_NOT_IN_IMAGE = "a is in the image of x -> x^p - x (trace zero)"


def absolute_trace(a: FieldElement) -> int:
    """Tr_{K/F_p}(a), returned as an integer in [0, p)."""
    spec = a.spec
    acc = spec.zero
    cur = a.raw
    for _ in range(spec.degree):
        acc = spec.radd(acc, cur)
        cur = spec.rpow(cur, spec.p)
    coeffs = (acc,) if spec.is_prime_field else acc
    assert all(c == 0 for c in coeffs[1:]), "trace left the prime field"
    return coeffs[0]


def default_isogeny_target(base: FieldSpec) -> FieldElement:
    """Smallest element with absolute trace 1 (so q-Frobenius = shift by 1)."""
    for a in base.elements():
        if absolute_trace(a) == 1:
            return a
    raise AssertionError("trace is surjective; unreachable")


@dataclass
class AdditiveParams:
    """Parameters of the Artin-Schreier construction.

    base: K = F_p[X]/(g) with degree d >= 2 (K = F_p has no valid R).
    a:    the isogeny target, with Tr_{K/F_p}(a) != 0.
    r:    evaluation point x(R), outside F_p.
    """

    base: FieldSpec
    a: FieldElement
    r: FieldElement

    def validate(self) -> None:
        if self.base.degree < 2:
            raise EvaluationPointInPrimeField(
                "K = F_p admits no evaluation point outside F_p; use an extension"
            )
        if absolute_trace(self.a) == 0:
            raise TraceZero(ONE_NOT_IN_IMAGE)
        r_coeffs = self.r.coeffs
        if all(c == 0 for c in r_coeffs[1:]):
            raise EvaluationPointInPrimeField(f"R = {self.r.text()} lies in F_p")


def artin_schreier_polynomial(params: AdditiveParams) -> Polynomial:
    """Y^p - Y - a over K."""
    base = params.base
    coeffs = [base.rneg(params.a.raw), base.rneg(base.one)]
    coeffs += [base.zero] * (base.p - 2)
    coeffs.append(base.one)
    return Polynomial(base, coeffs)


def build_additive_context(params: AdditiveParams) -> NormalBasisContext:
    """Build the degree-p context: theta_k = 1/(theta - k), grid R + k*t."""
    params.validate()
    base = params.base
    p = base.p
    modulus = artin_schreier_polynomial(params)

    if __debug__:
        # the gcd criterion is equivalent to the trace test, kept as a guard
        yq = Polynomial.x_power(base, 1).powmod(base.q, modulus)
        gcd = poly_gcd(modulus, yq - Polynomial.x_power(base, 1))
        assert gcd.degree() == 0, ONE_NOT_IN_IMAGE

    ext = ExtField(base, modulus)
    theta_rows = []
    for k in range(p):
        # theta - k as an L-raw, then invert
        lin = list(ext.zero)
        lin[0] = base.raw_from_coeffs([-k])
        lin[1] = base.one
        theta_rows.append(ext.rinv(tuple(lin)))
    xi0 = ext.rmul(theta_rows[0], theta_rows[0])

    x_r = params.r.raw
    u_raws = []
    for k in range(p):
        u_raws.append(base.rinv(base.radd(x_r, base.raw_from_coeffs([k]))))
    w_raws = [base.rmul(u, u) for u in u_raws]

    return assemble_context(
        "additive", base, p,
        ext=ext, theta_rows=theta_rows, xi0_raw=xi0,
        u_raws=u_raws, w_raws=w_raws,
        scale=base.element(1), differenced=False,
        frobenius_shift=absolute_trace(params.a) % p,
        params={"a": params.a.text(), "r": params.r.text()},
    )
