"""Normal bases from the Lucas torus x^2 - alpha*y^2 = 1 (alpha a nonsquare).

Point arithmetic, the multiplication-by-n isogeny, fiber computation over a
generator of the (q+1)-point group, and the torus normal-basis context.
The extension degree n can be any nontrivial divisor of q + 1.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .engine import NormalBasisContext, assemble_context
from .errors import (
    ConstantCheckFailed,
    ExhaustedSearch,
    NonSquare,
    NoDegreeNFactor,
    NTorsionMismatch,
    ParseError,
    PointOffCurve,
    SignCheckFailed,
)
from .extension import ExtField
from .fields import (
    Bivariate,
    FieldElement,
    FieldSpec,
    Polynomial,
    factorize,
    poly_is_irreducible,
    sqrt_in_field,
)


@dataclass(frozen=True)
class TorusPoint:
    """Affine point (x, y) with x^2 - alpha*y^2 = 1."""

    x: FieldElement
    y: FieldElement

    def raw(self) -> tuple:
        return (self.x.raw, self.y.raw)

    def text(self) -> str:
        return f"{self.x.text()}|{self.y.text()}"

    @staticmethod
    def from_text(spec: FieldSpec, s: str) -> "TorusPoint":
        parts = s.strip().split("|")
        if len(parts) != 2:
            raise ParseError(f"torus point text needs the form x|y, got {s!r}")
        return TorusPoint(FieldElement.from_text(spec, parts[0]),
                          FieldElement.from_text(spec, parts[1]))


@dataclass(frozen=True)
class LucasConstants:
    """The scalars of the function normalization: a*c + n*b = 1, a != 0."""

    c_frak: FieldElement
    a_frak: FieldElement
    b_frak: FieldElement


# -- raw point arithmetic over any ring with the FieldSpec raw API --------

def _t_identity(ring):
    return (ring.one, ring.zero)


def _t_add(ring, P, Q, alpha):
    x1, y1 = P
    x2, y2 = Q
    x = ring.radd(ring.rmul(x1, x2), ring.rmul(alpha, ring.rmul(y1, y2)))
    y = ring.radd(ring.rmul(x1, y2), ring.rmul(x2, y1))
    return (x, y)


def _t_neg(ring, P):
    return (P[0], ring.rneg(P[1]))


def _t_mul(ring, k: int, P, alpha):
    if k < 0:
        return _t_mul(ring, -k, _t_neg(ring, P), alpha)
    acc = _t_identity(ring)
    base = P
    while k:
        if k & 1:
            acc = _t_add(ring, acc, base, alpha)
        base = _t_add(ring, base, base, alpha)
        k >>= 1
    return acc


def _t_on_curve(ring, P, alpha) -> bool:
    x, y = P
    lhs = ring.rsub(ring.rmul(x, x), ring.rmul(alpha, ring.rmul(y, y)))
    return lhs == ring.one


def _t_order_is(ring, P, alpha, order: int, primes) -> bool:
    if _t_mul(ring, order, P, alpha) != _t_identity(ring):
        return False
    return all(_t_mul(ring, order // ell, P, alpha) != _t_identity(ring) for ell in primes)


# -- spec-level operations -------------------------------------------------

def torus_add(P: TorusPoint, Q: TorusPoint, alpha: FieldElement) -> TorusPoint:
    """Group law (xx' + a yy', xy' + x'y); identity (1,0)."""
    spec = alpha.spec
    if __debug__:
        for pt in (P, Q):
            if not _t_on_curve(spec, pt.raw(), alpha.raw):
                raise PointOffCurve(f"{pt.text()} is not on x^2 - {alpha.text()}*y^2 = 1")
    x, y = _t_add(spec, P.raw(), Q.raw(), alpha.raw)
    return TorusPoint(FieldElement(spec, x), FieldElement(spec, y))


def torus_neg(P: TorusPoint) -> TorusPoint:
    return TorusPoint(P.x, -P.y)


def torus_scalar_mul(k: int, P: TorusPoint, alpha: FieldElement) -> TorusPoint:
    """[k]P by double-and-add."""
    spec = alpha.spec
    x, y = _t_mul(spec, k, P.raw(), alpha.raw)
    return TorusPoint(FieldElement(spec, x), FieldElement(spec, y))


def isogeny_polynomials(n: int, alpha: FieldElement) -> tuple[Bivariate, Bivariate]:
    """(N_x, N_y) with (N_x(P), N_y(P)) = [n]P, from the binomial expansion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = alpha.spec
    nx: dict = {}
    ny: dict = {}
    apow = spec.one
    for k in range(0, n // 2 + 1):
        c = spec.raw_from_coeffs([math.comb(n, 2 * k)])
        if c != spec.zero:
            nx[(n - 2 * k, 2 * k)] = spec.rmul(c, apow)
        if 2 * k + 1 <= n:
            c = spec.raw_from_coeffs([math.comb(n, 2 * k + 1)])
            if c != spec.zero:
                ny[(n - 2 * k - 1, 2 * k + 1)] = spec.rmul(c, apow)
        apow = spec.rmul(apow, alpha.raw)
    return Bivariate(spec, nx), Bivariate(spec, ny)


def multiplication_polynomial(spec: FieldSpec, n: int) -> Polynomial:
    """R_n with x([n]P) = R_n(x(P)): N_x after substituting y^2 = (x^2-1)/alpha.

    Independent of alpha, since alpha^k * y^(2k) = (x^2 - 1)^k on the curve.
    """
    x2m1 = Polynomial(spec, [spec.rneg(spec.one), spec.zero, spec.one])
    acc = Polynomial(spec)
    pw = Polynomial(spec, (spec.one,))
    for k in range(0, n // 2 + 1):
        c = math.comb(n, 2 * k) % spec.p
        if c:
            term = Polynomial.x_power(spec, n - 2 * k).scale(spec.raw_from_coeffs([c]))
            acc = acc + term * pw
        pw = pw * x2m1
    return acc


@dataclass
class LucasParams:
    """Parameters of the torus construction.

    base:      F_q, q odd.
    alpha:     a nonsquare of K.
    n:         nontrivial divisor of q + 1 (the cofactor is m = (q+1)/n).
    generator: optional point of exact order q + 1; searched for if omitted.
    seed:      seed for the generator search.
    """

    base: FieldSpec
    alpha: FieldElement
    n: int
    generator: TorusPoint | None = None
    seed: int = 0

    @property
    def m(self) -> int:
        return (self.base.q + 1) // self.n

    def validate(self) -> None:
        base = self.base
        if base.q % 2 == 0:
            raise ValueError("the Lucas torus needs odd q (characteristic != 2)")
        if self.alpha.is_zero() or base.rpow(self.alpha.raw, (base.q - 1) // 2) == base.one:
            raise ValueError(f"alpha = {self.alpha.text()} is a square in K")
        if not (1 < self.n < base.q + 1) or (base.q + 1) % self.n != 0:
            raise ValueError(f"n = {self.n} is not a nontrivial divisor of q + 1 = {base.q + 1}")


def smallest_nonsquare(base: FieldSpec) -> FieldElement:
    for k in range(1, base.q):
        c = base.int_to_raw(k)
        if base.rpow(c, (base.q - 1) // 2) != base.one:
            return FieldElement(base, c)
    raise AssertionError("half of K* is nonsquare; unreachable")


def find_generator(params: LucasParams) -> TorusPoint:
    """A point of exact order q + 1.

    A caller-provided candidate is validated and returned; otherwise
    x-coordinates are sampled in seeded order and lifted via square roots.
    """
    params.validate()
    base, alpha = params.base, params.alpha
    primes = list(factorize(base.q + 1))
    if params.generator is not None:
        gen = params.generator
        if not _t_on_curve(base, gen.raw(), alpha.raw):
            raise PointOffCurve(f"{gen.text()} is not on the torus")
        if not _t_order_is(base, gen.raw(), alpha.raw, base.q + 1, primes):
            raise ValueError(f"{gen.text()} does not have exact order q + 1 = {base.q + 1}")
        return gen
    rng = random.Random(params.seed)
    xs = list(range(base.q))
    rng.shuffle(xs)
    alpha_el = FieldElement(base, alpha.raw)
    for xi in xs:
        x = FieldElement(base, base.int_to_raw(xi))
        try:
            y = sqrt_in_field((x * x - 1) / alpha_el)
        except NonSquare:
            continue
        P = TorusPoint(x, y)
        if _t_order_is(base, P.raw(), alpha.raw, base.q + 1, primes):
            return P
    raise ExhaustedSearch("no generator found; parameters are corrupted")


def fiber_field(params: LucasParams, a: TorusPoint) -> tuple[Polynomial, ExtField, tuple]:
    """Minimal polynomial of x(b) for b in the fiber of [n] above a, plus y(b).

    Returns (P_min, L, y_b) with L = K[theta]/(P_min), x(b) = theta, and the
    sign of y_b fixed by the isogeny check [n]b = a.
    """
    base, n = params.base, params.n
    p_min = (multiplication_polynomial(base, n) - Polynomial(base, (a.x.raw,))).monic()
    if p_min.degree() != n or not poly_is_irreducible(p_min):
        raise NoDegreeNFactor(
            f"x-fiber polynomial of {a.text()} is not irreducible of degree {n}; "
            "a does not generate the torus"
        )
    ext = ExtField(base, p_min)
    theta = ext.from_coeffs([base.zero, base.one])
    alpha_l = ext.from_base(params.alpha.raw)
    rhs = ext.rmul(ext.rsub(ext.rmul(theta, theta), ext.one), ext.rinv(alpha_l))
    try:
        y_b = ext.sqrt(rhs)
    except NonSquare as exc:
        raise SignCheckFailed("fiber x-coordinate has no on-curve lift") from exc
    target = (ext.from_base(a.x.raw), ext.from_base(a.y.raw))
    for cand in (y_b, ext.rneg(y_b)):
        if _t_mul(ext, n, (theta, cand), alpha_l) == target:
            return p_min, ext, cand
    raise SignCheckFailed("neither square root maps to a under the isogeny")


def _u_one_plus(ring, P, r_t):
    """u_{O,t}(P) = 1 + 1/(y - (y(t)/(x(t)-1))*(x - 1)), the 1+ convention."""
    x, y = P
    den = ring.rsub(y, ring.rmul(r_t, ring.rsub(x, ring.one)))
    return ring.radd(ring.one, ring.rinv(den))


def build_lucas_context(params: LucasParams) -> NormalBasisContext:
    """Build the torus context: theta_k = u_k(b), grid a + k*t, t = b^Phi - b."""
    params.validate()
    base, n = params.base, params.n
    alpha = params.alpha
    gen = find_generator(params)

    p_min, ext, y_b = fiber_field(params, gen)
    alpha_l = ext.from_base(alpha.raw)
    theta = ext.from_coeffs([base.zero, base.one])
    b = (theta, y_b)

    # t = Phi(b) - b must be K-rational of exact order n
    phi_b = (ext.frobenius(b[0]), ext.frobenius(b[1]))
    t_l = _t_add(ext, phi_b, _t_neg(ext, b), alpha_l)
    t_raws = []
    for coord in t_l:
        if any(c != base.zero for c in coord[1:]):
            raise NTorsionMismatch("Frobenius difference is not K-rational")
        t_raws.append(coord[0])
    t = (t_raws[0], t_raws[1])
    if not _t_order_is(base, t, alpha.raw, n, list(factorize(n))):
        raise NTorsionMismatch(f"t = {t} does not have exact order {n}")

    # x(t) = 1 would force t = O; safe to divide
    r_t = base.rmul(t[1], base.rinv(base.rsub(t[0], base.one)))

    # c = sum_k u_{kt,(k+1)t}, a constant: evaluate on the orbit of a and of
    # a second point ([2]a, or a+t when m = 2 exhausts the non-torsion points)
    def orbit_sum(P0):
        acc = base.zero
        P = P0
        minus_t = _t_neg(base, t)
        for _ in range(n):
            acc = base.radd(acc, _u_one_plus(base, P, r_t))
            P = _t_add(base, P, minus_t, alpha.raw)
        return acc

    a_pt = gen.raw()
    c_frak = orbit_sum(a_pt)
    second = _t_mul(base, 2, a_pt, alpha.raw) if params.m > 2 else _t_add(base, a_pt, t, alpha.raw)
    if orbit_sum(second) != c_frak:
        raise ConstantCheckFailed("sum of the u functions is not constant")

    if math.gcd(n, base.p) == 1:
        a_frak = base.one
        b_frak = base.rmul(base.rsub(base.one, c_frak),
                           base.rinv(base.raw_from_coeffs([n])))
    else:
        # unreachable for n | q+1 since p never divides q+1; kept per the rule
        if c_frak == base.zero:
            raise ConstantCheckFailed("c = 0 with p | n contradicts the constancy lemma")
        a_frak = base.rinv(c_frak)
        b_frak = base.zero

    def u_of(ring, P, a_f, b_f, rt):
        return ring.radd(ring.rmul(a_f, _u_one_plus(ring, P, rt)), b_f)

    # theta_k = u(b - k*t) in L
    theta_rows = []
    a_f_l, b_f_l, rt_l = ext.from_base(a_frak), ext.from_base(b_frak), ext.from_base(r_t)
    t_neg_l = _t_neg(ext, (ext.from_base(t[0]), ext.from_base(t[1])))
    P = b
    for _ in range(n):
        theta_rows.append(u_of(ext, P, a_f_l, b_f_l, rt_l))
        P = _t_add(ext, P, t_neg_l, alpha_l)

    def inv_v_squared(ring, P):
        # 1/v^2 = y^2/(x-1)^2; regular (value 0) at (-1, 0) where v has a pole
        x, y = P
        num = ring.rmul(y, y)
        den = ring.rsub(x, ring.one)
        return ring.rmul(num, ring.rinv(ring.rmul(den, den)))

    # xi_0 = 1/v(b)^2 with v = (x-1)/y
    xi0 = inv_v_squared(ext, b)

    # grid a + k*t: u values and 1/v^2 values over K
    u_raws = []
    w_raws = []
    P = a_pt
    for _ in range(n):
        u_raws.append(u_of(base, P, a_frak, b_frak, r_t))
        w_raws.append(inv_v_squared(base, P))
        P = _t_add(base, P, t, alpha.raw)

    four_inv = base.rinv(base.raw_from_coeffs([4]))
    scale = FieldElement(base, base.rmul(base.rmul(alpha.raw, alpha.raw), four_inv))

    ctx = assemble_context(
        "lucas", base, n,
        ext=ext, theta_rows=theta_rows, xi0_raw=xi0,
        u_raws=u_raws, w_raws=w_raws,
        scale=scale, differenced=True,
        frobenius_shift=1,
        params={
            "n": str(n), "alpha": alpha.text(),
            "gen": gen.text(), "seed": str(params.seed),
        },
    )
    ctx.lucas_constants = LucasConstants(
        FieldElement(base, c_frak), FieldElement(base, a_frak), FieldElement(base, b_frak)
    )
    ctx.torsion_point = TorusPoint(FieldElement(base, t[0]), FieldElement(base, t[1]))
    ctx.fiber_y = y_b
    return ctx
