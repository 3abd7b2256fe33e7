"""The shared normal-basis multiplication kernel.

One formula covers all three constructions:

    d  = x <> y                     (differenced=False)
       = (x - sx) <> (y - sy)       (differenced=True, s = cyclic shift)
    out = s*(i * d) + u_inv * [ (u * x) <> (u * y) - s*(w * d) ]

with * cyclic convolution and <> the component-wise product: exactly five
convolutions and two component-wise products per call.
"""

from __future__ import annotations

from dataclasses import dataclass

from .convolution import (
    CyclicVector,
    convolve,
    convolve_inverse,
    identity_vector,
    pointwise,
    shift,
)
from .errors import SpecMismatch
from .extension import ExtField
from .fields import FieldElement, FieldSpec, invert_matrix, solve_linear


@dataclass
class OpCounter:
    """Diagnostic operation counter, per invocation."""

    convolutions: int = 0
    pointwise_products: int = 0


class NormalBasisContext:
    """One constructed normal basis with its precomputed pipeline vectors.

    kind            additive | multiplicative | lucas
    base            the field K the coordinates live in
    n               extension degree (= vector length)
    i_vec           reduction vector: coordinates of xi_0 in Theta
    u_vec           evaluations of u_0 on the grid R + k*t
    u_inv_vec       convolution inverse of u_vec
    w_vec           evaluations of the square-pole function on the grid
    scale           1, or alpha^2/4 for the Lucas torus
    differenced     whether d uses first differences of the inputs
    ext             L = K[Y]/(h) (oracle side)
    theta_rows      theta_k in the polynomial basis of L, one L-raw per k
    one_coords      Theta-coordinates of 1
    frobenius_shift shift amount equal to the |K|-power map on coordinates
    params          parameter echo for serialization
    """

    def __init__(self, kind: str, base: FieldSpec, n: int, *, i_vec: CyclicVector,
                 u_vec: CyclicVector, u_inv_vec: CyclicVector, w_vec: CyclicVector,
                 scale: FieldElement, differenced: bool, ext: ExtField,
                 theta_rows: tuple, one_coords: CyclicVector, frobenius_shift: int,
                 params: dict[str, str]):
        self.kind = kind
        self.base = base
        self.n = n
        self.i_vec = i_vec
        self.u_vec = u_vec
        self.u_inv_vec = u_inv_vec
        self.w_vec = w_vec
        self.scale = scale
        self.differenced = differenced
        self.ext = ext
        self.theta_rows = tuple(theta_rows)
        self.one_coords = one_coords
        self.frobenius_shift = frobenius_shift
        self.params = dict(params)
        # column k of the basis matrix is theta_k over the polynomial basis
        self._basis_matrix = [[theta_rows[k][i] for k in range(n)] for i in range(n)]
        self._basis_matrix_inv = None

    def basis_matrix_inv(self):
        if self._basis_matrix_inv is None:
            self._basis_matrix_inv = invert_matrix(self.base, self._basis_matrix)
        return self._basis_matrix_inv

    def element(self, coords) -> "NBElement":
        vec = coords if isinstance(coords, CyclicVector) else CyclicVector(self.base, coords)
        if len(vec) != self.n:
            raise SpecMismatch(f"expected {self.n} coordinates, got {len(vec)}")
        return NBElement(self, vec)

    def zero_element(self) -> "NBElement":
        return self.element([self.base.zero] * self.n)

    def one_element(self) -> "NBElement":
        return self.element(self.one_coords)

    def random_element(self, rng) -> "NBElement":
        return self.element([self.base.random_raw(rng) for _ in range(self.n)])

    def __repr__(self) -> str:
        return f"NormalBasisContext({self.kind}, n={self.n}, K={self.base.text()})"


class NBElement:
    """Coordinate vector over K in the basis Theta."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: NormalBasisContext, coords: CyclicVector):
        self.ctx = ctx
        self.coords = coords

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NBElement)
            and self.ctx is other.ctx
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def text(self) -> str:
        return self.coords.text()

    def __repr__(self) -> str:
        return f"NBElement({self.text()})"


def _check_ctx(ctx: NormalBasisContext, *els: NBElement) -> None:
    for el in els:
        if el.ctx is not ctx and el.coords.spec != ctx.base:
            raise SpecMismatch("element does not belong to this context")
        if len(el.coords) != ctx.n:
            raise SpecMismatch("element length does not match the context")


def nb_add(ctx: NormalBasisContext, x: NBElement, y: NBElement) -> NBElement:
    _check_ctx(ctx, x, y)
    return NBElement(ctx, x.coords + y.coords)


def nb_sub(ctx: NormalBasisContext, x: NBElement, y: NBElement) -> NBElement:
    _check_ctx(ctx, x, y)
    return NBElement(ctx, x.coords - y.coords)


def nb_frobenius(ctx: NormalBasisContext, x: NBElement, k: int) -> NBElement:
    """Conjugation by the k-th power of the torsion generator's Galois map.

    Coordinates shift by k places: result_j = x_{j+k}.  When k equals the
    context's frobenius_shift this is exponentiation by |K| in L.
    """
    _check_ctx(ctx, x)
    return NBElement(ctx, shift(x.coords, -k))


def nb_multiply(ctx: NormalBasisContext, x: NBElement, y: NBElement,
                counter: OpCounter | None = None, conv_mode: str = "auto") -> NBElement:
    """Product in Theta-coordinates: 5 convolutions, 2 pointwise products."""
    _check_ctx(ctx, x, y)
    if counter is None:
        counter = OpCounter()

    def conv(a: CyclicVector, b: CyclicVector) -> CyclicVector:
        counter.convolutions += 1
        return convolve(a, b, conv_mode)

    def pw(a: CyclicVector, b: CyclicVector) -> CyclicVector:
        counter.pointwise_products += 1
        return pointwise(a, b)

    xv, yv = x.coords, y.coords
    if ctx.differenced:
        d = pw(xv - shift(xv), yv - shift(yv))
    else:
        d = pw(xv, yv)
    s = ctx.scale
    trivial_scale = s.raw == ctx.base.one

    def scaled(v: CyclicVector) -> CyclicVector:
        return v if trivial_scale else v.scale(s)

    head = scaled(conv(ctx.i_vec, d))
    ex = conv(ctx.u_vec, xv)
    ey = conv(ctx.u_vec, yv)
    bracket = pw(ex, ey) - scaled(conv(ctx.w_vec, d))
    tail = conv(ctx.u_inv_vec, bracket)
    return NBElement(ctx, head + tail)


def assemble_context(kind: str, base: FieldSpec, n: int, *, ext: ExtField,
                     theta_rows: list, xi0_raw, u_raws: list, w_raws: list,
                     scale: FieldElement, differenced: bool, frobenius_shift: int,
                     params: dict[str, str]) -> NormalBasisContext:
    """Shared tail of the three build_* operations.

    Solves for the reduction vector and the coordinates of 1, inverts the
    evaluation vector, and checks the pipeline invariants.
    """
    matrix = [[theta_rows[k][i] for k in range(n)] for i in range(n)]
    i_raws = solve_linear(base, matrix, list(xi0_raw))
    one_raws = solve_linear(base, matrix, list(ext.one))
    u_vec = CyclicVector(base, u_raws)
    u_inv_vec = convolve_inverse(u_vec)
    w_vec = CyclicVector(base, w_raws)
    ctx = NormalBasisContext(
        kind, base, n,
        i_vec=CyclicVector(base, i_raws),
        u_vec=u_vec, u_inv_vec=u_inv_vec, w_vec=w_vec,
        scale=scale, differenced=differenced, ext=ext,
        theta_rows=tuple(theta_rows),
        one_coords=CyclicVector(base, one_raws),
        frobenius_shift=frobenius_shift, params=params,
    )
    assert convolve(u_vec, u_inv_vec) == identity_vector(base, n)
    if kind != "lucas":
        assert w_vec == pointwise(u_vec, u_vec)
    return ctx
