"""Length-n cyclic vector algebra over a field K.

The four primitives of the multiplication pipeline: cyclic convolution,
convolution inverse, cyclic shift, and the component-wise product.  The
convolution has a schoolbook path and a fast path (mixed-radix NTT when K
contains an order-n root of unity, Karatsuba with reduction mod X^n - 1
otherwise); both are exact and must agree.
"""

from __future__ import annotations

from .errors import LengthMismatch, NotInvertible, SpecMismatch
from .fields import FieldElement, FieldSpec, Polynomial, factorize, poly_xgcd

NAIVE_CUTOFF = 32    # auto mode uses the schoolbook path below this length
_KARATSUBA_BASE = 16


class CyclicVector:
    """Fixed-length vector of field elements, indexed mod n."""

    __slots__ = ("spec", "entries")

    def __init__(self, spec: FieldSpec, entries):
        raws = []
        for e in entries:
            if isinstance(e, FieldElement):
                if e.spec != spec:
                    raise SpecMismatch("entry from a different field")
                raws.append(e.raw)
            elif isinstance(e, int):
                raws.append(spec.raw_from_coeffs([e]))
            else:
                raws.append(e)
        if not raws:
            raise ValueError("cyclic vectors have length >= 1")
        self.spec = spec
        self.entries = tuple(raws)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> FieldElement:
        return FieldElement(self.spec, self.entries[k % len(self.entries)])

    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.spec, r) for r in self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclicVector)
            and self.spec == other.spec
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.spec.p, self.entries))

    def __add__(self, other: "CyclicVector") -> "CyclicVector":
        _check_pair(self, other)
        add = self.spec.radd
        return CyclicVector(self.spec, [add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "CyclicVector") -> "CyclicVector":
        _check_pair(self, other)
        sub = self.spec.rsub
        return CyclicVector(self.spec, [sub(a, b) for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "CyclicVector":
        raw = c.raw if isinstance(c, FieldElement) else self.spec.raw_from_coeffs([c])
        mul = self.spec.rmul
        return CyclicVector(self.spec, [mul(raw, a) for a in self.entries])

    def text(self) -> str:
        return ";".join(FieldElement(self.spec, r).text() for r in self.entries)

    @staticmethod
    def from_text(spec: FieldSpec, s: str) -> "CyclicVector":
        return CyclicVector(spec, [FieldElement.from_text(spec, part) for part in s.strip().split(";")])

    def __repr__(self) -> str:
        return f"CyclicVector({self.text()})"


def identity_vector(spec: FieldSpec, n: int) -> CyclicVector:
    return CyclicVector(spec, [spec.one] + [spec.zero] * (n - 1))


def _check_pair(u: CyclicVector, v: CyclicVector) -> None:
    if u.spec != v.spec:
        raise SpecMismatch("vectors over different fields")
    if len(u) != len(v):
        raise LengthMismatch(f"lengths {len(u)} and {len(v)} differ")


def pointwise(u: CyclicVector, v: CyclicVector) -> CyclicVector:
    """(u <> v)_k = u_k v_k."""
    _check_pair(u, v)
    mul = u.spec.rmul
    return CyclicVector(u.spec, [mul(a, b) for a, b in zip(u.entries, v.entries)])


def shift(u: CyclicVector, k: int = 1) -> CyclicVector:
    """sigma(u)_k = u_{k-1}; k-fold cyclic shift."""
    n = len(u)
    k %= n
    return CyclicVector(u.spec, u.entries[-k:] + u.entries[:-k] if k else u.entries)


# -- convolution cores on raw lists --------------------------------------

def _convolve_naive_raw(spec: FieldSpec, a, b):
    n = len(a)
    zero, mul, add = spec.zero, spec.rmul, spec.radd
    out = [zero] * n
    for i, x in enumerate(a):
        if x == zero:
            continue
        for j, y in enumerate(b):
            if y != zero:
                k = i + j
                if k >= n:
                    k -= n
                out[k] = add(out[k], mul(x, y))
    return out


def _karatsuba_raw(spec: FieldSpec, a, b):
    """Full product coefficients (length len(a)+len(b)-1)."""
    zero, mul, add, sub = spec.zero, spec.rmul, spec.radd, spec.rsub
    if min(len(a), len(b)) <= _KARATSUBA_BASE:
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y != zero:
                    out[i + j] = add(out[i + j], mul(x, y))
        return out
    h = max(len(a), len(b)) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba_raw(spec, a0, b0)
    z2 = _karatsuba_raw(spec, a1, b1)
    sa = [add(a0[i] if i < len(a0) else zero, a1[i] if i < len(a1) else zero)
          for i in range(max(len(a0), len(a1)))]
    sb = [add(b0[i] if i < len(b0) else zero, b1[i] if i < len(b1) else zero)
          for i in range(max(len(b0), len(b1)))]
    z1 = _karatsuba_raw(spec, sa, sb)
    out = [zero] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = add(out[i], c)
    for i, c in enumerate(z1):
        t = sub(c, z0[i] if i < len(z0) else zero)
        t = sub(t, z2[i] if i < len(z2) else zero)
        out[i + h] = add(out[i + h], t)
    for i, c in enumerate(z2):
        out[i + 2 * h] = add(out[i + 2 * h], c)
    return out


def _dft_raw(spec: FieldSpec, a, root_pows):
    """Mixed-radix Cooley-Tukey DFT; root_pows[k] is omega^k, len n."""
    n = len(a)
    if n == 1:
        return list(a)
    r = 2
    while n % r:
        r += 1
    m = n // r
    subs = [_dft_raw(spec, a[s::r], root_pows[::r]) for s in range(r)]
    zero, mul, add = spec.zero, spec.rmul, spec.radd
    out = [zero] * n
    for k in range(n):
        k1 = k % m
        acc = zero
        for s in range(r):
            w = root_pows[(s * k) % n]
            acc = add(acc, mul(w, subs[s][k1]))
        out[k] = acc
    return out


def _convolve_ntt_raw(spec: FieldSpec, a, b, omega):
    n = len(a)
    pows = [spec.one]
    for _ in range(n - 1):
        pows.append(spec.rmul(pows[-1], omega))
    fa = _dft_raw(spec, a, pows)
    fb = _dft_raw(spec, b, pows)
    prod = [spec.rmul(x, y) for x, y in zip(fa, fb)]
    inv_pows = [pows[0]] + pows[:0:-1]
    c = _dft_raw(spec, prod, inv_pows)
    n_inv = spec.rinv(spec.raw_from_coeffs([n]))
    return [spec.rmul(n_inv, x) for x in c]


def _root_of_unity(spec: FieldSpec, n: int):
    """A raw element of exact multiplicative order n, or None."""
    if n < 2 or (spec.q - 1) % n != 0 or spec.raw_from_coeffs([n]) == spec.zero:
        return None
    g = _generator(spec)
    return spec.rpow(g, (spec.q - 1) // n)


_GEN_CACHE: dict[FieldSpec, object] = {}


def _generator(spec: FieldSpec):
    g = _GEN_CACHE.get(spec)
    if g is None:
        primes = list(factorize(spec.q - 1))
        for k in range(1, spec.q):
            c = spec.int_to_raw(k)
            if c != spec.zero and all(spec.rpow(c, (spec.q - 1) // ell) != spec.one for ell in primes):
                g = c
                break
        _GEN_CACHE[spec] = g
    return g


def convolve(u: CyclicVector, v: CyclicVector, mode: str = "auto") -> CyclicVector:
    """(u * v)_k = sum_i u_i v_{k-i mod n}.

    mode: "naive" | "fast" | "auto" (naive below length 32).
    """
    _check_pair(u, v)
    spec = u.spec
    n = len(u)
    if mode not in ("auto", "naive", "fast"):
        raise ValueError(f"unknown convolution mode {mode!r}")
    if mode == "naive" or (mode == "auto" and n < NAIVE_CUTOFF):
        return CyclicVector(spec, _convolve_naive_raw(spec, u.entries, v.entries))
    omega = _root_of_unity(spec, n)
    if omega is not None:
        return CyclicVector(spec, _convolve_ntt_raw(spec, list(u.entries), list(v.entries), omega))
    full = _karatsuba_raw(spec, list(u.entries), list(v.entries))
    out = full[:n] + [spec.zero] * (n - len(full[:n]))
    add = spec.radd
    for i in range(n, len(full)):
        out[i - n] = add(out[i - n], full[i])
    return CyclicVector(spec, out)


def convolve_inverse(u: CyclicVector) -> CyclicVector:
    """Inverse for the convolution product, via extended Euclid mod X^n - 1.

    Raises NotInvertible when gcd(sum u_i X^i, X^n - 1) != 1, i.e. the
    evaluation map the vector encodes is not bijective.
    """
    spec = u.spec
    n = len(u)
    f = Polynomial(spec, u.entries)
    modulus = Polynomial(spec, [spec.rneg(spec.one)] + [spec.zero] * (n - 1) + [spec.one])
    d, s, _ = poly_xgcd(f, modulus)
    if d.degree() != 0:
        raise NotInvertible("vector polynomial shares a factor with X^n - 1")
    inv = s.scale(spec.rinv(d.coeffs[0])) % modulus
    raws = list(inv.coeffs) + [spec.zero] * (n - len(inv.coeffs))
    return CyclicVector(spec, raws)
