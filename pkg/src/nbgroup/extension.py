"""Quotient-ring extensions L = K[Y]/(h) on top of a FieldSpec K.

This is the representation of the extension field the normal bases live in:
raw L-values are little-endian tuples of K-raw values of length deg(h).
The method names mirror FieldSpec's raw API (radd, rmul, ...) so generic
code (e.g. torus arithmetic) can run over either a FieldSpec or an ExtField.
"""

from __future__ import annotations

from .errors import DivisionByZero, NonSquare
from .fields import FieldSpec, Polynomial, poly_xgcd, tonelli


class ExtField:
    """L = K[Y]/(h) for monic h of degree n >= 1 over the FieldSpec K."""

    def __init__(self, base: FieldSpec, modulus: Polynomial):
        if modulus.spec != base:
            raise ValueError("modulus is not over the stated base field")
        if modulus.degree() < 1 or modulus.leading() != base.one:
            raise ValueError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.n = modulus.degree()
        self.order = base.q ** self.n
        self.zero = (base.zero,) * self.n
        self.one = self.from_base(base.one)
        n = self.n
        # X^(n+i) mod h for i in [0, n-2]
        rows = []
        cur = [base.rneg(c) for c in modulus.coeffs[:-1]]
        rows.append(tuple(cur))
        for _ in range(n - 2):
            top = cur[-1]
            cur = [base.zero] + cur[:-1]
            for j in range(n):
                cur[j] = base.radd(cur[j], base.rmul(top, rows[0][j]))
            rows.append(tuple(cur))
        self._red_rows = tuple(rows)

    def from_base(self, k_raw):
        return (k_raw,) + (self.base.zero,) * (self.n - 1)

    def from_coeffs(self, coeffs) -> tuple:
        """Pad/truncate-check a list of K-raws (or FieldElements) to an L-raw."""
        raws = []
        for c in coeffs:
            raws.append(c.raw if hasattr(c, "raw") else c)
        if len(raws) > self.n:
            raise ValueError("too many coefficients for this extension")
        raws += [self.base.zero] * (self.n - len(raws))
        return tuple(raws)

    def radd(self, a, b):
        add = self.base.radd
        return tuple(add(x, y) for x, y in zip(a, b))

    def rsub(self, a, b):
        sub = self.base.rsub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def rneg(self, a):
        neg = self.base.rneg
        return tuple(neg(x) for x in a)

    def rmul(self, a, b):
        K, n = self.base, self.n
        zero, mul, add = K.zero, K.rmul, K.radd
        prod = [zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y != zero:
                    prod[i + j] = add(prod[i + j], mul(x, y))
        out = prod[:n]
        for e in range(n, 2 * n - 1):
            c = prod[e]
            if c != zero:
                row = self._red_rows[e - n]
                for j in range(n):
                    out[j] = add(out[j], mul(c, row[j]))
        return tuple(out)

    def rinv(self, a):
        if a == self.zero:
            raise DivisionByZero("inverse of zero in extension")
        f = Polynomial(self.base, a)
        d, s, _ = poly_xgcd(f, self.modulus)
        if d.degree() != 0:
            # impossible when the modulus is irreducible
            raise DivisionByZero("element is a zero divisor (reducible modulus)")
        inv = s % self.modulus
        return self.from_coeffs(list(inv.coeffs))

    def rpow(self, a, e: int):
        if e < 0:
            return self.rpow(self.rinv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.rmul(result, base)
            base = self.rmul(base, base)
            e >>= 1
        return result

    def frobenius(self, a):
        """The |K|-power map, the canonical generator of Gal(L/K)."""
        return self.rpow(a, self.base.q)

    def int_to_raw(self, k: int):
        digits = []
        q = self.base.q
        for _ in range(self.n):
            digits.append(self.base.int_to_raw(k % q))
            k //= q
        return tuple(digits)

    def raw_key(self, a) -> tuple[int, ...]:
        """Canonical integer tuple, for lexicographic tie-breaking."""
        return tuple(self.base.raw_to_int(c) for c in a)

    def sqrt(self, a):
        """Square root in L (odd order), lexicographically smaller root."""
        if self.order % 2 == 0:
            raise ValueError("square roots need odd field order")
        if a == self.zero:
            return a
        if self.rpow(a, (self.order - 1) // 2) != self.one:
            raise NonSquare("element is not a square in the extension")
        cands = (self.int_to_raw(k) for k in range(1, min(self.order, 1 << 20)))
        r = tonelli(self.rmul, self.rpow, self.one, cands, a, self.order - 1)
        other = self.rneg(r)
        return r if self.raw_key(r) <= self.raw_key(other) else other

    def random_raw(self, rng):
        return tuple(self.base.random_raw(rng) for _ in range(self.n))

    def text_of(self, a) -> str:
        from .fields import FieldElement

        return ";".join(FieldElement(self.base, c).text() for c in a)

    def __repr__(self) -> str:
        return f"ExtField(deg {self.n} over {self.base.text()})"
