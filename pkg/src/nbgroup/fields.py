"""Exact arithmetic in prime fields F_p, extensions K = F_p[X]/(g), and K[X].

Raw element values are plain ints for prime fields and little-endian tuples
of ints for extensions; FieldElement is the user-facing wrapper.  Extension
fields with at most 2^16 elements get exp/log tables so multiplication and
inversion are table lookups.

Polynomials are little-endian coefficient tuples of raw values with no
trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

import random
from typing import Iterator

from .errors import (
    DegenerateInput,
    DivisionByZero,
    NonSquare,
    ParseError,
    SingularMatrix,
    SpecMismatch,
    ZeroElement,
)

_WORD_GUARD = 1 << 63
_TABLE_MAX = 1 << 16


def is_prime(n: int) -> bool:
    """Trial-division primality test (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Factor n by trial division, as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FieldSpec:
    """A finite field F_p[X]/(g): characteristic plus monic defining polynomial.

    g is a little-endian int coefficient sequence; an empty sequence means
    K = F_p.  The defining polynomial must be monic and irreducible over F_p.
    """

    def __init__(self, p: int, defining_poly: tuple[int, ...] | list[int] = ()):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if p * p >= _WORD_GUARD:
            raise ValueError(f"characteristic {p} exceeds the p^2 < 2^63 guard")
        g = tuple(c % p for c in defining_poly)
        while g and g[-1] == 0:
            g = g[:-1]
        if len(g) == 1:
            raise ValueError("defining polynomial must have degree >= 1 or be empty")
        self.p = p
        self.defining_poly = g
        self.degree = len(g) - 1 if g else 1
        self.q = p ** self.degree
        self.is_prime_field = not g
        if g:
            if g[-1] != 1:
                raise ValueError("defining polynomial must be monic")
            base = FieldSpec(p)
            if not poly_is_irreducible(Polynomial(base, g)):
                raise ValueError("defining polynomial is reducible over F_p")
            d = self.degree
            # X^(d+i) mod g for i in [0, d-2], used by the generic multiply
            rows = []
            cur = [(-c) % p for c in g[:-1]]
            rows.append(tuple(cur))
            for _ in range(d - 2):
                top = cur[-1]
                cur = [0] + cur[:-1]
                for j in range(d):
                    cur[j] = (cur[j] + top * rows[0][j]) % p
                rows.append(tuple(cur))
            self._red_rows = tuple(rows)
        self._init_ops()
        self._exp: list | None = None
        self._log: dict | None = None
        if not self.is_prime_field and self.q <= _TABLE_MAX:
            self._build_tables()

    # -- raw ops: ints for prime fields, coefficient tuples otherwise --

    def _init_ops(self) -> None:
        p = self.p
        if self.is_prime_field:
            self.zero = 0
            self.one = 1
            self.radd = lambda a, b: (a + b) % p
            self.rsub = lambda a, b: (a - b) % p
            self.rneg = lambda a: (-a) % p
            self.rmul = lambda a, b: (a * b) % p
        else:
            d = self.degree
            self.zero = (0,) * d
            self.one = (1,) + (0,) * (d - 1)
            self.radd = lambda a, b: tuple((x + y) % p for x, y in zip(a, b))
            self.rsub = lambda a, b: tuple((x - y) % p for x, y in zip(a, b))
            self.rneg = lambda a: tuple((-x) % p for x in a)
            self.rmul = self._mul_generic

    def _mul_generic(self, a, b):
        p, d = self.p, self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = [c % p for c in prod[:d]]
        red = self._red_rows
        for e in range(d, 2 * d - 1):
            c = prod[e] % p
            if c:
                row = red[e - d]
                for j in range(d):
                    out[j] = (out[j] + c * row[j]) % p
        return tuple(out)

    def _build_tables(self) -> None:
        g = self._find_generator_raw()
        exp = [self.one]
        cur = self.one
        for _ in range(self.q - 2):
            cur = self._mul_generic(cur, g)
            exp.append(cur)
        self._exp = exp
        self._log = {v: i for i, v in enumerate(exp)}
        log, q1 = self._log, self.q - 1
        zero = self.zero

        def rmul(a, b):
            if a == zero or b == zero:
                return zero
            return exp[(log[a] + log[b]) % q1]

        self.rmul = rmul

    def _find_generator_raw(self):
        primes = list(factorize(self.q - 1))
        for k in range(1, self.q):
            c = self.int_to_raw(k)
            if all(self._pow_generic(c, (self.q - 1) // ell) != self.one for ell in primes):
                return c
        raise AssertionError("no multiplicative generator found")

    def _pow_generic(self, a, e: int):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self._mul_generic(result, base) if not self.is_prime_field else (result * base) % self.p
            base = self._mul_generic(base, base) if not self.is_prime_field else (base * base) % self.p
            e >>= 1
        return result

    def rinv(self, a):
        if a == self.zero:
            raise DivisionByZero("inverse of zero")
        if self.is_prime_field:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._pow_generic(a, self.q - 2)

    def rpow(self, a, e: int):
        if e < 0:
            return self.rpow(self.rinv(a), -e)
        if self.is_prime_field:
            return pow(a, e, self.p)
        if a == self.zero:
            return self.zero if e else self.one
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._pow_generic(a, e)

    def int_to_raw(self, k: int):
        """Canonical enumeration of field elements by integers 0 <= k < q."""
        k %= self.q
        if self.is_prime_field:
            return k
        digits = []
        for _ in range(self.degree):
            digits.append(k % self.p)
            k //= self.p
        return tuple(digits)

    def raw_to_int(self, a) -> int:
        if self.is_prime_field:
            return a
        k = 0
        for c in reversed(a):
            k = k * self.p + c
        return k

    def raw_from_coeffs(self, coeffs) -> int | tuple[int, ...]:
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.degree:
            raise ParseError(f"element has {len(coeffs)} coefficients, field degree is {self.degree}")
        coeffs += [0] * (self.degree - len(coeffs))
        return coeffs[0] if self.is_prime_field else tuple(coeffs)

    def random_raw(self, rng: random.Random):
        return self.int_to_raw(rng.randrange(self.q))

    def element(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise SpecMismatch("element belongs to a different field")
            return x
        if isinstance(x, int):
            return FieldElement(self, x % self.p if self.is_prime_field else self.raw_from_coeffs([x]))
        return FieldElement(self, self.raw_from_coeffs(list(x)))

    def elements(self) -> Iterator["FieldElement"]:
        for k in range(self.q):
            yield FieldElement(self, self.int_to_raw(k))

    # -- text form: "p=5" or "p=5;g=2,3,0,1" --

    def text(self) -> str:
        if self.is_prime_field:
            return f"p={self.p}"
        return f"p={self.p};g=" + ",".join(str(c) for c in self.defining_poly)

    @staticmethod
    def from_text(s: str) -> "FieldSpec":
        try:
            parts = dict(kv.split("=", 1) for kv in s.strip().split(";"))
            p = int(parts["p"])
            g = tuple(int(c) for c in parts["g"].split(",")) if "g" in parts else ()
            return FieldSpec(p, g)
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad field spec text {s!r}: {exc}") from exc

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self.p == other.p and self.defining_poly == other.defining_poly

    def __hash__(self) -> int:
        return hash((self.p, self.defining_poly))

    def __repr__(self) -> str:
        return f"FieldSpec({self.text()})"


class FieldElement:
    """An element of a FieldSpec, stored as a raw value."""

    __slots__ = ("spec", "raw")

    def __init__(self, spec: FieldSpec, raw):
        self.spec = spec
        self.raw = raw

    @property
    def coeffs(self) -> tuple[int, ...]:
        return (self.raw,) if self.spec.is_prime_field else self.raw

    def is_zero(self) -> bool:
        return self.raw == self.spec.zero

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatch("elements from different fields")
            return other
        if isinstance(other, int):
            return self.spec.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.spec, self.spec.radd(self.raw, other.raw))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.spec, self.spec.rsub(self.raw, other.raw))

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.spec, self.spec.rmul(self.raw, other.raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return FieldElement(self.spec, self.spec.rmul(self.raw, self.spec.rinv(other.raw)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.rneg(self.raw))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.rpow(self.raw, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.rinv(self.raw))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.spec.element(other)
        return isinstance(other, FieldElement) and self.spec == other.spec and self.raw == other.raw

    def __hash__(self) -> int:
        return hash((self.spec.p, self.raw))

    def text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @staticmethod
    def from_text(spec: FieldSpec, s: str) -> "FieldElement":
        try:
            coeffs = [int(c) for c in s.strip().split(",")]
        except ValueError as exc:
            raise ParseError(f"bad element text {s!r}") from exc
        return FieldElement(spec, spec.raw_from_coeffs(coeffs))

    def __repr__(self) -> str:
        return f"FieldElement({self.text()} over {self.spec.text()})"


def field_arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch arithmetic by name: add | sub | mul | inv | pow."""
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if not isinstance(b, FieldElement):
        b = a.spec.element(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Univariate polynomials over a FieldSpec
# ---------------------------------------------------------------------------

class Polynomial:
    """Little-endian polynomial over a FieldSpec; coefficients are raw values."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs=()):
        norm = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.spec != spec:
                    raise SpecMismatch("coefficient from a different field")
                norm.append(c.raw)
            elif isinstance(c, int):
                norm.append(spec.raw_from_coeffs([c]))
            else:
                norm.append(c)
        while norm and norm[-1] == spec.zero:
            norm.pop()
        self.spec = spec
        self.coeffs = tuple(norm)

    @staticmethod
    def x_power(spec: FieldSpec, e: int) -> "Polynomial":
        return Polynomial(spec, (spec.zero,) * e + (spec.one,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def _check(self, other: "Polynomial") -> None:
        if self.spec != other.spec:
            raise SpecMismatch("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        s = self.spec
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (s.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (s.zero,) * (n - len(other.coeffs))
        return Polynomial(s, tuple(s.radd(x, y) for x, y in zip(a, b)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        s = self.spec
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (s.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (s.zero,) * (n - len(other.coeffs))
        return Polynomial(s, tuple(s.rsub(x, y) for x, y in zip(a, b)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.spec, tuple(self.spec.rneg(c) for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        s = self.spec
        if self.is_zero() or other.is_zero():
            return Polynomial(s)
        out = [s.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        mul, add = s.rmul, s.radd
        for i, x in enumerate(self.coeffs):
            if x == s.zero:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = add(out[i + j], mul(x, y))
        return Polynomial(s, out)

    def scale(self, c) -> "Polynomial":
        s = self.spec
        return Polynomial(s, tuple(s.rmul(c, x) for x in self.coeffs))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._check(other)
        s = self.spec
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree()
        if self.degree() < db:
            return Polynomial(s), self
        inv_lead = s.rinv(other.leading())
        quot = [s.zero] * (len(rem) - db)
        mul, sub = s.rmul, s.rsub
        for i in range(len(rem) - db - 1, -1, -1):
            c = mul(rem[i + db], inv_lead)
            if c == s.zero:
                continue
            quot[i] = c
            for j, y in enumerate(other.coeffs):
                rem[i + j] = sub(rem[i + j], mul(c, y))
        return Polynomial(s, quot), Polynomial(s, rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division was not exact")
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.spec.rinv(self.leading()))

    def mulmod(self, other: "Polynomial", modulus: "Polynomial") -> "Polynomial":
        return (self * other) % modulus

    def powmod(self, e: int, modulus: "Polynomial") -> "Polynomial":
        s = self.spec
        result = Polynomial(s, (s.one,))
        base = self % modulus
        while e:
            if e & 1:
                result = result.mulmod(base, modulus)
            base = base.mulmod(base, modulus)
            e >>= 1
        return result

    def derivative(self) -> "Polynomial":
        s = self.spec
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(s.rmul(s.raw_from_coeffs([i]), self.coeffs[i]))
        return Polynomial(s, out)

    def eval_raw(self, x):
        s = self.spec
        acc = s.zero
        for c in reversed(self.coeffs):
            acc = s.radd(s.rmul(acc, x), c)
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.spec.p, self.coeffs))

    def sort_key(self):
        return (self.degree(), tuple(self.spec.raw_to_int(c) for c in self.coeffs))

    def element_coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.spec, c) for c in self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c != self.spec.zero:
                cs = FieldElement(self.spec, c).text()
                terms.append(f"({cs})*X^{i}" if i else f"({cs})")
        return "Polynomial(" + " + ".join(terms) + ")"


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    if f.spec != g.spec:
        raise SpecMismatch("polynomials over different fields")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Extended Euclid: returns (d, s, t) with s*f + t*g = d, d monic (or 0)."""
    s = f.spec
    r0, r1 = f, g
    s0, s1 = Polynomial(s, (s.one,)), Polynomial(s)
    t0, t1 = Polynomial(s), Polynomial(s, (s.one,))
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = s.rinv(r0.leading())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_is_irreducible(f: Polynomial) -> bool:
    """Distinct-degree sieve: gcd(f, X^{q^i} - X) for i <= deg(f)/2."""
    if f.degree() < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    f = f.monic()
    if f.degree() == 1:
        return True
    spec = f.spec
    x = Polynomial.x_power(spec, 1)
    h = x
    for _ in range(f.degree() // 2):
        h = h.powmod(spec.q, f)
        if poly_gcd(f, h - x).degree() > 0:
            return False
    return True


def _pth_root_poly(f: Polynomial) -> Polynomial:
    """For f with f' = 0: the g with g^p = f (coefficients get p^(e-1)-th powers)."""
    spec = f.spec
    p = spec.p
    e = spec.degree
    root_exp = p ** (e - 1)
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(spec.rpow(f.coeffs[i], root_exp))
    return Polynomial(spec, out)


def _equal_degree_split(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus split of a product of distinct degree-d irreducibles."""
    spec = f.spec
    if f.degree() == d:
        return [f]
    one = Polynomial(spec, (spec.one,))
    while True:
        r = Polynomial(spec, [spec.random_raw(rng) for _ in range(f.degree())])
        if r.degree() < 1:
            continue
        if spec.p == 2:
            # trace map sum r^(2^i), i < d*log2(q), splits in characteristic 2
            k = d * (spec.q.bit_length() - 1)
            t = r
            acc = r
            for _ in range(k - 1):
                t = t.mulmod(t, f)
                acc = (acc + t) % f
            g = poly_gcd(f, acc)
        else:
            h = r.powmod((spec.q ** d - 1) // 2, f)
            g = poly_gcd(f, h - one)
        if 0 < g.degree() < f.degree():
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f.exact_div(g), d, rng)


def poly_factor(f: Polynomial, seed: int = 0) -> list[tuple[Polynomial, int]]:
    """Complete factorization into monic irreducibles with multiplicities.

    Distinct-degree splitting followed by seeded equal-degree splitting; the
    result is sorted by (degree, coefficient order) so runs are reproducible.
    """
    if f.degree() < 1:
        raise ValueError("factorization is defined for degree >= 1")
    rng = random.Random(seed)
    found: dict[Polynomial, int] = {}

    def accumulate(g: Polynomial, mult: int) -> None:
        if g.degree() == 1:
            found[g] = found.get(g, 0) + mult
            return
        dg = g.derivative()
        if dg.is_zero():
            accumulate(_pth_root_poly(g), mult * g.spec.p)
            return
        r = poly_gcd(g, dg)
        if r.degree() >= 1:
            accumulate(r, mult)
            accumulate(g.exact_div(r), mult)
            return
        # g squarefree: distinct-degree then equal-degree splitting
        spec = g.spec
        x = Polynomial.x_power(spec, 1)
        h = x
        d = 0
        rem = g
        while rem.degree() > 0:
            d += 1
            if 2 * d > rem.degree():
                found[rem] = found.get(rem, 0) + mult
                break
            h = h.powmod(spec.q, rem)
            part = poly_gcd(rem, h - x)
            if part.degree() > 0:
                for piece in _equal_degree_split(part, d, rng):
                    found[piece] = found.get(piece, 0) + mult
                rem = rem.exact_div(part)
                h = h % rem

    accumulate(f.monic(), 1)
    return sorted(found.items(), key=lambda kv: kv[0].sort_key())


def lex_smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Coefficients of the first monic irreducible of degree d over F_p."""
    base = FieldSpec(p)
    for k in range(p ** d):
        coeffs = []
        kk = k
        for _ in range(d):
            coeffs.append(kk % p)
            kk //= p
        coeffs.append(1)
        if poly_is_irreducible(Polynomial(base, coeffs)):
            return tuple(coeffs)
    raise AssertionError("irreducibles of every degree exist; unreachable")


def spec_of_order(q: int, defining_poly: tuple[int, ...] | None = None) -> FieldSpec:
    """FieldSpec with q elements; picks the lex-smallest modulus by default."""
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = fac.items()
    if e == 1:
        return FieldSpec(p)
    if defining_poly is None:
        defining_poly = lex_smallest_irreducible(p, e)
    return FieldSpec(p, defining_poly)


# ---------------------------------------------------------------------------
# Square roots and multiplicative orders
# ---------------------------------------------------------------------------

def tonelli(mul, powf, one, nonresidues, a, order: int):
    """Generic Tonelli-Shanks in a cyclic group of even order.

    mul/powf operate on raw values; nonresidues yields candidates to test
    for non-squareness.  Returns some r with r*r = a (a must be a square).
    """
    m = order
    s = 0
    while m % 2 == 0:
        m //= 2
        s += 1
    if s == 1:
        return powf(a, (m + 1) // 2)
    z = None
    for cand in nonresidues:
        if powf(cand, order // 2) != one:
            z = cand
            break
    c = powf(z, m)
    t = powf(a, m)
    r = powf(a, (m + 1) // 2)
    k = s
    while t != one:
        t2 = mul(t, t)
        i = 1
        while t2 != one:
            t2 = mul(t2, t2)
            i += 1
        b = powf(c, 1 << (k - i - 1))
        k = i
        c = mul(b, b)
        t = mul(t, c)
        r = mul(r, b)
    return r


def sqrt_in_field(a: FieldElement) -> FieldElement:
    """Square root in a field of odd cardinality.

    Of the two roots the one whose coefficient sequence is lexicographically
    smaller is returned; raises NonSquare for non-residues.
    """
    spec = a.spec
    if spec.q % 2 == 0:
        raise ValueError("square roots need a field of odd cardinality")
    if a.is_zero():
        return a
    if spec.rpow(a.raw, (spec.q - 1) // 2) != spec.one:
        raise NonSquare(f"{a.text()} is not a square in {spec.text()}")
    cands = (spec.int_to_raw(k) for k in range(1, spec.q))
    r = tonelli(spec.rmul, spec.rpow, spec.one, cands, a.raw, spec.q - 1)
    other = spec.rneg(r)
    e1, e2 = FieldElement(spec, r), FieldElement(spec, other)
    return e1 if e1.coeffs <= e2.coeffs else e2


def multiplicative_order(a: FieldElement, group_order: int) -> int:
    """Exact multiplicative order of a, given the order of the ambient group."""
    if a.is_zero():
        raise ZeroElement("zero has no multiplicative order")
    spec = a.spec
    if spec.rpow(a.raw, group_order) != spec.one:
        raise ValueError("group_order is not a multiple of the element order")
    order = group_order
    for ell in factorize(group_order):
        while order % ell == 0 and spec.rpow(a.raw, order // ell) == spec.one:
            order //= ell
    return order


# ---------------------------------------------------------------------------
# Linear algebra over a FieldSpec (raw values)
# ---------------------------------------------------------------------------

def solve_linear(spec: FieldSpec, matrix: list[list], rhs: list) -> list:
    """Solve M x = b by Gaussian elimination; raises SingularMatrix."""
    n = len(matrix)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    mul, sub, rinv = spec.rmul, spec.rsub, spec.rinv
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != spec.zero), None)
        if pivot is None:
            raise SingularMatrix("singular system")
        m[col], m[pivot] = m[pivot], m[col]
        inv = rinv(m[col][col])
        m[col] = [mul(inv, v) for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != spec.zero:
                c = m[r][col]
                m[r] = [sub(v, mul(c, w)) for v, w in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def invert_matrix(spec: FieldSpec, matrix: list[list]) -> list[list]:
    """Inverse of an n x n matrix of raw values."""
    n = len(matrix)
    m = [row[:] + [spec.one if i == j else spec.zero for j in range(n)] for i, row in enumerate(matrix)]
    mul, sub, rinv = spec.rmul, spec.rsub, spec.rinv
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != spec.zero), None)
        if pivot is None:
            raise SingularMatrix("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = rinv(m[col][col])
        m[col] = [mul(inv, v) for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != spec.zero:
                c = m[r][col]
                m[r] = [sub(v, mul(c, w)) for v, w in zip(m[r], m[col])]
    return [row[n:] for row in m]


def mat_vec(spec: FieldSpec, matrix: list[list], vec: list) -> list:
    mul, add = spec.rmul, spec.radd
    out = []
    for row in matrix:
        acc = spec.zero
        for a, b in zip(row, vec):
            if a != spec.zero and b != spec.zero:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Bivariate polynomials and resultants
# ---------------------------------------------------------------------------

class Bivariate:
    """Bivariate polynomial over a FieldSpec: {(deg_x, deg_y): raw coefficient}."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms: dict | None = None):
        self.spec = spec
        self.terms = {k: v for k, v in (terms or {}).items() if v != spec.zero}

    @staticmethod
    def from_int_terms(spec: FieldSpec, terms: dict[tuple[int, int], int]) -> "Bivariate":
        return Bivariate(spec, {k: spec.raw_from_coeffs([v]) for k, v in terms.items()})

    def degree_in(self, var: str) -> int:
        idx = 0 if var == "x" else 1
        return max((k[idx] for k in self.terms), default=-1)

    def __add__(self, other: "Bivariate") -> "Bivariate":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = self.spec.radd(out.get(k, self.spec.zero), v)
        return Bivariate(self.spec, out)

    def __sub__(self, other: "Bivariate") -> "Bivariate":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = self.spec.rsub(out.get(k, self.spec.zero), v)
        return Bivariate(self.spec, out)

    def __mul__(self, other: "Bivariate") -> "Bivariate":
        s = self.spec
        out: dict = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = s.radd(out.get(k, s.zero), s.rmul(v1, v2))
        return Bivariate(s, out)

    def shift_const(self, c) -> "Bivariate":
        """Subtract the constant c."""
        out = dict(self.terms)
        out[(0, 0)] = self.spec.rsub(out.get((0, 0), self.spec.zero), c)
        return Bivariate(self.spec, out)

    def eval_raw(self, x, y):
        s = self.spec
        acc = s.zero
        for (i, j), v in self.terms.items():
            acc = s.radd(acc, s.rmul(v, s.rmul(s.rpow(x, i), s.rpow(y, j))))
        return acc

    def coeffs_in(self, var: str) -> list[Polynomial]:
        """Coefficients w.r.t. var, each a Polynomial in the other variable."""
        s = self.spec
        vi, oi = (0, 1) if var == "x" else (1, 0)
        dv = self.degree_in(var)
        rows: list[dict[int, object]] = [dict() for _ in range(dv + 1)]
        for k, v in self.terms.items():
            rows[k[vi]][k[oi]] = v
        out = []
        for row in rows:
            n = max(row, default=-1) + 1
            out.append(Polynomial(s, [row.get(i, s.zero) for i in range(n)]))
        return out


def _poly_matrix_det(spec: FieldSpec, m: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free (Bareiss) determinant over K[x]."""
    n = len(m)
    if n == 0:
        return Polynomial(spec, (spec.one,))
    sign = 1
    prev = Polynomial(spec, (spec.one,))
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if swap is None:
                return Polynomial(spec)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = Polynomial(spec)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant_eliminate(f: Bivariate, g: Bivariate, var: str = "y") -> Polynomial:
    """Resultant of f and g with respect to var (Sylvester determinant).

    Returns a univariate Polynomial in the remaining variable.
    """
    if f.spec != g.spec:
        raise SpecMismatch("bivariate polynomials over different fields")
    spec = f.spec
    df, dg = f.degree_in(var), g.degree_in(var)
    if df <= 0 or dg <= 0:
        raise DegenerateInput(f"both inputs need positive degree in {var}")
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    size = df + dg
    zero = Polynomial(spec)
    rows: list[list[Polynomial]] = []
    for shift in range(dg):
        row = [zero] * size
        for i, c in enumerate(fc):
            row[shift + df - i] = c
        rows.append(row)
    for shift in range(df):
        row = [zero] * size
        for i, c in enumerate(gc):
            row[shift + dg - i] = c
        rows.append(row)
    return _poly_matrix_det(spec, rows)
