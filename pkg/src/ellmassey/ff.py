"""Exact arithmetic in GF(p) and its extensions GF(p^k), plus root finding.

Extension fields are realized in a polynomial basis: GF(p^k) = GF(p)[X]/(m)
with m the lexicographically smallest monic irreducible of degree k (high
coefficients compared first), so element encodings are identical across runs.
An element is a tuple of k residues (c0, ..., c_{k-1}) meaning
c0 + c1*X + ... + c_{k-1}*X^{k-1}; tuples are also the canonical sort key.

Root finding uses an exhaustive scan on fields with at most 10^4 elements and
seeded Cantor-Zassenhaus equal-degree splitting above that, so results and
runtimes are reproducible.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .errors import (
    DegreeTooLarge,
    FieldMismatch,
    NotPrime,
    UnsupportedField,
    ZeroPolynomial,
)

DEFAULT_SEED = 0xC0FFEE

MAX_EXT_DEGREE = 96
EXHAUSTIVE_ROOT_BOUND = 10**4
MAX_ROOT_DEGREE = 200

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (the fixed base set covers n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# polynomials over GF(p) represented as lists of ints (ascending degree)

def _ip_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _ip_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ip_trim(out)


def _ip_rem(f, g, p):
    """Remainder of f by g (g nonzero, any leading coefficient)."""
    f = list(f)
    dg = len(g) - 1
    inv_lc = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv_lc % p
        shift = len(f) - 1 - dg
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        _ip_trim(f)
    return f


def _ip_gcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _ip_rem(f, g, p)
    if f:
        inv_lc = pow(f[-1], p - 2, p)
        f = [c * inv_lc % p for c in f]
    return f


def _ip_powmod_x(e: int, modulus, p):
    """X^e mod modulus via square-and-multiply."""
    result = [1]
    base = _ip_rem([0, 1], modulus, p)
    while e:
        if e & 1:
            result = _ip_rem(_ip_mul(result, base, p), modulus, p)
        base = _ip_rem(_ip_mul(base, base, p), modulus, p)
        e >>= 1
    return result


def _ip_is_irreducible(f, p):
    """Deterministic test: X^{p^k} = X mod f and gcd(X^{p^{k/t}} - X, f) = 1."""
    k = len(f) - 1
    if k < 1:
        return False
    xq = _ip_powmod_x(p**k, f, p)
    if _ip_trim([(a - b) % p for a, b in itertools.zip_longest(xq, [0, 1], fillvalue=0)]):
        return False
    for t in _prime_divisors(k):
        xe = _ip_powmod_x(p ** (k // t), f, p)
        diff = _ip_trim([(a - b) % p for a, b in itertools.zip_longest(xe, [0, 1], fillvalue=0)])
        if len(_ip_gcd(diff, f, p)) != 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# extension fields

class ExtField:
    """GF(p^k) in the polynomial basis given by ``modulus``.

    Raw element operations (``radd``, ``rmul``, ...) act on plain coefficient
    tuples; ``FieldElement`` wraps them for operator syntax. Instances are
    immutable and safe to share.
    """

    __slots__ = ("p", "k", "modulus", "order", "zero_raw", "one_raw", "_red_rows")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus  # length k+1, ascending, monic
        self.order = p**k
        self.zero_raw = (0,) * k
        self.one_raw = (1,) + (0,) * (k - 1) if k > 1 else (1 % p,)
        # x^{k+i} mod modulus for i = 0..k-2, used to fold product tails back
        rows = []
        if k > 1:
            cur = [(-modulus[j]) % p for j in range(k)]
            rows.append(tuple(cur))
            for _ in range(k - 2):
                nxt = [0] + cur[: k - 1]
                c = cur[k - 1]
                if c:
                    for j in range(k):
                        nxt[j] = (nxt[j] - c * modulus[j]) % p
                else:
                    nxt = [v % p for v in nxt]
                cur = nxt
                rows.append(tuple(cur))
        self._red_rows = tuple(rows)

    # -- raw tuple arithmetic -------------------------------------------------

    def radd(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def rsub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def rneg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def rmul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = [c % p for c in prod[:k]]
        rows = self._red_rows
        for i in range(k - 1):
            c = prod[k + i] % p
            if c:
                row = rows[i]
                for j in range(k):
                    out[j] = (out[j] + c * row[j]) % p
        return tuple(out)

    def rinv(self, a):
        p, k = self.p, self.k
        if k == 1:
            if a[0] == 0:
                raise ZeroDivisionError("inverse of zero field element")
            return (pow(a[0], p - 2, p),)
        # extended Euclid in GF(p)[X] against the modulus
        r0, r1 = list(self.modulus), _ip_trim(list(a))
        if not r1:
            raise ZeroDivisionError("inverse of zero field element")
        t0, t1 = [], [1]
        while len(r1) > 1:
            inv_lc = pow(r1[-1], p - 2, p)
            q = []
            r = list(r0)
            while len(r) >= len(r1) and r:
                c = r[-1] * inv_lc % p
                shift = len(r) - len(r1)
                q_ = [0] * (shift) + [c]
                q = _ip_trim([(x + y) % p for x, y in itertools.zip_longest(q, q_, fillvalue=0)])
                for i, b in enumerate(r1):
                    r[shift + i] = (r[shift + i] - c * b) % p
                _ip_trim(r)
            r0, r1 = r1, r
            qt1 = _ip_mul(q, t1, p)
            t0, t1 = t1, _ip_trim([(x - y) % p for x, y in itertools.zip_longest(t0, qt1, fillvalue=0)])
        if not r1:
            raise ZeroDivisionError("element not invertible")
        c = pow(r1[0], p - 2, p)
        t1 = [x * c % p for x in t1]
        t1 += [0] * (k - len(t1))
        return tuple(t1[:k])

    def rpow(self, a, e: int):
        if e < 0:
            return self.rpow(self.rinv(a), -e)
        result, base = self.one_raw, a
        while e:
            if e & 1:
                result = self.rmul(result, base)
            base = self.rmul(base, base)
            e >>= 1
        return result

    def rfrob(self, a):
        """a^p, the arithmetic Frobenius on raw coefficients."""
        return self.rpow(a, self.p)

    # -- public element interface ----------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, FieldElement):
            if coeffs.field is not self and coeffs.field != self:
                raise FieldMismatch("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, int):
            coeffs = (coeffs,) + (0,) * (self.k - 1)
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.k:
            raise FieldMismatch(f"expected {self.k} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self.zero_raw)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.one_raw)

    def elements(self):
        """All field elements in canonical (coefficient tuple) order."""
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"ExtField(p={self.p}, k={self.k})"


class FieldElement:
    """Immutable element of an ExtField; coefficient tuple is the sort key."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.radd(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.rsub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.rmul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.rmul(self.coeffs, self.field.rinv(o.coeffs)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.rpow(self.coeffs, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.rneg(self.coeffs))

    def inverse(self):
        return FieldElement(self.field, self.field.rinv(self.coeffs))

    def is_zero(self) -> bool:
        return self.coeffs == self.field.zero_raw

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __lt__(self, other):
        o = self._coerce(other)
        return self.coeffs < o.coeffs

    def __le__(self, other):
        o = self._coerce(other)
        return self.coeffs <= o.coeffs

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.coeffs[0]}"
        return f"FieldElement{self.coeffs}"


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> ExtField:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Candidates X^k + c_{k-1} X^{k-1} + ... + c_0 are scanned in increasing
    order of the integer sum(c_i p^i), i.e. high coefficients compared first;
    the first irreducible wins, so the modulus is stable across runs.
    For k = 1 the modulus is X itself.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1 or k > MAX_EXT_DEGREE:
        raise DegreeTooLarge(f"extension degree {k} outside 1..{MAX_EXT_DEGREE}")
    if p**k > 2**380:
        raise DegreeTooLarge("fields larger than 2^380 elements are unsupported")
    if k == 1:
        return ExtField(p, 1, (0, 1))
    for m in range(p**k):
        coeffs, v = [], m
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        candidate = coeffs + [1]
        if _ip_is_irreducible(candidate, p):
            return ExtField(p, k, tuple(candidate))
    raise AssertionError("no irreducible polynomial found")  # unreachable


def frobenius_power(x: FieldElement) -> FieldElement:
    """x^p, the arithmetic Frobenius; applying it k times gives x back."""
    return FieldElement(x.field, x.field.rfrob(x.coeffs))


# ---------------------------------------------------------------------------
# polynomials over an ExtField, raw coefficient-tuple lists (ascending degree)

def poly_trim(F: ExtField, f: list) -> list:
    while f and f[-1] == F.zero_raw:
        f.pop()
    return f


def poly_add(F, f, g):
    out = []
    for a, b in itertools.zip_longest(f, g, fillvalue=F.zero_raw):
        out.append(F.radd(a, b))
    return poly_trim(F, out)


def poly_sub(F, f, g):
    out = []
    for a, b in itertools.zip_longest(f, g, fillvalue=F.zero_raw):
        out.append(F.rsub(a, b))
    return poly_trim(F, out)


def poly_scale(F, f, c):
    return poly_trim(F, [F.rmul(a, c) for a in f])


def poly_mul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero_raw] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a != F.zero_raw:
            for j, b in enumerate(g):
                out[i + j] = F.radd(out[i + j], F.rmul(a, b))
    return poly_trim(F, out)


def poly_divmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv_lc = F.rinv(g[-1])
    q = [F.zero_raw] * max(0, len(f) - dg)
    while f and len(f) - 1 >= dg:
        c = F.rmul(f[-1], inv_lc)
        shift = len(f) - 1 - dg
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = F.rsub(f[shift + i], F.rmul(c, b))
        poly_trim(F, f)
    return poly_trim(F, q), f


def poly_rem(F, f, g):
    return poly_divmod(F, f, g)[1]


def poly_monic(F, f):
    if not f:
        return f
    return poly_scale(F, f, F.rinv(f[-1]))


def poly_gcd(F, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, poly_rem(F, f, g)
    return poly_monic(F, f)


def poly_powmod(F, base, e: int, modulus):
    result = [F.one_raw]
    base = poly_rem(F, base, modulus)
    while e:
        if e & 1:
            result = poly_rem(F, poly_mul(F, result, base), modulus)
        base = poly_rem(F, poly_mul(F, base, base), modulus)
        e >>= 1
    return result


def poly_eval(F, f, x_raw):
    acc = F.zero_raw
    for c in reversed(f):
        acc = F.radd(F.rmul(acc, x_raw), c)
    return acc


def poly_deriv(F, f):
    p = F.p
    out = []
    for i in range(1, len(f)):
        n = i % p
        out.append(F.rmul(f[i], tuple((n * c) % p for c in F.one_raw)))
    return poly_trim(F, out)


# ---------------------------------------------------------------------------
# root finding

def roots_in_field(f, F: ExtField, seed: int = DEFAULT_SEED) -> list[FieldElement]:
    """All roots of f lying in F, multiplicity one each, canonically sorted.

    ``f`` is a polynomial with integer or F-element coefficients, ascending
    degree. Uses an exhaustive scan when |F| <= 10^4; otherwise gcd with
    X^|F| - X followed by seeded equal-degree splitting (odd p only).
    """
    raw = _raw_poly(f, F)
    if not raw:
        raise ZeroPolynomial("root finding needs a nonzero polynomial")
    if len(raw) - 1 > MAX_ROOT_DEGREE:
        raise DegreeTooLarge(f"degree {len(raw) - 1} exceeds {MAX_ROOT_DEGREE}")
    roots = _raw_roots(F, raw, seed)
    return sorted(FieldElement(F, r) for r in roots)


def _raw_poly(f, F: ExtField) -> list:
    raw = []
    for c in f:
        if isinstance(c, FieldElement):
            if c.field != F:
                raise FieldMismatch("coefficient from a different field")
            raw.append(c.coeffs)
        elif isinstance(c, int):
            raw.append(F.element(c).coeffs)
        else:
            raw.append(tuple(int(v) % F.p for v in c))
    return poly_trim(F, raw)


def _raw_roots(F: ExtField, raw, seed: int) -> list:
    if len(raw) == 1:
        return []
    if F.order <= EXHAUSTIVE_ROOT_BOUND:
        return [
            coeffs
            for coeffs in itertools.product(range(F.p), repeat=F.k)
            if poly_eval(F, raw, coeffs) == F.zero_raw
        ]
    if F.p == 2:
        raise UnsupportedField("large char-2 root search is unsupported")
    x = [F.zero_raw, F.one_raw]
    xq = poly_powmod(F, x, F.order, raw)
    g = poly_gcd(F, poly_sub(F, xq, x), raw)
    rng = random.Random(seed)
    out: list = []
    _split_linear(F, g, rng, out)
    return out


def _split_linear(F: ExtField, g, rng, out):
    """Split a product of distinct linear factors into roots (Cantor-Zassenhaus)."""
    deg = len(g) - 1
    if deg <= 0:
        return
    if deg == 1:
        # root of x + c0/c1
        out.append(F.rneg(F.rmul(g[0], F.rinv(g[1]))))
        return
    half = (F.order - 1) // 2
    while True:
        r = [tuple(rng.randrange(F.p) for _ in range(F.k)) for _ in range(deg)]
        r = poly_trim(F, r)
        if not r:
            continue
        s = poly_powmod(F, r, half, g)
        s = poly_sub(F, s, [F.one_raw])
        d = poly_gcd(F, s, g)
        if 0 < len(d) - 1 < deg:
            _split_linear(F, d, rng, out)
            _split_linear(F, poly_divmod(F, g, d)[0], rng, out)
            return


def factor_monic_squarefree(F: ExtField, f, seed: int = DEFAULT_SEED) -> list:
    """Irreducible factors of a monic squarefree polynomial over F.

    Distinct-degree factorization followed by seeded equal-degree splitting
    (odd characteristic). Returns (degree, factor) pairs sorted by degree and
    then by coefficient tuples, so the order is reproducible.
    """
    if F.p == 2:
        raise UnsupportedField("factorization in characteristic 2 is unsupported")
    f = poly_monic(F, list(f))
    if len(poly_gcd(F, f, poly_deriv(F, f))) != 1:
        raise ZeroPolynomial("factor_monic_squarefree needs a squarefree polynomial")
    rng = random.Random(seed)
    stages = []
    x = [F.zero_raw, F.one_raw]
    h = list(x)
    d = 0
    rest = f
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = poly_powmod(F, h, F.order, rest)
        g = poly_gcd(F, poly_sub(F, h, x), rest)
        if len(g) > 1:
            stages.append((d, g))
            rest = poly_divmod(F, rest, g)[0]
            h = poly_rem(F, h, rest) if len(rest) > 1 else [F.zero_raw]
    if len(rest) > 1:
        stages.append((len(rest) - 1, rest))
    factors = []
    for d, g in stages:
        parts: list = []
        _equal_degree_split(F, g, d, rng, parts)
        factors.extend((d, part) for part in parts)
    factors.sort(key=lambda item: (item[0], [tuple(c) for c in item[1]]))
    return factors


def _equal_degree_split(F: ExtField, g, d: int, rng, out):
    """Split a product of distinct degree-d irreducibles (Cantor-Zassenhaus)."""
    if len(g) - 1 == d:
        out.append(g)
        return
    half = (F.order**d - 1) // 2
    while True:
        r = poly_trim(F, [tuple(rng.randrange(F.p) for _ in range(F.k)) for _ in range(len(g) - 1)])
        if len(r) <= 1:
            continue
        s = poly_sub(F, poly_powmod(F, r, half, g), [F.one_raw])
        h = poly_gcd(F, s, g)
        if 0 < len(h) - 1 < len(g) - 1:
            _equal_degree_split(F, h, d, rng, out)
            _equal_degree_split(F, poly_divmod(F, g, h)[0], d, rng, out)
            return


def sqrt_in_field(c: FieldElement, seed: int = DEFAULT_SEED) -> FieldElement | None:
    """Canonically smaller square root of c in its field, or None.

    Tonelli-Shanks over the cyclic group F*, with the quadratic non-residue
    located by a seeded scan; odd characteristic only.
    """
    F = c.field
    if F.p == 2:
        raise UnsupportedField("square roots in characteristic 2 are unsupported")
    if c.is_zero():
        return F.zero
    q = F.order
    if F.rpow(c.coeffs, (q - 1) // 2) != F.one_raw:
        return None
    # write q - 1 = t * 2^s with t odd
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    rng = random.Random(seed)
    while True:
        z = tuple(rng.randrange(F.p) for _ in range(F.k))
        if z != F.zero_raw and F.rpow(z, (q - 1) // 2) != F.one_raw:
            break
    m, cc = s, F.rpow(z, t)
    u = F.rpow(c.coeffs, t)
    r = F.rpow(c.coeffs, (t + 1) // 2)
    while u != F.one_raw:
        # find least i with u^{2^i} = 1
        i, v = 0, u
        while v != F.one_raw:
            v = F.rmul(v, v)
            i += 1
        b = F.rpow(cc, 1 << (m - i - 1))
        m, cc = i, F.rmul(b, b)
        u = F.rmul(u, cc)
        r = F.rmul(r, b)
    root = FieldElement(F, r)
    other = -root
    return root if root.coeffs <= other.coeffs else other


# ---------------------------------------------------------------------------
# embeddings between canonical fields

class Embedding:
    """Ring embedding GF(p^k0) -> GF(p^k), determined by the canonical
    (smallest) root of the small field's modulus in the big field."""

    __slots__ = ("src", "dst", "_powers")

    def __init__(self, src: ExtField, dst: ExtField, root_raw):
        self.src = src
        self.dst = dst
        powers = [dst.one_raw]
        for _ in range(src.k - 1):
            powers.append(dst.rmul(powers[-1], root_raw))
        self._powers = powers

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field != self.src:
            raise FieldMismatch("element not in the embedding's source field")
        acc = self.dst.zero_raw
        for c, pw in zip(x.coeffs, self._powers):
            if c:
                acc = self.dst.radd(acc, tuple((c * v) % self.dst.p for v in pw))
        return FieldElement(self.dst, acc)

    def raw(self, coeffs) -> tuple:
        acc = self.dst.zero_raw
        for c, pw in zip(coeffs, self._powers):
            if c:
                acc = self.dst.radd(acc, tuple((c * v) % self.dst.p for v in pw))
        return acc


@lru_cache(maxsize=None)
def embed_field(src: ExtField, dst: ExtField, seed: int = DEFAULT_SEED) -> Embedding:
    """Canonical embedding GF(p^k0) into GF(p^k) (requires k0 | k)."""
    if src.p != dst.p:
        raise FieldMismatch("different characteristics")
    if dst.k % src.k != 0:
        raise FieldMismatch(f"GF({src.p}^{src.k}) does not embed in GF({dst.p}^{dst.k})")
    if src.k == 1:
        return Embedding(src, dst, dst.zero_raw)
    roots = roots_in_field(list(src.modulus), dst, seed=seed)
    if not roots:
        raise FieldMismatch("modulus has no root in the target field")  # k0 | k rules this out
    return Embedding(src, dst, roots[0].coeffs)
