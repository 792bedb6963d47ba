"""Short Weierstrass elliptic curves over GF(p^k), char >= 5.

Provides the affine group law, exhaustive point counting, odd division
polynomials, deterministic n-torsion bases over the minimal extension field,
the Frobenius matrix on a torsion basis, and the Weil pairing via Miller's
algorithm with shifted evaluation.

Division polynomials follow the y-normalized convention: the cached
polynomial for even index m is psi_m / y, so every entry is univariate in x
once y^2 = x^3 + ax + b is substituted.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import isqrt

from . import ff
from .errors import (
    BadCharacteristic,
    ExtensionCapExceeded,
    FieldMismatch,
    FieldTooLarge,
    NotInSpan,
    NotTorsion,
    SingularCurve,
    UnsupportedLevel,
)
from .ff import DEFAULT_SEED, ExtField, FieldElement

POINT_COUNT_CAP = 50021
TORSION_LEVELS = (3, 5, 7, 9)


class Curve:
    """y^2 = x^3 + ax + b over its field of definition."""

    __slots__ = ("base", "a", "b", "disc", "j")

    def __init__(self, base: ExtField, a: FieldElement, b: FieldElement):
        if base.p in (2, 3):
            raise BadCharacteristic(f"characteristic {base.p} not supported")
        a = base.element(a)
        b = base.element(b)
        disc = a * a * a * 4 + b * b * 27
        if disc.is_zero():
            raise SingularCurve("4a^3 + 27b^2 = 0")
        self.base = base
        self.a = a
        self.b = b
        self.disc = disc
        self.j = (a * a * a * 4 * 1728) / disc

    def over(self, field: ExtField) -> "CurveExt":
        """The same curve viewed over an extension of its base field."""
        if field == self.base:
            return CurveExt(self, field, self.a, self.b)
        emb = ff.embed_field(self.base, field)
        return CurveExt(self, field, emb(self.a), emb(self.b))

    def ext(self) -> "CurveExt":
        return CurveExt(self, self.base, self.a, self.b)

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and self.base == other.base
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.base, self.a.coeffs, self.b.coeffs))

    def __repr__(self):
        return f"Curve(GF({self.base.p}^{self.base.k}), a={self.a!r}, b={self.b!r})"


class CurveExt:
    """A curve together with the field its points currently live in."""

    __slots__ = ("curve", "field", "a", "b")

    def __init__(self, curve: Curve, field: ExtField, a: FieldElement, b: FieldElement):
        self.curve = curve
        self.field = field
        self.a = a
        self.b = b

    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def point(self, x, y) -> "CurvePoint":
        x = self.field.element(x)
        y = self.field.element(y)
        if y * y != x * x * x + self.a * x + self.b:
            raise FieldMismatch("point does not satisfy the curve equation")
        return CurvePoint(self, x, y)

    def rhs(self, x: FieldElement) -> FieldElement:
        return x * x * x + self.a * x + self.b

    def __eq__(self, other):
        return (
            isinstance(other, CurveExt)
            and self.curve == other.curve
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.curve, self.field))


class CurvePoint:
    """Affine point or the point at infinity; immutable."""

    __slots__ = ("ctx", "x", "y")

    def __init__(self, ctx: CurveExt, x, y):
        self.ctx = ctx
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def key(self):
        """Canonical sort key: infinity first, then (x, y) coefficient tuples."""
        if self.is_infinity:
            return (0,)
        return (1, self.x.coeffs, self.y.coeffs)

    def __neg__(self):
        if self.is_infinity:
            return self
        return CurvePoint(self.ctx, self.x, -self.y)

    def __add__(self, other):
        return point_add(self, other)

    def __sub__(self, other):
        return point_add(self, -other)

    def __rmul__(self, m: int):
        return scalar_mul(m, self)

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.is_infinity:
            return hash((self.ctx, None))
        return hash((self.ctx, self.x.coeffs, self.y.coeffs))

    def __repr__(self):
        if self.is_infinity:
            return "Infinity"
        return f"({self.x!r}, {self.y!r})"


class TorsionBasis:
    """Ordered basis (P, Q) of E[n] over the degree-k extension of the base."""

    __slots__ = ("n", "P", "Q", "k")

    def __init__(self, n: int, P: CurvePoint, Q: CurvePoint, k: int):
        self.n = n
        self.P = P
        self.Q = Q
        self.k = k


class TorsionAction:
    """Frobenius on an ordered n-torsion basis; columns are the images."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries):
        self.n = n
        self.entries = tuple(tuple(v % n for v in row) for row in entries)
        if _det2(self.entries, n) == 0 or _gcd(_det2(self.entries, n), n) != 1:
            raise NotInSpan("torsion action matrix is not invertible")

    def det(self) -> int:
        return _det2(self.entries, self.n)

    def trace(self) -> int:
        return (self.entries[0][0] + self.entries[1][1]) % self.n

    def apply(self, vec):
        (a, c), (b, d) = self.entries
        return ((a * vec[0] + c * vec[1]) % self.n, (b * vec[0] + d * vec[1]) % self.n)

    def reduce(self, m: int) -> "TorsionAction":
        if self.n % m != 0:
            raise FieldMismatch(f"cannot reduce level {self.n} matrix mod {m}")
        return TorsionAction(m, [[v % m for v in row] for row in self.entries])

    def __eq__(self, other):
        return (
            isinstance(other, TorsionAction)
            and self.n == other.n
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"TorsionAction(n={self.n}, {self.entries})"


def _det2(entries, n):
    return (entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]) % n


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# construction and group law

def curve_new(base: ExtField, a, b) -> Curve:
    """Validated curve y^2 = x^3 + ax + b; stores discriminant and j-invariant."""
    return Curve(base, base.element(a), base.element(b))


def igusa_curve(base: ExtField, t0: int) -> Curve:
    """Short-form member of the one-parameter family with j-invariant t0.

    Starts from y^2 = 4x^3 - cx - c with c = 27t/(t - 1728) and rescales
    y by 2. Needs t0 distinct from 0 and 1728 mod p, and p not dividing 6.
    """
    t = base.element(t0)
    if t.is_zero() or t == base.element(1728):
        raise SingularCurve("parameter 0 or 1728 gives a singular model")
    c = (t * 27) / (t - 1728)
    a = -c / 4
    return curve_new(base, a, a)


def point_add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Group law; Infinity is the identity."""
    if P.ctx != Q.ctx:
        raise FieldMismatch("points on different curves or fields")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return P.ctx.infinity()
        lam = (P.x * P.x * 3 + P.ctx.a) / (P.y * 2)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(P.ctx, x3, y3)


def scalar_mul(m: int, P: CurvePoint) -> CurvePoint:
    """m-fold sum of P by double-and-add; scalar_mul(0, P) is Infinity."""
    if m < 0:
        return scalar_mul(-m, -P)
    acc = P.ctx.infinity()
    addend = P
    while m:
        if m & 1:
            acc = point_add(acc, addend)
        addend = point_add(addend, addend)
        m >>= 1
    return acc


def point_order_dividing(P: CurvePoint, n: int) -> int:
    """Exact order of P given that it divides n."""
    for d in sorted(_divisors(n)):
        if scalar_mul(d, P).is_infinity:
            return d
    raise NotTorsion(f"point order does not divide {n}")


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# point counting

def count_points(curve: Curve) -> int:
    """#E(F_q) by exhaustive x-scan with a precomputed square table."""
    q = curve.base.order
    if q > POINT_COUNT_CAP:
        raise FieldTooLarge(f"point counting capped at q <= {POINT_COUNT_CAP}")
    F = curve.base
    if F.k == 1:
        p = F.p
        a, b = curve.a.coeffs[0], curve.b.coeffs[0]
        squares = set()
        for v in range(p):
            squares.add(v * v % p)
        count = 1
        for x in range(p):
            rhs = (x * x * x + a * x + b) % p
            if rhs == 0:
                count += 1
            elif rhs in squares:
                count += 2
        return count
    squares = set()
    for v in _raw_elements(F):
        squares.add(F.rmul(v, v))
    a, b = curve.a.coeffs, curve.b.coeffs
    count = 1
    for x in _raw_elements(F):
        rhs = F.radd(F.rmul(F.rmul(x, x), x), F.radd(F.rmul(a, x), b))
        if rhs == F.zero_raw:
            count += 1
        elif rhs in squares:
            count += 2
    return count


def _raw_elements(F: ExtField):
    import itertools

    return itertools.product(range(F.p), repeat=F.k)


def trace_of_frobenius(curve: Curve) -> int:
    """t = q + 1 - #E(F_q); satisfies |t| <= 2*sqrt(q)."""
    q = curve.base.order
    t = q + 1 - count_points(curve)
    assert abs(t) <= 2 * isqrt(q) + 1
    return t


# ---------------------------------------------------------------------------
# division polynomials (odd n), y-normalized

def division_polynomial(curve: Curve, n: int) -> list[FieldElement]:
    """psi_n for odd n in {3,5,7,9}: roots are the x-coordinates of E[n]-{O}."""
    if n not in TORSION_LEVELS:
        raise UnsupportedLevel(f"division polynomials provided for n in {TORSION_LEVELS}")
    if n % curve.base.p == 0:
        raise BadCharacteristic("torsion level must be coprime to the characteristic")
    raw = _division_raw(curve, n)
    return [FieldElement(curve.base, c) for c in raw]


def _division_raw(curve: Curve, n: int) -> list:
    F = curve.base
    a, b = curve.a.coeffs, curve.b.coeffs
    cpoly = [b, a, F.zero_raw, F.one_raw]  # x^3 + ax + b
    cpoly2 = ff.poly_mul(F, cpoly, cpoly)

    def const(v):
        return F.element(v).coeffs

    cache: dict[int, list] = {
        0: [],
        1: [const(1)],
        2: [const(2)],
        3: ff.poly_trim(
            F,
            [
                F.rneg(F.rmul(a, a)),
                F.rmul(b, const(12)),
                F.rmul(a, const(6)),
                F.zero_raw,
                const(3),
            ],
        ),
        4: ff.poly_scale(
            F,
            [
                F.rsub(F.rneg(F.rmul(F.rmul(b, b), const(8))), F.rmul(F.rmul(a, a), a)),
                F.rneg(F.rmul(F.rmul(a, b), const(4))),
                F.rneg(F.rmul(F.rmul(a, a), const(5))),
                F.rmul(b, const(20)),
                F.rmul(a, const(5)),
                F.zero_raw,
                F.one_raw,
            ],
            const(4),
        ),
    }

    def f(m: int) -> list:
        if m in cache:
            return cache[m]
        t = m // 2
        if m % 2 == 1:
            lead = ff.poly_mul(F, f(t + 2), ff.poly_mul(F, f(t), ff.poly_mul(F, f(t), f(t))))
            tail = ff.poly_mul(F, f(t - 1), ff.poly_mul(F, f(t + 1), ff.poly_mul(F, f(t + 1), f(t + 1))))
            if t % 2 == 0:
                res = ff.poly_sub(F, ff.poly_mul(F, cpoly2, lead), tail)
            else:
                res = ff.poly_sub(F, lead, ff.poly_mul(F, cpoly2, tail))
        else:
            inner = ff.poly_sub(
                F,
                ff.poly_mul(F, f(t + 2), ff.poly_mul(F, f(t - 1), f(t - 1))),
                ff.poly_mul(F, f(t - 2), ff.poly_mul(F, f(t + 1), f(t + 1))),
            )
            half = F.rinv(const(2))
            res = ff.poly_scale(F, ff.poly_mul(F, f(t), inner), half)
        cache[m] = res
        return res

    psi = f(n)
    assert len(psi) - 1 == (n * n - 1) // 2
    return psi


# ---------------------------------------------------------------------------
# torsion bases

def torsion_basis(curve: Curve, n: int, seed: int = DEFAULT_SEED) -> TorsionBasis:
    """Deterministic basis of E[n] over the least extension containing it.

    The torsion field degree comes from the factor degrees of psi_n over the
    base (all x-coordinates rational over the lcm; one quadratic doubling if
    some y-coordinate needs it). All n^2 - 1 nonzero points are materialized;
    P is the canonically first point of exact order n, Q the first point of
    exact order n generating all n^2 combinations together with P.
    """
    if n not in TORSION_LEVELS:
        raise UnsupportedLevel(f"torsion levels supported: {TORSION_LEVELS}")
    if n % curve.base.p == 0:
        raise BadCharacteristic("torsion level must be coprime to the characteristic")
    k, factors = _torsion_field_degree(curve, n, seed)
    if curve.base.k * k > ff.MAX_EXT_DEGREE:
        raise ExtensionCapExceeded(f"torsion field degree {curve.base.k * k} exceeds cap")
    big = ff.make_field(curve.base.p, curve.base.k * k)
    emb = ff.embed_field(curve.base, big) if big != curve.base else None
    ctx = curve.over(big)
    points = _all_torsion_points(ctx, factors, emb, seed)
    assert len(points) == n * n - 1
    points.sort(key=lambda T: T.key())
    P = next(T for T in points if point_order_dividing(T, n) == n)
    Q = None
    for cand in points:
        if cand == P or point_order_dividing(cand, n) != n:
            continue
        if _spans(P, cand, n):
            Q = cand
            break
    if Q is None:
        raise NotInSpan("no independent torsion generator found")  # impossible for valid input
    return TorsionBasis(n, P, Q, k)


def _torsion_field_degree(curve: Curve, n: int, seed: int):
    """(k, factors): least k with E[n] rational over F_{q^k}, via psi_n factors."""
    F = curve.base
    psi = _division_raw(curve, n)
    factors = ff.factor_monic_squarefree(F, psi, seed=seed)
    k1 = 1
    for d, _ in factors:
        k1 = k1 * d // _gcd(k1, d)
    need_double = False
    a, b = curve.a.coeffs, curve.b.coeffs
    h = [b, a, F.zero_raw, F.one_raw]
    for d, g in factors:
        if (k1 // d) % 2 == 0:
            continue  # odd-degree value becomes a square after the even step anyway
        s = ff.poly_powmod(F, h, (F.order**d - 1) // 2, g)
        if s != [F.one_raw]:
            need_double = True
            break
    return (2 * k1 if need_double else k1), factors


def _all_torsion_points(ctx: CurveExt, factors, emb, seed: int) -> list[CurvePoint]:
    big = ctx.field
    out = []
    for _, g in factors:
        if emb is None:
            coeffs = [FieldElement(big, c) for c in g]
        else:
            coeffs = [FieldElement(big, emb.raw(c)) for c in g]
        for x0 in ff.roots_in_field(coeffs, big, seed=seed):
            y = ff.sqrt_in_field(ctx.rhs(x0), seed=seed)
            assert y is not None and not y.is_zero()
            out.append(CurvePoint(ctx, x0, y))
            out.append(CurvePoint(ctx, x0, -y))
    return out


def _spans(P: CurvePoint, Q: CurvePoint, n: int) -> bool:
    """True iff the n^2 combinations iP + jQ are pairwise distinct."""
    seen = set()
    row = P.ctx.infinity()
    for _ in range(n):
        cur = row
        for _ in range(n):
            seen.add(cur.key())
            cur = point_add(cur, Q)
        row = point_add(row, P)
    return len(seen) == n * n


# ---------------------------------------------------------------------------
# Frobenius action

def frobenius_endo(P: CurvePoint, q: int) -> CurvePoint:
    """Coordinate-wise q-power Frobenius (q = order of the field of definition)."""
    if P.is_infinity:
        return P
    F = P.ctx.field
    return CurvePoint(
        P.ctx,
        FieldElement(F, F.rpow(P.x.coeffs, q)),
        FieldElement(F, F.rpow(P.y.coeffs, q)),
    )


def frobenius_matrix(basis: TorsionBasis) -> TorsionAction:
    """Matrix of the q-power Frobenius on (P, Q), columns = images.

    Solves Phi(P) = aP + bQ and Phi(Q) = cP + dQ by exhaustive lookup over
    the <= n^2 torsion combinations and returns ((a, c), (b, d)).
    """
    n = basis.n
    ctx = basis.P.ctx
    q = ctx.curve.base.order
    table = {}
    row = ctx.infinity()
    for i in range(n):
        cur = row
        for j in range(n):
            table[cur.key()] = (i, j)
            cur = point_add(cur, basis.Q)
        row = point_add(row, basis.P)
    try:
        col_p = table[frobenius_endo(basis.P, q).key()]
        col_q = table[frobenius_endo(basis.Q, q).key()]
    except KeyError as exc:  # pragma: no cover - signals an internal inconsistency
        raise NotInSpan("Frobenius image outside the torsion span") from exc
    action = TorsionAction(n, [[col_p[0], col_q[0]], [col_p[1], col_q[1]]])
    assert action.det() == q % n
    return action


# ---------------------------------------------------------------------------
# Weil pairing

def weil_pairing(P: CurvePoint, Q: CurvePoint, n: int, seed: int = DEFAULT_SEED) -> FieldElement:
    """Weil pairing e_n(P, Q), an n-th root of unity in the points' field.

    Uses Miller functions with divisors n(P) - n(O) and n(Q) - n(O), the
    second one translated by an auxiliary point R so the supports are
    disjoint; degenerate line evaluations trigger a deterministic retry
    with the next seeded R.
    """
    if P.ctx != Q.ctx:
        raise FieldMismatch("pairing arguments on different curves or fields")
    ctx = P.ctx
    F = ctx.field
    if not scalar_mul(n, P).is_infinity or not scalar_mul(n, Q).is_infinity:
        raise NotTorsion(f"arguments are not {n}-torsion points")
    if P.is_infinity or Q.is_infinity:
        return F.one
    rng = random.Random(seed)
    for _ in range(256):
        R = _random_point(ctx, rng)
        if R is None or R.is_infinity:
            continue
        vals = (
            _miller(P, point_add(Q, R), n),
            _miller(P, R, n),
            _miller(Q, point_add(P, -R), n),
            _miller(Q, -R, n),
        )
        if any(v is None for v in vals):
            continue
        f1_num, f1_den, f2_den, f2_num = vals
        result = (f1_num * f2_num) / (f1_den * f2_den)
        assert result**n == F.one
        return result
    raise NotTorsion("pairing evaluation kept degenerating")  # pragma: no cover


def _random_point(ctx: CurveExt, rng) -> CurvePoint | None:
    F = ctx.field
    x = FieldElement(F, tuple(rng.randrange(F.p) for _ in range(F.k)))
    flip = rng.randrange(2)  # drawn unconditionally to keep the stream aligned
    y = ff.sqrt_in_field(ctx.rhs(x), seed=rng.randrange(1 << 30))
    if y is None:
        return None
    return CurvePoint(ctx, x, -y if flip else y)


def _miller(P: CurvePoint, S: CurvePoint, n: int):
    """f_{n,P}(S) with divisor n(P) - n(O); None when the evaluation degenerates."""
    if S.is_infinity or S == P:
        return None
    F = P.ctx.field
    f = F.one
    V = P
    for bit in bin(n)[3:]:
        val = _line_quotient(V, V, S)
        if val is None:
            return None
        f = f * f * val
        V = point_add(V, V)
        if bit == "1":
            val = _line_quotient(V, P, S)
            if val is None:
                return None
            f = f * val
            V = point_add(V, P)
    return f


def _line_quotient(A: CurvePoint, B: CurvePoint, S: CurvePoint):
    """Value at S of line(A,B) / vertical(A+B); None on a zero or pole."""
    ctx = A.ctx
    if A.is_infinity or B.is_infinity:
        other = B if A.is_infinity else A
        if other.is_infinity:
            return ctx.field.one
        val = S.x - other.x
        return None if val.is_zero() else val
    if A.x == B.x and A.y == -B.y:
        val = S.x - A.x  # vertical line; A + B = O has no vertical denominator
        return None if val.is_zero() else val
    if A == B:
        lam = (A.x * A.x * 3 + ctx.a) / (A.y * 2)
    else:
        lam = (B.y - A.y) / (B.x - A.x)
    xc = lam * lam - A.x - B.x
    num = (S.y - A.y) - lam * (S.x - A.x)
    den = S.x - xc
    if num.is_zero() or den.is_zero():
        return None
    return num / den


# ---------------------------------------------------------------------------
# rational torsion structure (used by classification and search)

@lru_cache(maxsize=4096)
def _rational_rank_cached(curve: Curve, ell: int, seed: int) -> int:
    F = curve.base
    psi = _division_raw(curve, ell)
    count = 1
    half = (F.order - 1) // 2
    for x0 in ff.roots_in_field([FieldElement(F, c) for c in psi], F, seed=seed):
        rhs = curve.ext().rhs(x0)
        if rhs.is_zero():
            continue  # order-2 point, impossible for odd ell
        if F.rpow(rhs.coeffs, half) == F.one_raw:
            count += 2
    if count == 1:
        return 0
    if count == ell:
        return 1
    assert count == ell * ell
    return 2


def rational_torsion_rank(curve: Curve, ell: int, seed: int = DEFAULT_SEED) -> int:
    """Rank r in {0,1,2} of E(F_q)[ell] (the Frobenius-fixed points of E[ell])."""
    if ell not in (3, 5, 7):
        raise UnsupportedLevel("rational torsion rank implemented for ell in {3,5,7}")
    return _rational_rank_cached(curve, ell, seed)
