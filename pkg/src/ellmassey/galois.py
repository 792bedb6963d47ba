"""The finite quotient through which every Z/l-character of pi_1(E) factors.

For a curve over F_q and an odd prime l in {3,5,7} the group is a semidirect
product Gbar = Tbar x| <phi> where phi has order l' (9 when l = 3, else l)
and Tbar is a quotient of the l'-torsion determined by the shape of the
Frobenius action mod l:

  full_torsion     Frobenius trivial on E[l]; Tbar = E[l'], rank 2
  split_line       fixed line, second eigenvalue != 1; Tbar cyclic of order l'
  unipotent_line   fixed line, unipotent action; Tbar = E[l'], rank 2,
                   normalized basis (mprime, m) with mprime = (phi - 1)m
  no_fixed_points  no fixed line; Tbar collapses to 0 (the quotient by
                   (phi^{l'} - 1)E[l'] is everything since that map is
                   invertible here)

The group is stored in normal form: an element is (torsion vector, phi
exponent) with (t1, e1)(t2, e2) = (t1 + xi^{e1} t2, e1 + e2). The relation
set derived here is the single source of truth consumed by both the
character enumeration and the lifting oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from . import ec, ff
from .errors import (
    CaseMismatch,
    GroupMismatch,
    InvalidData,
    NotCongruentIdentity,
    NotInvertible,
    UnsupportedLevel,
)
from .ff import DEFAULT_SEED

SUPPORTED_ELLS = (3, 5, 7)


def ell_prime(ell: int) -> int:
    """Torsion level at which Frobenius must be tracked: 9 for l=3, else l."""
    return 9 if ell == 3 else ell


class GaloisCase(Enum):
    FULL_TORSION = "full_torsion"
    NO_FIXED_POINTS = "no_fixed_points"
    SPLIT_LINE = "split_line"
    UNIPOTENT_LINE = "unipotent_line"


# ---------------------------------------------------------------------------
# 2x2 matrices over Z/n as ((a, b), (c, d)) row-major tuples

def mat_id(n=None):
    return ((1, 0), (0, 1))


def mat_mul(A, B, n):
    return (
        (
            (A[0][0] * B[0][0] + A[0][1] * B[1][0]) % n,
            (A[0][0] * B[0][1] + A[0][1] * B[1][1]) % n,
        ),
        (
            (A[1][0] * B[0][0] + A[1][1] * B[1][0]) % n,
            (A[1][0] * B[0][1] + A[1][1] * B[1][1]) % n,
        ),
    )


def mat_det(A, n):
    return (A[0][0] * A[1][1] - A[0][1] * A[1][0]) % n


def mat_inv(A, n):
    d = mat_det(A, n)
    try:
        dinv = pow(d, -1, n)
    except ValueError as exc:
        raise NotInvertible(f"matrix determinant {d} not invertible mod {n}") from exc
    return (
        (A[1][1] * dinv % n, -A[0][1] * dinv % n),
        (-A[1][0] * dinv % n, A[0][0] * dinv % n),
    )


def mat_pow(A, e, n):
    R = mat_id()
    while e:
        if e & 1:
            R = mat_mul(R, A, n)
        A = mat_mul(A, A, n)
        e >>= 1
    return R


def mat_apply(A, v, n):
    return ((A[0][0] * v[0] + A[0][1] * v[1]) % n, (A[1][0] * v[0] + A[1][1] * v[1]) % n)


def mat_sub(A, B, n):
    return tuple(tuple((a - b) % n for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


# ---------------------------------------------------------------------------
# case classification

def classify_case(action: ec.TorsionAction) -> GaloisCase:
    """Shape of a mod-l Frobenius matrix: identity, no fixed line, split, unipotent."""
    ell = action.n
    if ell not in SUPPORTED_ELLS:
        raise UnsupportedLevel(f"classification defined at prime level, ell in {SUPPORTED_ELLS}")
    A = action.entries
    M = mat_sub(A, mat_id(), ell)
    if M == ((0, 0), (0, 0)):
        return GaloisCase.FULL_TORSION
    if mat_det(M, ell) != 0:
        return GaloisCase.NO_FIXED_POINTS
    if mat_mul(M, M, ell) == ((0, 0), (0, 0)):
        return GaloisCase.UNIPOTENT_LINE
    return GaloisCase.SPLIT_LINE


# ---------------------------------------------------------------------------
# presentations

Word = tuple  # of (generator index, exponent) pairs


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class Presentation:
    """Generators with orders and defining relations, oracle-ready.

    ``search_order`` fixes the order in which the lifting oracle assigns
    generator images for the full-lift search; ``center_search_order`` does
    the same for the center-quotient search (the two searches prune on
    different relations, so their efficient orders differ). Both are fixed,
    so found witnesses are reproducible.
    """

    ell: int
    gen_names: tuple[str, ...]
    orders: tuple[int, ...]
    relations: tuple[Relation, ...]
    search_order: tuple[int, ...]
    center_search_order: tuple[int, ...]


def _build_relations(n_torsion: int, orders, xi, lprime, has_phi: bool):
    rels = []
    for i in range(n_torsion):
        rels.append(Relation(((i, orders[i]),), ()))
    for i in range(n_torsion):
        for j in range(i + 1, n_torsion):
            rels.append(Relation(((i, 1), (j, 1), (i, -1), (j, -1)), ()))
    if has_phi:
        phi = n_torsion
        rels.append(Relation(((phi, lprime),), ()))
        for i in range(n_torsion):
            image = tuple(
                (j, xi[j][i] % lprime) for j in range(n_torsion) if xi[j][i] % lprime
            )
            rels.append(Relation(((phi, 1), (i, 1), (phi, -1)), image))
    return tuple(rels)


# ---------------------------------------------------------------------------
# the group

class GbarGroup:
    """Finite quotient Tbar x| <phi> with phi of order l'.

    ``xi`` is the action matrix of phi on the torsion generators (columns are
    images, entries mod l'); rank 0 means the torsion part is trivial.
    ``constants`` holds the normalized-basis invariants (alpha, beta, gamma,
    delta, c) where the construction defines them.
    """

    def __init__(self, ell, case, torsion_orders, xi, constants=None, context=None):
        self.ell = ell
        self.ell_prime = ell_prime(ell)
        self.case = case
        self.torsion_orders = tuple(torsion_orders)
        self.xi = tuple(tuple(row) for row in xi)
        self.constants = constants
        self.context = context or {}
        rank = len(self.torsion_orders)
        if case is GaloisCase.UNIPOTENT_LINE:
            names: tuple[str, ...] = ("mprime", "m", "phi")
        elif rank == 2:
            names = ("m1", "m2", "phi")
        elif rank == 1:
            names = ("m", "phi")
        else:
            names = ("phi",)
        self.gen_names = names
        self._characters = None
        self._presentation = None
        self._torsion_presentation = None
        self._xi_powers = None

    @property
    def rank(self) -> int:
        return len(self.torsion_orders)

    @property
    def order(self) -> int:
        size = self.ell_prime
        for o in self.torsion_orders:
            size *= o
        return size

    def presentation(self) -> Presentation:
        if self._presentation is None:
            rank = self.rank
            orders = self.torsion_orders + (self.ell_prime,)
            if self.case is GaloisCase.UNIPOTENT_LINE:
                # full search: mprime first, so the central pruning on the
                # phi-mprime relation bites; center search: mprime last, since
                # only the phi-m relation constrains the quotient lift
                search = (0, 2, 1)
                center = (1, 2, 0)
            else:
                search = tuple(range(rank + 1))
                center = search
            self._presentation = Presentation(
                ell=self.ell,
                gen_names=self.gen_names,
                orders=orders,
                relations=_build_relations(rank, self.torsion_orders, self.xi, self.ell_prime, True),
                search_order=search,
                center_search_order=center,
            )
        return self._presentation

    def torsion_presentation(self) -> Presentation:
        """The torsion subgroup alone (no phi), for restriction tests."""
        if self._torsion_presentation is None:
            rank = self.rank
            self._torsion_presentation = Presentation(
                ell=self.ell,
                gen_names=self.gen_names[:rank],
                orders=self.torsion_orders,
                relations=_build_relations(rank, self.torsion_orders, self.xi, self.ell_prime, False),
                search_order=tuple(range(rank)),
                center_search_order=tuple(range(rank)),
            )
        return self._torsion_presentation

    def characters(self) -> list["Character"]:
        if self._characters is None:
            self._characters = enumerate_characters(self)
        return self._characters

    # normal-form element arithmetic (torsion vector, phi exponent)

    def nf_identity(self):
        return ((0,) * self.rank, 0)

    def nf_generator(self, idx: int):
        if idx == self.rank:
            return ((0,) * self.rank, 1)
        t = [0] * self.rank
        t[idx] = 1
        return (tuple(t), 0)

    def _xi_power(self, e: int):
        # rank-2 only; phi has order l' and xi^{l'} is the identity on Tbar
        if self._xi_powers is None:
            lp = self.ell_prime
            table = [mat_id()]
            for _ in range(lp - 1):
                table.append(mat_mul(table[-1], self.xi, lp))
            self._xi_powers = table
        return self._xi_powers[e % self.ell_prime]

    def nf_mul(self, x, y):
        (t1, e1), (t2, e2) = x, y
        rank, lp = self.rank, self.ell_prime
        if rank == 0:
            return ((), (e1 + e2) % lp)
        if rank == 1:
            s = pow(self.xi[0][0], e1 % lp, lp)
            return (((t1[0] + s * t2[0]) % self.torsion_orders[0],), (e1 + e2) % lp)
        moved = mat_apply(self._xi_power(e1), t2, lp)
        t = tuple((a + b) % o for a, b, o in zip(t1, moved, self.torsion_orders))
        return (t, (e1 + e2) % lp)

    def nf_inv(self, x):
        t, e = x
        rank, lp = self.rank, self.ell_prime
        inv_e = (-e) % lp
        if rank == 0:
            return ((), inv_e)
        if rank == 1:
            s = pow(self.xi[0][0], inv_e, lp)
            return (((-s * t[0]) % self.torsion_orders[0],), inv_e)
        moved = mat_apply(self._xi_power(inv_e), t, lp)
        return (tuple((-a) % o for a, o in zip(moved, self.torsion_orders)), inv_e)

    def nf_elements(self):
        ranges = [range(o) for o in self.torsion_orders] + [range(self.ell_prime)]
        for tup in itertools.product(*ranges):
            yield (tup[:-1], tup[-1])

    def __repr__(self):
        return f"GbarGroup(ell={self.ell}, case={self.case.value}, order={self.order})"


class Character:
    """Z/l-character of a GbarGroup, stored by values on its generators.

    Construction validates the values against the group presentation, so an
    assignment that fails a relation (a nonzero value on mprime in the
    unipotent case, say) is rejected rather than silently mis-dispatched.
    """

    __slots__ = ("group", "values")

    def __init__(self, group: GbarGroup, values):
        self.group = group
        self.values = tuple(v % group.ell for v in values)
        if len(self.values) != len(group.gen_names):
            raise GroupMismatch("character values do not match the generator list")
        if not character_values_valid(group.presentation(), self.values):
            raise GroupMismatch(f"values {self.values} do not define a character")

    def __call__(self, gen_index: int) -> int:
        return self.values[gen_index]

    def on_phi(self) -> int:
        return self.values[-1]

    def torsion_values(self) -> tuple[int, ...]:
        return self.values[: self.group.rank]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def scaled(self, c: int) -> "Character":
        return Character(self.group, tuple(c * v for v in self.values))

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.group is other.group
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Character{self.values}"


def char_word_value(values, word: Word, ell: int) -> int:
    return sum(e * values[g] for g, e in word) % ell


def character_values_valid(pres: Presentation, values) -> bool:
    """True iff the value assignment respects every defining relation mod l."""
    ell = pres.ell
    return all(
        char_word_value(values, rel.lhs, ell) == char_word_value(values, rel.rhs, ell)
        for rel in pres.relations
    )


def enumerate_characters(g: GbarGroup) -> list[Character]:
    """All Z/l-characters in lexicographic order of their value tuples."""
    pres = g.presentation()
    out = []
    for values in itertools.product(range(g.ell), repeat=len(g.gen_names)):
        if character_values_valid(pres, values):
            out.append(Character(g, values))
    return out


def proportional(chi1: Character, chi2: Character) -> bool:
    """True iff the value vectors are proportional over Z/l (zero included)."""
    v, w = chi1.values, chi2.values
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if (v[i] * w[j] - v[j] * w[i]) % chi1.group.ell:
                return False
    return True


# ---------------------------------------------------------------------------
# building the group from a curve

def build_gbar(curve: ec.Curve, ell: int, seed: int = DEFAULT_SEED) -> GbarGroup:
    """Construct Gbar for the curve at the prime l, normalizing the basis.

    full_torsion: generators are the deterministic E[l'] basis itself.
    split_line:   the torsion part is E[l'] modulo the image of phi^{l'}-1,
                  cyclic of order l', generated by (the class of) a lift of
                  the canonical fixed vector; the action is the scalar
                  1 + l*alpha.
    unipotent_line: m is the canonically first point of exact order l' whose
                  mod-l image moves under phi, mprime = (phi-1)m, and the
                  action matrix has first column (1 + l*alpha, l*gamma) and
                  second column (1, 1); c = gamma for l = 3, else 0.
    no_fixed_points: the torsion part is trivial (phi^{l'}-1 is invertible).
    """
    if ell not in SUPPORTED_ELLS:
        raise UnsupportedLevel(f"ell must be one of {SUPPORTED_ELLS}")
    if curve.base.p == ell:
        raise UnsupportedLevel("ell equals the characteristic")
    lp = ell_prime(ell)
    q = curve.base.order
    rank_fixed = ec.rational_torsion_rank(curve, ell, seed=seed)
    if rank_fixed == 2:
        case = GaloisCase.FULL_TORSION
    elif rank_fixed == 0:
        case = GaloisCase.NO_FIXED_POINTS
    elif q % ell == 1:
        case = GaloisCase.UNIPOTENT_LINE
    else:
        case = GaloisCase.SPLIT_LINE

    if case is GaloisCase.NO_FIXED_POINTS:
        return GbarGroup(ell, case, (), (), constants=None, context={"q": q})

    basis = ec.torsion_basis(curve, lp, seed=seed)
    action = ec.frobenius_matrix(basis)
    A = action.entries

    if case is GaloisCase.FULL_TORSION:
        if any((A[i][j] - (1 if i == j else 0)) % ell for i in range(2) for j in range(2)):
            raise CaseMismatch("full torsion case but phi is not trivial mod l")
        ctx = {"q": q, "basis": basis, "action": action, "normalized_action": action}
        return GbarGroup(ell, case, (lp, lp), A, constants=None, context=ctx)

    if case is GaloisCase.UNIPOTENT_LINE:
        m_vec = _first_moved_vector(basis, A, ell, lp)
        mp_vec = mat_apply(mat_sub(A, mat_id(), lp), m_vec, lp)
        T = ((mp_vec[0], m_vec[0]), (mp_vec[1], m_vec[1]))
        An = mat_mul(mat_inv(T, lp), mat_mul(A, T, lp), lp)
        if An[0][1] != 1 % lp or An[1][1] != 1 % lp:
            raise CaseMismatch("unipotent normalization failed")
        alpha, rem_a = divmod((An[0][0] - 1) % lp, ell)
        gamma, rem_g = divmod(An[1][0] % lp, ell)
        if rem_a or rem_g:
            raise CaseMismatch("unipotent action entries not congruent to identity mod l")
        constants = {"alpha": alpha, "beta": 0, "gamma": gamma, "delta": 0,
                     "c": gamma if ell == 3 else 0}
        ctx = {
            "q": q,
            "basis": basis,
            "action": action,
            "normalized_action": ec.TorsionAction(lp, An),
            "gen_vectors": {"mprime": mp_vec, "m": m_vec},
        }
        return GbarGroup(ell, case, (lp, lp), An, constants=constants, context=ctx)

    # split line
    eps = q % ell
    v1 = _first_eigenvector(A, 1, ell)
    v2 = _first_eigenvector(A, eps, ell)
    if v1 is None or v2 is None:
        raise CaseMismatch("split case but eigenvectors not found mod l")
    S = ((v1[0], v2[0]), (v1[1], v2[1]))
    An = mat_mul(mat_inv(S, lp), mat_mul(A, S, lp), lp)
    if ell == 3:
        ok = (
            An[0][0] % 3 == 1
            and An[0][1] % 3 == 0
            and An[1][0] % 3 == 0
            and An[1][1] % 3 == 2
        )
        if not ok:
            raise CaseMismatch("split normalization failed at level 9")
        alpha = (An[0][0] - 1) // 3
        constants = {"alpha": alpha, "beta": An[0][1] // 3, "gamma": An[1][0] // 3,
                     "delta": (An[1][1] - 2) // 3, "c": None}
        scalar = (1 + 3 * alpha) % 9
    else:
        if An != ((1, 0), (0, eps)):
            raise CaseMismatch("split normalization failed")
        alpha = 0
        constants = {"alpha": 0, "beta": None, "gamma": None, "delta": None, "c": None}
        scalar = 1
    ctx = {
        "q": q,
        "basis": basis,
        "action": action,
        "normalized_action": ec.TorsionAction(lp, An),
        "gen_vectors": {"m": v1},
    }
    return GbarGroup(ell, case, (lp,), ((scalar,),), constants=constants, context=ctx)


def _first_moved_vector(basis: ec.TorsionBasis, A, ell: int, lp: int):
    """First point of exact order l' (in canonical point order) not fixed mod l."""
    pts = []
    row = basis.P.ctx.infinity()
    for i in range(lp):
        cur = row
        for j in range(lp):
            pts.append((cur.key(), (i, j)))
            cur = ec.point_add(cur, basis.Q)
        row = ec.point_add(row, basis.P)
    Abar = tuple(tuple(v % ell for v in r) for r in A)
    for _, vec in sorted(pts):
        order_ok = any(v % ell for v in vec) if lp == ell else any(v % 3 for v in vec)
        if not order_ok:
            continue
        vbar = (vec[0] % ell, vec[1] % ell)
        if mat_apply(Abar, vbar, ell) != vbar:
            return vec
    raise CaseMismatch("no moved torsion vector found")


def _first_eigenvector(A, lam, ell):
    for i, j in itertools.product(range(ell), repeat=2):
        if (i, j) == (0, 0):
            continue
        if mat_apply(A, (i, j), ell) == ((lam * i) % ell, (lam * j) % ell):
            return (i, j)
    return None


# ---------------------------------------------------------------------------
# abstract Galois data (l = 3, level 9)

class AbstractGaloisData:
    """Galois-side input for the abstract checkers: generator matrices of the
    image in GL2(Z/9) (each congruent to the identity mod 3), the character
    on those generators, the character's restriction to a 9-torsion basis,
    and two field-level flags the matrices cannot see.

    ``closure`` is the subgroup generated inside GL2(Z/9) x Z/3, pairing
    each matrix with the character value of a group element realizing it.
    """

    __slots__ = (
        "generators",
        "chi_on_generators",
        "chi_on_torsion",
        "has_ninth_root",
        "unique_cubic_extension",
        "closure",
    )

    def __init__(self, generators, chi_on_generators, chi_on_torsion,
                 has_ninth_root, unique_cubic_extension):
        self.generators = generators
        self.chi_on_generators = chi_on_generators
        self.chi_on_torsion = chi_on_torsion
        self.has_ninth_root = has_ninth_root
        self.unique_cubic_extension = unique_cubic_extension
        self.closure = _augmented_closure(generators, chi_on_generators)
        dets = {mat_det(g, 9) for g, _ in self.closure}
        if self.has_ninth_root and dets != {1}:
            raise InvalidData(
                "has_ninth_root is true but some group element moves the ninth roots "
                "(a determinant differs from 1 mod 9)"
            )
        if not self.has_ninth_root and dets == {1}:
            raise InvalidData(
                "has_ninth_root is false but every determinant is 1 mod 9, so the "
                "group fixes the ninth roots"
            )

    def kernel_matrices(self):
        """Action matrices realized by elements on which the character vanishes."""
        return {g for g, c in self.closure if c == 0}

    def all_scalar(self) -> bool:
        return all(g[0][1] == 0 and g[1][0] == 0 and g[0][0] == g[1][1] for g, _ in self.closure)


def _augmented_closure(generators, chi_values):
    gens = [(g, c % 3) for g, c in zip(generators, chi_values)]
    seen = {(mat_id(), 0)}
    frontier = [(mat_id(), 0)]
    while frontier:
        cur_m, cur_c = frontier.pop()
        for g, c in gens:
            nxt = (mat_mul(cur_m, g, 9), (cur_c + c) % 3)
            if nxt not in seen:
                if len(seen) >= 3**5:
                    raise InvalidData("generated group is larger than the mod-3 congruence kernel allows")
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def load_abstract(data: dict) -> AbstractGaloisData:
    """Validate and close the abstract-Galois JSON payload."""
    if not isinstance(data, dict):
        raise InvalidData("abstract Galois data must be a JSON object")
    missing = {
        "generators",
        "chi_on_generators",
        "chi_on_torsion",
        "has_ninth_root",
        "unique_cubic_extension",
    } - set(data)
    if missing:
        raise InvalidData(f"missing fields: {sorted(missing)}")
    raw_gens = data["generators"]
    if not isinstance(raw_gens, list):
        raise InvalidData("generators must be a list of 2x2 integer matrices")
    gens = []
    for idx, g in enumerate(raw_gens):
        try:
            mat = tuple(tuple(int(v) % 9 for v in row) for row in g)
        except (TypeError, ValueError) as exc:
            raise InvalidData(f"generators[{idx}] is not a 2x2 integer matrix") from exc
        if len(mat) != 2 or any(len(r) != 2 for r in mat):
            raise InvalidData(f"generators[{idx}] is not a 2x2 integer matrix")
        if any((mat[i][j] - (1 if i == j else 0)) % 3 for i in range(2) for j in range(2)):
            raise NotCongruentIdentity(f"generators[{idx}] is not congruent to the identity mod 3")
        if mat_det(mat, 9) % 3 == 0:  # unreachable once = I mod 3 holds; kept as a guard
            raise NotInvertible(f"generators[{idx}] is not invertible mod 9")
        gens.append(mat)
    chis = data["chi_on_generators"]
    if not isinstance(chis, list) or len(chis) != len(gens):
        raise InvalidData("chi_on_generators must parallel the generator list")
    chis = tuple(int(v) % 3 for v in chis)
    tor = data["chi_on_torsion"]
    if not isinstance(tor, list) or len(tor) != 2:
        raise InvalidData("chi_on_torsion must be a pair of residues mod 3")
    tor = (int(tor[0]) % 3, int(tor[1]) % 3)
    flags = (data["has_ninth_root"], data["unique_cubic_extension"])
    if not all(isinstance(f, bool) for f in flags):
        raise InvalidData("field flags must be booleans")
    return AbstractGaloisData(tuple(gens), chis, tor, flags[0], flags[1])
