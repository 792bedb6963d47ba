"""Independent lifting oracle: exhaustive homomorphism search into U3 and U4.

A triple Massey product is nonempty iff the three characters lift to a
homomorphism into U4(Z/l) modulo its center, and contains zero iff they lift
to U4(Z/l) itself; cup products correspond to U3(Z/l) lifts. The oracle
decides these by searching generator images with the superdiagonal pinned to
the character values, checking every defining relation of the group with
generic matrix arithmetic.

Search shape: generators are assigned in the presentation's fixed order,
candidate free entries (u, w) per generator in lexicographic order, and each
relation is checked as soon as all its generators have images. The (1,4)
entry is central, so its contribution to a relation residual is linear with
coefficients equal to the relation's signed exponent sums; the search
therefore enumerates the non-central entries and finishes with an exact
linear solve over Z/l for the central ones (equivalent to scanning all l^3
candidates per generator, and cross-checked in tests against a literal
brute force). First witness found wins, so witnesses are reproducible.
"""

from __future__ import annotations

import itertools

from .errors import GroupMismatch
from .galois import Character, GbarGroup, Presentation
from .unitri import (
    U3_ID,
    U4_ID,
    u3_inv_raw,
    u3_mul_raw,
    u3_pow_raw,
    u4_inv_raw,
    u4_mul_raw,
    u4_pow_raw,
)


# ---------------------------------------------------------------------------
# words and relations

def _eval_word_u4(l, images, word):
    acc = U4_ID
    for g, e in word:
        acc = u4_mul_raw(l, acc, u4_pow_raw(l, images[g], e))
    return acc


def _eval_word_u3(l, images, word):
    acc = U3_ID
    for g, e in word:
        acc = u3_mul_raw(l, acc, u3_pow_raw(l, images[g], e))
    return acc


def _residual_u4(l, images, rel):
    lhs = _eval_word_u4(l, images, rel.lhs)
    rhs = _eval_word_u4(l, images, rel.rhs)
    return u4_mul_raw(l, lhs, u4_inv_raw(l, rhs))


def _relation_meta(pres: Presentation):
    """Per relation: generator support and signed exponent sums mod l."""
    n = len(pres.gen_names)
    meta = []
    for rel in pres.relations:
        support = set()
        sums = [0] * n
        for g, e in rel.lhs:
            support.add(g)
            sums[g] += e
        for g, e in rel.rhs:
            support.add(g)
            sums[g] -= e
        meta.append((rel, frozenset(support), tuple(s % pres.ell for s in sums)))
    return meta


class _SearchPlan:
    """Precomputed search layout for one presentation.

    ``gates[d]`` lists the relations whose full generator support is assigned
    once depth d of the search order is reached; ``exponents[g]`` collects
    every power of generator g's image any relation evaluation will need, so
    each candidate image is raised to each exponent exactly once.
    """

    __slots__ = ("pres", "meta", "gates", "center_gates", "exponents", "central_rows", "_candidates")

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.meta = _relation_meta(pres)
        n = len(pres.gen_names)
        self.gates = self._gate(pres.search_order)
        self.center_gates = self._gate(pres.center_search_order)
        self.exponents = [{1} for _ in range(n)]
        for rel in pres.relations:
            for g, e in rel.lhs + rel.rhs:
                self.exponents[g].add(e)
        self.central_rows = [(rel, sums) for rel, _, sums in self.meta if any(sums)]
        self._candidates: dict = {}

    def _gate(self, order):
        gates: list[list] = [[] for _ in order]
        for rel, support, sums in self.meta:
            depth = max(order.index(g) for g in support) if support else 0
            gates[depth].append((rel, sums))
        return gates

    def candidate_list(self, gen: int, superdiag):
        """All (u, w) candidates for one generator slot, in lexicographic
        order, each with every power any relation needs; memoized across
        triples since it depends only on the pinned superdiagonal."""
        key = (gen, superdiag)
        cached = self._candidates.get(key)
        if cached is None:
            l = self.pres.ell
            s1, s2, s3 = superdiag
            exps = self.exponents[gen]
            cached = [
                {e: u4_pow_raw(l, (s1, s2, s3, u, 0, w), e) for e in exps}
                for u in range(l)
                for w in range(l)
            ]
            self._candidates[key] = cached
        return cached


_PLAN_CACHE: dict[Presentation, _SearchPlan] = {}


def _plan(pres: Presentation) -> _SearchPlan:
    plan = _PLAN_CACHE.get(pres)
    if plan is None:
        plan = _SearchPlan(pres)
        _PLAN_CACHE[pres] = plan
    return plan


def _eval_word_cached(l, powers, word):
    acc = U4_ID
    for g, e in word:
        acc = u4_mul_raw(l, acc, powers[g][e])
    return acc


def _residual_cached(l, powers, rel):
    lhs = _eval_word_cached(l, powers, rel.lhs)
    if not rel.rhs:
        return lhs
    rhs = _eval_word_cached(l, powers, rel.rhs)
    return u4_mul_raw(l, lhs, u4_inv_raw(l, rhs))


def _solve_linear_mod(eqs, n_unknowns: int, l: int):
    """Lex-least solution of a small linear system over Z/l, or None."""
    rows = [list(coeffs) + [rhs % l] for coeffs, rhs in eqs]
    piv_of_col = {}
    r = 0
    for col in range(n_unknowns):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] % l), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, l)
        rows[r] = [v * inv % l for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % l:
                f = rows[i][col]
                rows[i] = [(v - f * w) % l for v, w in zip(rows[i], rows[r])]
        piv_of_col[col] = r
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] % l:
            return None
    solution = [0] * n_unknowns
    for col, row in piv_of_col.items():
        solution[col] = rows[row][-1] % l
    return solution


# ---------------------------------------------------------------------------
# U4 search

def find_full_lift(pres: Presentation, superdiags):
    """First homomorphism into U4(Z/l) with the given superdiagonals, or None.

    ``superdiags[i]`` is the pinned (a1, a2, a3) triple for generator i. The
    returned witness maps generator names to complete (a1,a2,a3,u,v,w) tuples
    and is re-verified against every relation with generic multiplication.
    """
    assignment = _search_u4(pres, superdiags, full=True)
    if assignment is None:
        return None
    witness = {pres.gen_names[i]: assignment[i] for i in range(len(assignment))}
    assert lift_is_sound(pres, superdiags, witness)
    return witness


def center_lift_exists(pres: Presentation, superdiags) -> bool:
    """True iff a homomorphism into U4/Z(U4) with these superdiagonals exists."""
    return _search_u4(pres, superdiags, full=False) is not None


def _search_u4(pres: Presentation, superdiags, full: bool):
    plan = _plan(pres)
    l = pres.ell
    n = len(pres.gen_names)
    order = pres.search_order if full else pres.center_search_order
    gates = plan.gates if full else plan.center_gates
    candidates = [plan.candidate_list(g, tuple(superdiags[g])) for g in range(n)]
    powers: list = [None] * n

    def descend(depth: int):
        if depth == n:
            images = [powers[g][1] for g in range(n)]
            if not full:
                return tuple(images)
            eqs = [
                (sums, -_residual_cached(l, powers, rel)[4])
                for rel, sums in plan.central_rows
            ]
            if not eqs:
                return tuple(images)
            sol = _solve_linear_mod(eqs, n, l)
            if sol is None:
                return None
            final = []
            for i in range(n):
                a1, a2, a3, u, _, w = images[i]
                final.append((a1, a2, a3, u, sol[i], w))
            return tuple(final)

        gen = order[depth]
        for cand in candidates[gen]:
            powers[gen] = cand
            ok = True
            for rel, sums in gates[depth]:
                res = _residual_cached(l, powers, rel)
                if res[0] or res[1] or res[2] or res[3] or res[5]:
                    ok = False
                    break
                if full and not any(sums) and res[4]:
                    # no central freedom can absorb this relation
                    ok = False
                    break
            if ok:
                found = descend(depth + 1)
                if found is not None:
                    return found
        powers[gen] = None
        return None

    return descend(0)


def lift_is_sound(pres: Presentation, superdiags, witness) -> bool:
    """Generic verification: superdiagonals match and all relations hold exactly."""
    l = pres.ell
    images = [witness[name] for name in pres.gen_names]
    for img, pinned in zip(images, superdiags):
        if img[:3] != tuple(v % l for v in pinned):
            return False
    return all(_residual_u4(l, images, rel) == U4_ID for rel, _, _ in _relation_meta(pres))


def find_full_lift_bruteforce(pres: Presentation, superdiags):
    """Literal scan over all (u, v, w) per generator; for cross-validation."""
    l = pres.ell
    n = len(pres.gen_names)
    rels = pres.relations
    space = [
        [(s[0], s[1], s[2], u, v, w) for u in range(l) for v in range(l) for w in range(l)]
        for s in superdiags
    ]
    for combo in itertools.product(*space):
        images = list(combo)
        if all(_residual_u4(l, images, rel) == U4_ID for rel in rels):
            return {pres.gen_names[i]: images[i] for i in range(n)}
    return None


# ---------------------------------------------------------------------------
# U3 search

def cup_lift_exists(pres: Presentation, diag1, diag2) -> bool:
    """True iff some corner assignment makes the U3-valued map a homomorphism."""
    l = pres.ell
    n = len(pres.gen_names)
    order = pres.search_order
    gates: list[list] = [[] for _ in range(n)]
    for rel, support, _ in _relation_meta(pres):
        depth = max(order.index(g) for g in support) if support else 0
        gates[depth].append(rel)
    images = [None] * n

    def descend(depth: int) -> bool:
        if depth == n:
            return True
        gen = order[depth]
        for corner in range(l):
            images[gen] = (diag1[gen], diag2[gen], corner)
            ok = True
            for rel in gates[depth]:
                lhs = _eval_word_u3(l, images, rel.lhs)
                rhs = _eval_word_u3(l, images, rel.rhs)
                if u3_mul_raw(l, lhs, u3_inv_raw(l, rhs)) != U3_ID:
                    ok = False
                    break
            if ok and descend(depth + 1):
                return True
        images[gen] = None
        return False

    return descend(0)


# ---------------------------------------------------------------------------
# character-level API

def _check_group(g: GbarGroup, *chars: Character):
    for chi in chars:
        if chi.group is not g:
            raise GroupMismatch("character belongs to a different group")


def _superdiag3(g: GbarGroup, chi1, chi2, chi3):
    n = len(g.gen_names)
    return [(chi1.values[i], chi2.values[i], chi3.values[i]) for i in range(n)]


def oracle_cup(chi1: Character, chi2: Character, g: GbarGroup) -> bool:
    """Ground truth for cup-product vanishing: a U3 lift exists."""
    _check_group(g, chi1, chi2)
    return cup_lift_exists(g.presentation(), chi1.values, chi2.values)


def oracle_nonempty(chi1: Character, chi2: Character, chi3: Character, g: GbarGroup) -> bool:
    """Ground truth for nonemptiness: a lift into U4 modulo its center exists."""
    _check_group(g, chi1, chi2, chi3)
    return center_lift_exists(g.presentation(), _superdiag3(g, chi1, chi2, chi3))


def oracle_contains_zero(chi1: Character, chi2: Character, chi3: Character, g: GbarGroup) -> bool:
    """Ground truth for contains-zero: a full U4 lift exists."""
    return oracle_lift_witness(chi1, chi2, chi3, g) is not None


def oracle_lift_witness(chi1: Character, chi2: Character, chi3: Character, g: GbarGroup):
    """The lexicographically first full U4 lift, or None."""
    _check_group(g, chi1, chi2, chi3)
    return find_full_lift(g.presentation(), _superdiag3(g, chi1, chi2, chi3))
