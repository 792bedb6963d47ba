"""Shared fixture curves, one per Galois case and prime.

Each entry was located by the same scan cmd_search performs (ascending p,
then lexicographic (a, b)) and validated against the rational-torsion-rank
classifier; tests re-derive the case from scratch, so a regression in either
side shows up as a mismatch here.
"""

from functools import lru_cache

from ellmassey import ec, ff, galois

# (ell, case) -> (p, a, b)
CURVES = {
    (3, "full_torsion"): (7, 0, 2),
    (3, "full_torsion_2"): (13, 0, 3),
    (3, "full_torsion_3"): (19, 0, 5),
    (3, "split_line"): (5, 0, 1),
    (3, "split_line_a0"): (5, 1, 1),  # trivial action on the cyclic Z/9 part
    (5, "split_line"): (7, 1, 1),
    (7, "split_line"): (23, 1, 1),  # p = 2 mod 7 with a rational 7-torsion point
    (3, "unipotent_line"): (7, 0, 1),
    (5, "unipotent_line"): (11, 1, 7),
    (7, "unipotent_line"): (29, 1, 7),
    (3, "no_fixed_points"): (5, 1, 0),
    (5, "no_fixed_points"): (7, 0, 1),
    (7, "no_fixed_points"): (5, 0, 1),
    (5, "full_torsion"): (31, 0, 11),  # E[5] rational: the abelian quotient
}


@lru_cache(maxsize=None)
def curve(ell: int, case: str) -> ec.Curve:
    p, a, b = CURVES[(ell, case)]
    return ec.curve_new(ff.make_field(p, 1), a, b)


@lru_cache(maxsize=None)
def group(ell: int, case: str) -> galois.GbarGroup:
    return galois.build_gbar(curve(ell, case), ell)


def full_torsion_groups():
    return [group(3, c) for c in ("full_torsion", "full_torsion_2", "full_torsion_3")]
