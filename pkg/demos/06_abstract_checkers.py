"""The abstract checkers: Galois data in, existence verdicts out.

These run on matrix-level Galois data (generators of the image in
GL2(Z/9), all congruent to the identity mod 3) plus two field-level flags,
with no curve in sight.
"""

from ellmassey.galois import load_abstract
from ellmassey.massey import thm11_check, thm52_check

scalar_finite_field = {
    "generators": [[[4, 0], [0, 4]]],
    "chi_on_generators": [0],
    "chi_on_torsion": [0, 1],
    "has_ninth_root": False,
    "unique_cubic_extension": True,   # the finite-field situation
}
d = load_abstract(scalar_finite_field)
print("scalar action, unique cubic extension ->", thm11_check(d))

free_cubics = dict(scalar_finite_field, unique_cubic_extension=False)
print("scalar action, many cubic extensions  ->", thm11_check(load_abstract(free_cubics)))

non_scalar = {
    "generators": [[[1, 3], [0, 1]], [[4, 0], [0, 4]]],
    "chi_on_generators": [0, 0],
    "chi_on_torsion": [1, 0],
    "has_ninth_root": False,
    "unique_cubic_extension": False,
}
d = load_abstract(non_scalar)
print("non-scalar action                      ->", thm11_check(d))

verdict = thm52_check(d)
print("\nsingle-character check on the non-scalar data:")
print("  status :", verdict.status.value)
print("  reason :", verdict.reason)
print("  witness:", verdict.witness)
