"""The verdict engine across all four Frobenius cases.

Builds the finite quotient group for one curve per case, enumerates its
characters, and shows representative triple verdicts, ending with the
unipotent construction that is nonempty but never contains zero.
"""

from ellmassey import ec, ff, galois, massey

CURVES = [
    ("full torsion, l=3", 7, 0, 2, 3),
    ("split line,   l=5", 7, 1, 1, 5),
    ("unipotent,    l=5", 11, 1, 7, 5),
    ("no fixed pts, l=3", 5, 1, 0, 3),
]

for label, p, a, b, ell in CURVES:
    curve = ec.curve_new(ff.make_field(p, 1), a, b)
    g = galois.build_gbar(curve, ell)
    chars = g.characters()
    print(f"{label}: y^2 = x^3 + {a}x + {b} over GF({p})")
    print(f"  case = {g.case.value}, |Gbar| = {g.order}, {len(chars)} characters,"
          f" constants = {g.constants}")
    statuses = {}
    for c1 in chars:
        for c2 in chars:
            for c3 in chars:
                s = massey.triple_verdict(c1, c2, c3, g).status.value
                statuses[s] = statuses.get(s, 0) + 1
    print("  verdict counts over all triples:", dict(sorted(statuses.items())), "\n")

# The headline construction: x1 = x3 = 0, phi1 = phi3 = 1 against the
# character sending m to 1; condition (2) picks up the residue -2 phi1 phi3.
curve = ec.curve_new(ff.make_field(11, 1), 1, 7)
g = galois.build_gbar(curve, 5)
cv = {chi.values: chi for chi in g.characters()}
verdict = massey.triple_verdict(cv[(0, 0, 1)], cv[(0, 1, 0)], cv[(0, 0, 1)], g)
print("construction triple:", verdict.status.value, "-", verdict.reason)
print("witness residues:", verdict.witness)
