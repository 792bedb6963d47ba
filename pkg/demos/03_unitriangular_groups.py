"""Arithmetic in U4(Z/l): closed-form powers, commutators, the subgroup H.

The closed formulas are checked against literal matrix products here at
small scale; the test suite does the exhaustive sweeps.
"""

from ellmassey.unitri import (
    U4Matrix,
    h_elements,
    u4_commutator_closed,
    u4_pow_closed,
)

l = 3
M = U4Matrix(l, 1, 1, 1, 0, 0, 0)
print("M =", M.matrix())
print("M^3 (generic)    :", (M * M * M).entries)
print("M^3 (closed form):", u4_pow_closed(M, 3).entries)
print("only the corner entry a1*a2*a3 = 1 survives; M has order 9\n")

# For l > 3 every element has order l.
M5 = U4Matrix(5, 2, 3, 1, 4, 0, 2)
print("over Z/5: M^5 =", u4_pow_closed(M5, 5).entries, "(identity)")

N = U4Matrix(l, 0, 1, 0, 0, 0, 0)
K = U4Matrix(l, 1, 0, 0, 0, 0, 0)
generic = K * N * K.inverse() * N.inverse()
print("\n[K, N] generic:", generic.entries, " closed:", u4_commutator_closed(K, N).entries)

# H consists of the matrices with a constant superdiagonal; its center is
# the a = 0, u = w slice and its derived subgroup the pure corner axis.
els = list(h_elements())
center = [m for m in els if all(m * n == n * m for n in els)]
print("\n|H| =", len(els), " |Z(H)| =", len(center))
print("Z(H) members:", sorted((m.a, m.u, m.v, m.w) for m in center))
orders = {m.order() for m in els}
print("element orders in H:", sorted(orders))
print("order-9 elements are exactly those with a != 0:",
      all((m.order() == 9) == (m.a != 0) for m in els))
