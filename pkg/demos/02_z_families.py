"""Equations with a free multiplier z.

Once x, y, m, n are fixed the equation reads phi(z A) = z B for two Lucas
quotients A and B, and the z-scan factors A once.  For (2, 1, m=3, n=1),
A = 3 and B = 1, so the question is phi(3z) = z, answered by z = 2^b 3^s.
"""

from phieq.equations import known_families, quotient_pair
from phieq.model import EquationId, SearchBox
from phieq.search import sweep, z_solve

E = EquationId

A, B = quotient_pair(E.E14, 2, 1, 3, 1)
print(f"(2, 1, 3, 1): A = {A}, B = {B}; phi(3z) = z for z <= 60:", z_solve(E.E14, 2, 1, 3, 1, range(1, 61), 10**6))

A, B = quotient_pair(E.E16, 2, 1, 5, 4)
print(f"(2, 1, 5, 4): A = {A}, B = {B}; phi(11z) = 5z for z <= 60:", z_solve(E.E16, 2, 1, 5, 4, range(1, 61), 10**6))

for eq, box in [
    (E.E14, SearchBox(x_max=6, m_max=7, z_max=50)),
    (E.E15, SearchBox(x_max=10, m_max=6, z_max=50)),
    (E.E16, SearchBox(x_max=4, m_max=7, z_max=50, nu2="distinct")),
]:
    r = sweep(eq, box)
    print(f"{eq.value}: {len(r.nontrivial)} nontrivial, {len(known_families(eq, box))} family members, verdict {r.verdict.value}")

# The E16 family list assumes x and y have different 2-adic valuations.
# Dropping that assumption lets in solutions with x, y both odd.
r = sweep(E.E16, SearchBox(x_max=4, m_max=7, z_max=50))
print("E16 without the 2-adic filter, first extras:", [c.as_tuple() for c in r.surplus[:4]])
x, y, z, m, n = r.surplus[0].as_tuple()
A, B = quotient_pair(E.E16, x, y, m, n)
print(f"  e.g. {(x, y, z, m, n)}: phi({z} * {A}) = {z * B}")

# The no-solution box: 1 <= z <= x + y, z != 2.
r = sweep(E.E16, SearchBox(x_max=12, m_max=9, z_rule="x+y", z_exclusions=frozenset({2})))
print(f"E16 with z <= x + y, z != 2: {len(r.nontrivial)} nontrivial in {r.cardinality} tuples, verdict {r.verdict.value}")
