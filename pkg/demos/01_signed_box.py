"""Sweep phi(|x^m - y^m|) = |x^n - y^n| over a small signed box.

Every nontrivial solution found should sit in the one-parameter family
(+-(2^(t-1) + 1), -+(2^(t-1) - 1), 2, 1): the left side is 2^(t+1), the
right side is 2^t.
"""

from phieq.arith import euler_phi
from phieq.model import EquationId, SearchBox
from phieq.search import sweep

box = SearchBox(x_max=10, m_max=7, exponent_order="n<m")
report = sweep(EquationId.E11, box)

print(f"checked {report.checked} of {report.cardinality} tuples, verdict {report.verdict.value}")
for rec in report.nontrivial:
    c = rec.candidate
    N, R = abs(c.x**c.m - c.y**c.m), abs(c.x**c.n - c.y**c.n)
    print(f"  ({c.x:3}, {c.y:3}, {c.m}, {c.n})  phi({N}) = {euler_phi(N)} = {R}   [{rec.family.value}]")

# the same family keeps going outside the box
for t in range(5, 9):
    a, b = 2 ** (t - 1) + 1, 2 ** (t - 1) - 1
    print(f"t={t}: phi({a}^2 - {b}^2) = phi({a * a - b * b}) = {euler_phi(a * a - b * b)} = {a + b}")
