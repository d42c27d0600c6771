"""Recompute the numeric constants of the analytic argument at 50 digits.

Each line compares a value computed from its defining expression with the
printed constant it is supposed to beat.
"""

from phieq.bounds import SECTIONS, chain_audit, f_of_p, sd_empirical, sd_upper_bound

for section in SECTIONS:
    print(f"-- {section}")
    for r in chain_audit(section):
        print(f"  {'PASS' if r.passed else 'FAIL'} {r.bound_id:20} {r.computed[:14]:>14} {r.relation:2} {r.claimed:<8} margin {r.margin}")

print("\nf(p) decreases:", [f"{float(f_of_p(p)):.4f}" for p in (79, 101, 173, 541, 1223)])

# the rank-d prime sum against its upper bound, for the base pair (3, 1)
for d in (31, 46, 110, 158, 346):
    print(f"d={d}: empirical S_d = {float(sd_empirical(3, 1, d, 10**5)):.3e}, bound {float(sd_upper_bound(d, 3)):.3e}")
