"""The finite computer checks: prime-power divisibility and Wieferich scans.

For odd coprime y1 < x1 <= 73 and primes 3 <= q < 173 not dividing x1 - y1,
how often does q^k divide x1^(q-1) - y1^(q-1)?  Everything is computed
modulo a small power of q.
"""

import time

from phieq.scans import hits_per_pair, identity_catalog, power_divisibility_scan, wieferich_scan

for k in (2, 3, 4, 5, 6):
    t0 = time.perf_counter()
    hits = power_divisibility_scan(73, 173, k)
    print(f"k={k}: {len(hits):4} hits  ({time.perf_counter() - t0:.2f}s)")

per_pair = hits_per_pair(power_divisibility_scan(73, 173, 3, x1_min=10))
worst = max(len(v) for v in per_pair.values())
print("most primes for one pair at k=3:", worst, [(p, qs) for p, qs in per_pair.items() if len(qs) == worst])

print("q^2 | 3^(q-1) - 1 for q < 173:", wieferich_scan(3, 1, 173))
print("q^2 | 2^(q-1) - 1 for q < 4000:", wieferich_scan(2, 1, 4000))

for item in identity_catalog():
    print(f"  {'ok ' if item.passed else 'BAD'} {item.name}")
