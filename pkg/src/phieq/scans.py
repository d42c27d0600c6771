"""Finite computer checks: prime-power divisibility scans and fixed identities.

The scans ask, for odd coprime pairs x1 > y1 and primes q, whether
q^k | x1^(q-1) - y1^(q-1).  They work modulo q^k so the exponent never
produces big integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import divisors, factor, nu, phi_sieve, primes_up_to, tau
from .lucas import rank_of_apparition


@dataclass(frozen=True, order=True)
class ScanHit:
    x1: int
    y1: int
    q: int
    exponent_reached: int  # nu_q(x1^(q-1) - y1^(q-1)), capped at the scan depth

    def __post_init__(self):
        if not (self.x1 > self.y1 >= 1 and self.x1 % 2 and self.y1 % 2):
            raise ValueError(f"need odd x1 > y1 >= 1: {self}")


def odd_coprime_pairs(x1_min: int, x1_max: int) -> list[tuple[int, int]]:
    return [
        (x1, y1)
        for x1 in range(max(3, x1_min), x1_max + 1)
        if x1 % 2
        for y1 in range(1, x1, 2)
        if math.gcd(x1, y1) == 1
    ]


def _valuation_mod(a: int, b: int, q: int, e: int, depth: int) -> int:
    """nu_q(a^e - b^e), capped at depth, computed mod q^depth."""
    mod = q**depth
    r = (pow(a, e, mod) - pow(b, e, mod)) % mod
    if r == 0:
        return depth
    v = 0
    while r % q == 0:
        r //= q
        v += 1
    return v


def power_divisibility_scan(x1_max: int = 73, q_max: int = 173, k: int = 3, x1_min: int = 1) -> list[ScanHit]:
    """All (x1, y1, q) with odd coprime y1 < x1 in [x1_min, x1_max], odd primes
    3 <= q < q_max, q not dividing x1 - y1 or x1*y1, and q^k | x1^(q-1) - y1^(q-1).

    >>> power_divisibility_scan(9, 173, 3)
    []
    """
    if x1_max < 3 or q_max < 3 or k < 1:
        raise ValueError("need x1_max >= 3, q_max >= 3, k >= 1")
    primes = [int(q) for q in primes_up_to(q_max - 1) if q >= 3]
    depth = k + 2
    hits = []
    for x1, y1 in odd_coprime_pairs(x1_min, x1_max):
        for q in primes:
            if (x1 - y1) % q == 0 or x1 % q == 0 or y1 % q == 0:
                continue
            v = _valuation_mod(x1, y1, q, q - 1, depth)
            if v >= k:
                hits.append(ScanHit(x1, y1, q, v))
    return hits


def power_divisibility_scan_full(x1: int, y1: int, q: int, k: int) -> bool:
    """Reference: the same test with full-size integers."""
    return (x1 ** (q - 1) - y1 ** (q - 1)) % q**k == 0


def hits_per_pair(hits: list[ScanHit]) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = {}
    for h in hits:
        out.setdefault((h.x1, h.y1), []).append(h.q)
    return {k: sorted(set(v)) for k, v in sorted(out.items())}


def wieferich_scan(base_x: int = 3, base_y: int = 1, q_max: int = 173) -> list[int]:
    """Odd primes q < q_max, coprime to both bases, with q^2 | base_x^(q-1) - base_y^(q-1).

    >>> wieferich_scan(3, 1, 173)
    [11]
    """
    if q_max < 3:
        raise ValueError("q_max must be at least 3")
    out = []
    for q in primes_up_to(q_max - 1):
        q = int(q)
        if q < 3 or base_x % q == 0 or base_y % q == 0:
            continue
        if (pow(base_x, q - 1, q * q) - pow(base_y, q - 1, q * q)) % (q * q) == 0:
            out.append(q)
    return out


# ----------------------------------------------------------- identities

def phi_multiple_solutions(k: int, limit: int) -> list[int]:
    """All z <= limit with phi(k z) = z, by sieve."""
    ph = phi_sieve(k * limit)
    return [z for z in range(1, limit + 1) if int(ph[k * z]) == z]


def _closed_form_3(limit: int) -> list[int]:
    return sorted(2**b * 3**s for b in range(1, limit.bit_length() + 1) for s in range(0, 40) if 2**b * 3**s <= limit)


def _closed_form_2(limit: int) -> list[int]:
    return [2**s for s in range(limit.bit_length()) if 2**s <= limit]


@dataclass(frozen=True)
class CatalogItem:
    name: str
    passed: bool
    detail: str


def identity_catalog(limit: int = 10_000) -> list[CatalogItem]:
    items = []

    def item(name, got, want):
        items.append(CatalogItem(name, got == want, f"got {got!r}, expected {want!r}"))

    item("3^11+1 factorization", factor(3**11 + 1), {2: 2, 67: 1, 661: 1})
    item("3^5-1 factorization", factor(3**5 - 1), {2: 1, 11: 2})
    item("rank of 67 for (3,1)", rank_of_apparition(3, 1, 67), 22)
    item("rank of 661 for (3,1)", rank_of_apparition(3, 1, 661), 22)
    rank22 = sorted(p for p in factor(3**11 + 1) if p > 2 and rank_of_apparition(3, 1, p) == 22)
    item("primes of 3^11+1 with rank 22", rank22, [67, 661])
    item(f"phi(3z)=z for z<={limit}", phi_multiple_solutions(3, limit), _closed_form_3(limit))
    item(f"phi(2z)=z for z<={limit}", phi_multiple_solutions(2, limit), _closed_form_2(limit))
    return items


# ------------------------------------------------------ building blocks

def divisibility_exponent(q: int, m: int) -> int:
    """nu_q(m) tau(m) / 2 - 1; always an integer (tau is odd only for squares)."""
    return nu(q, m) * tau(m) // 2 - 1


def prime_power_divisibility_probe(x1: int, y1: int, q: int, m: int) -> bool:
    """Raw truth of q^(nu_q(m) tau(m)/2 - 1) | x1^(q-1) - y1^(q-1).

    This is only claimed for exponents coming from a hypothetical solution,
    so on arbitrary inputs it is a probe, not an assertion.
    """
    if math.gcd(x1, y1) != 1 or m % q:
        raise ValueError("need coprime x1, y1 and q | m")
    e = divisibility_exponent(q, m)
    if e <= 0:
        return True
    return (pow(x1, q - 1, q**e) - pow(y1, q - 1, q**e)) % q**e == 0


def lte_holds(x1: int, y1: int, p: int, n: int) -> bool:
    """nu_p(x1^n - y1^n) = nu_p(x1 - y1) + nu_p(n) for odd p | x1 - y1, p not dividing x1*y1."""
    return nu(p, x1**n - y1**n) == nu(p, x1 - y1) + nu(p, n)


def building_blocks() -> list[CatalogItem]:
    items = []

    def item(name, got, want):
        items.append(CatalogItem(name, got == want, f"got {got!r}, expected {want!r}"))

    item("nu_3(45), tau(45)", (nu(3, 45), tau(45)), (2, 6))
    item("nu_3(4^2-1)", nu(3, 4**2 - 1), 1)
    item("nu_11(3^10-1)", nu(11, 3**10 - 1), 2)
    item("divisors(45)", divisors(45), [1, 3, 5, 9, 15, 45])
    bad = [
        (x1, y1, p, n)
        for x1 in range(2, 21)
        for y1 in range(1, x1)
        if math.gcd(x1, y1) == 1
        for p in (3, 5, 7, 11, 13)
        if (x1 - y1) % p == 0
        for n in range(1, 31)
        if not lte_holds(x1, y1, p, n)
    ]
    item("lifting the exponent on x1 <= 20, n <= 30", bad, [])
    return items


# --------------------------------------------------------- entry points

LEMMA_IDS = ("3.6-k6", "3.6-k3", "3.7-wieferich", "catalog", "3.1-blocks")


@dataclass
class LemmaReport:
    lemma_id: str
    passed: bool
    claim: str
    result: object

    def to_json(self) -> dict:
        return {"id": self.lemma_id, "pass": self.passed, "claim": self.claim, "result": self.result}


def verify_lemma(lemma_id: str) -> LemmaReport:
    if lemma_id == "3.6-k6":
        hits = power_divisibility_scan(73, 173, 6)
        return LemmaReport(lemma_id, not hits, "no q^6 hits for x1 <= 73, q < 173", [_hit(h) for h in hits])
    if lemma_id == "3.6-k3":
        low = power_divisibility_scan(9, 173, 3)
        high = hits_per_pair(power_divisibility_scan(73, 173, 3, x1_min=10))
        worst = max((len(v) for v in high.values()), default=0)
        argmax = [[x1, y1, qs] for (x1, y1), qs in high.items() if len(qs) == worst]
        ok = not low and worst <= 2
        result = {"hits_x1_le_9": [_hit(h) for h in low], "max_primes_per_pair": worst, "argmax_pairs": argmax}
        return LemmaReport(lemma_id, ok, "no q^3 hits for x1 <= 9; at most 2 primes per pair for 10 <= x1 <= 73", result)
    if lemma_id == "3.7-wieferich":
        base3 = wieferich_scan(3, 1, 173)
        base2 = wieferich_scan(2, 1, 1100)
        ok = base3 == [11] and base2 == [1093]
        return LemmaReport(lemma_id, ok, "q^2 | 3^(q-1)-1 for q < 173 only at q = 11", {"base3": base3, "base2_to_1100": base2})
    if lemma_id == "catalog":
        items = identity_catalog()
        return LemmaReport(lemma_id, all(i.passed for i in items), "fixed identities", [vars(i) for i in items])
    if lemma_id == "3.1-blocks":
        items = building_blocks()
        return LemmaReport(lemma_id, all(i.passed for i in items), "valuation building blocks", [vars(i) for i in items])
    raise KeyError(lemma_id)


def _hit(h: ScanHit) -> list[int]:
    return [h.x1, h.y1, h.q, h.exponent_reached]

