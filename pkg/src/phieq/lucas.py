"""Lucas-type quotients, the gcd-reduced base pair, and ranks of apparition.

For a coprime pair x1 > y1 and a prime p not dividing x1*y1, the rank of
apparition l_p is the least l >= 1 with p | x1^l - y1^l.  It is the
multiplicative order of x1 * y1^-1 mod p, so it divides p - 1, and

    p | x1^m - y1^m   iff   l_p | m.

A prime divisor of x1^m + y1^m has rank 2m exactly when it is primitive for
x1^(2m) - y1^(2m), which is how the plus side is handled below.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import DEFAULT_EFFORT_CAP, DEFAULT_SEED, factor
from .errors import DividesBase, ParityViolation

# Ranks for primes up to this bound are found by stepping through powers.
SCAN_THRESHOLD = 10_000


@dataclass(frozen=True)
class ReducedPair:
    d1: int
    x1: int
    y1: int

    def __post_init__(self):
        if self.d1 < 1 or not self.x1 > self.y1 >= 1:
            raise ValueError(f"bad reduced pair {self}")
        if math.gcd(self.x1, self.y1) != 1:
            raise ValueError(f"x1, y1 not coprime in {self}")


def reduce_pair(x: int, y: int) -> ReducedPair:
    """Split off d1 = gcd(x, y).

    >>> reduce_pair(15, 9)
    ReducedPair(d1=3, x1=5, y1=3)
    """
    if not x > y >= 1:
        raise ValueError(f"need x > y >= 1, got ({x}, {y})")
    d = math.gcd(x, y)
    return ReducedPair(d, x // d, y // d)


class QuotientKind(enum.Enum):
    MINUS_OVER_MINUS = "minus/minus"  # (x^m - y^m)/(x - y)
    PLUS_OVER_PLUS = "plus/plus"  # (x^m + y^m)/(x + y), m odd
    MINUS_OVER_PLUS = "minus/plus"  # (x^m - y^m)/(x + y), m even

    def check_parity(self, m: int) -> None:
        if self is QuotientKind.PLUS_OVER_PLUS and m % 2 == 0:
            raise ParityViolation(f"(x^m + y^m)/(x + y) needs odd m, got {m}")
        if self is QuotientKind.MINUS_OVER_PLUS and m % 2 == 1:
            raise ParityViolation(f"(x^m - y^m)/(x + y) needs even m, got {m}")


def quotient_parts(kind: QuotientKind, x: int, y: int, m: int) -> tuple[int, int]:
    """Numerator and denominator of the quotient, before division."""
    kind.check_parity(m)
    if kind is QuotientKind.MINUS_OVER_MINUS:
        return x**m - y**m, x - y
    if kind is QuotientKind.PLUS_OVER_PLUS:
        return x**m + y**m, x + y
    return x**m - y**m, x + y


def lucas_quotient(kind: QuotientKind, x: int, y: int, m: int) -> int:
    """The exact integer (x^m -+ y^m)/(x -+ y) named by kind.

    >>> lucas_quotient(QuotientKind.PLUS_OVER_PLUS, 2, 1, 5)
    11
    >>> lucas_quotient(QuotientKind.MINUS_OVER_PLUS, 3, 1, 2)
    2
    """
    if m < 1:
        raise ValueError(f"exponent must be positive, got {m}")
    if not x > y >= 1:
        raise ValueError(f"need x > y >= 1, got ({x}, {y})")
    num, den = quotient_parts(kind, x, y, m)
    q, r = divmod(num, den)
    assert r == 0, (kind, x, y, m)
    return q


def _rank_scan(a: int, p: int) -> int:
    v, l = a, 1
    while v != 1:
        v = v * a % p
        l += 1
    return l


def multiplicative_order(a: int, p: int, cap: int = DEFAULT_EFFORT_CAP) -> int:
    """Order of a in (Z/p)^*, p prime, by stripping prime factors of p - 1."""
    a %= p
    if a == 0:
        raise DividesBase(f"{p} divides the base")
    order = p - 1
    for q, e in factor(p - 1, cap=cap).items():
        for _ in range(e):
            if pow(a, order // q, p) == 1:
                order //= q
            else:
                break
    return order


def rank_of_apparition(x1: int, y1: int, p: int, cap: int = DEFAULT_EFFORT_CAP) -> int:
    """Least l >= 1 with p | x1^l - y1^l.

    >>> rank_of_apparition(2, 1, 7)
    3
    >>> rank_of_apparition(3, 1, 11)
    5
    """
    if math.gcd(x1, y1) != 1:
        raise ValueError(f"({x1}, {y1}) not coprime")
    if x1 % p == 0 or y1 % p == 0:
        raise DividesBase(f"{p} divides {x1}*{y1}")
    a = x1 * pow(y1, -1, p) % p
    if p <= SCAN_THRESHOLD:
        return _rank_scan(a, p)
    return multiplicative_order(a, p, cap)


def primitive_prime_divisors(
    x1: int, y1: int, m: int, side: str, cap: int = DEFAULT_EFFORT_CAP, seed: int = DEFAULT_SEED
) -> set[int]:
    """Primes of x1^m - y1^m with rank m (side "minus"), or of x1^m + y1^m
    with rank 2m (side "plus").  Empty for the Zsigmondy exceptions.

    >>> sorted(primitive_prime_divisors(3, 1, 11, "plus"))
    [67, 661]
    >>> primitive_prime_divisors(2, 1, 6, "minus")
    set()
    """
    if math.gcd(x1, y1) != 1 or not x1 > y1 >= 1 or m < 1:
        raise ValueError(f"bad input ({x1}, {y1}, {m})")
    if side == "minus":
        value, want = x1**m - y1**m, m
    elif side == "plus":
        value, want = x1**m + y1**m, 2 * m
    else:
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    if value == 1:
        return set()
    return {p for p in factor(value, cap=cap, seed=seed) if rank_of_apparition(x1, y1, p, cap) == want}
