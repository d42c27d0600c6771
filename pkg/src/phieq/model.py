"""Value types shared by the equation engine and the search harness."""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import Iterator, Optional

from .arith import DEFAULT_EFFORT_CAP, DEFAULT_SEED, nu
from .errors import ParityViolation


class EquationId(enum.Enum):
    """The six totient equations.

    E11  phi(|x^m - y^m|) = |x^n - y^n|                      signed x, y
    E12  phi(|(x^m - y^m)/(x - y)|) = |(x^n - y^n)/(x - y)|  signed x, y
    E13  phi(z (x^m - y^m)/(x - y)) = z (x^n - y^n)/(x - y)
    E14  phi(z (x^m + y^m)/(x + y)) = z (x^n + y^n)/(x + y)  m, n odd
    E15  phi(z (x^m - y^m)/(x + y)) = z (x^n + y^n)/(x + y)  m even, n odd
    E16  phi(z (x^m + y^m)/(x + y)) = z (x^n - y^n)/(x + y)  m odd, n even
    """

    E11 = "E11"
    E12 = "E12"
    E13 = "E13"
    E14 = "E14"
    E15 = "E15"
    E16 = "E16"

    @classmethod
    def parse(cls, text: str) -> "EquationId":
        """Accept "E14", "e14" or the dotted form "1.4"."""
        t = text.strip().upper()
        if not t.startswith("E"):
            t = "E" + t.replace(".", "")
        try:
            return cls(t)
        except ValueError:
            raise ValueError(f"unknown equation {text!r}") from None

    @property
    def signed(self) -> bool:
        return self in (EquationId.E11, EquationId.E12)

    @property
    def has_z(self) -> bool:
        return not self.signed

    def parity_ok(self, m: int, n: int) -> bool:
        rule = _PARITY.get(self)
        return rule is None or (m % 2, n % 2) == rule


# required (m mod 2, n mod 2)
_PARITY = {EquationId.E14: (1, 1), EquationId.E15: (0, 1), EquationId.E16: (1, 0)}


@dataclass(frozen=True, order=True)
class CandidateSolution:
    eq: EquationId = field(compare=False)
    x: int
    y: int
    z: Optional[int]
    m: int
    n: int

    def __post_init__(self):
        if self.x * self.y == 0:
            raise ValueError(f"need xy != 0: {self}")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"exponents must be positive: {self}")
        if self.eq.signed:
            if self.z is not None:
                raise ValueError(f"{self.eq.value} carries no z")
            if self.x == self.y:
                raise ValueError(f"need x != y: {self}")
        else:
            if self.z is None or self.z < 1:
                raise ValueError(f"{self.eq.value} needs z >= 1: {self}")
            if not self.x > self.y >= 1:
                raise ValueError(f"{self.eq.value} needs x > y >= 1: {self}")
            if not self.eq.parity_ok(self.m, self.n):
                raise ParityViolation(f"exponent parity does not fit {self.eq.value}: {self}")

    def key(self) -> tuple:
        return (self.eq.value, self.x, self.y, -1 if self.z is None else self.z, self.m, self.n)

    def as_tuple(self) -> tuple:
        if self.z is None:
            return (self.x, self.y, self.m, self.n)
        return (self.x, self.y, self.z, self.m, self.n)


EXPONENT_ORDERS = ("all", "distinct", "n<m")
NU2_FILTERS = ("any", "equal", "distinct")
Z_RULES = (None, "x+y")


@dataclass(frozen=True)
class SearchBox:
    """A finite region of (x, y, z, m, n).

    Signed equations range over 1 <= |x|, |y| <= x_max with x != y; the others
    over 1 <= y < x <= x_max.  Both exponents run over 1..m_max.  z runs over
    1..z_max, or 1..x+y under z_rule "x+y" (capped by z_max when both are set),
    minus z_exclusions.
    """

    x_max: int
    m_max: int
    z_max: Optional[int] = None
    z_rule: Optional[str] = None
    z_exclusions: frozenset = frozenset()
    effort_cap: int = DEFAULT_EFFORT_CAP
    seed: int = DEFAULT_SEED
    exponent_order: str = "all"
    coprime_exponents: bool = False
    nu2: str = "any"

    def __post_init__(self):
        object.__setattr__(self, "z_exclusions", frozenset(self.z_exclusions))
        if self.x_max < 2 or self.m_max < 2:
            raise ValueError("x_max and m_max must be at least 2")
        if self.z_max is not None and self.z_max < 1:
            raise ValueError("z_max must be positive")
        if self.effort_cap < 1:
            raise ValueError("effort cap must be positive")
        if self.z_rule not in Z_RULES:
            raise ValueError(f"unknown z rule {self.z_rule!r}")
        if self.exponent_order not in EXPONENT_ORDERS:
            raise ValueError(f"unknown exponent order {self.exponent_order!r}")
        if self.nu2 not in NU2_FILTERS:
            raise ValueError(f"unknown nu2 filter {self.nu2!r}")

    def check_for(self, eq: EquationId) -> None:
        if eq.has_z and self.z_max is None and self.z_rule is None:
            raise ValueError(f"{eq.value} needs z_max or a z rule")

    def nu2_ok(self, x: int, y: int) -> bool:
        if self.nu2 == "any":
            return True
        same = nu(2, abs(x)) == nu(2, abs(y))
        return same if self.nu2 == "equal" else not same

    def pairs(self, eq: EquationId) -> list[tuple[int, int]]:
        if eq.signed:
            r = [v for v in range(-self.x_max, self.x_max + 1) if v != 0]
            out = [(x, y) for x in r for y in r if x != y]
        else:
            out = [(x, y) for x in range(2, self.x_max + 1) for y in range(1, x)]
        return [(x, y) for x, y in out if self.nu2_ok(x, y)]

    def exponent_ok(self, eq: EquationId, m: int, n: int) -> bool:
        if not (1 <= m <= self.m_max and 1 <= n <= self.m_max and eq.parity_ok(m, n)):
            return False
        if self.exponent_order == "distinct" and m == n:
            return False
        if self.exponent_order == "n<m" and not n < m:
            return False
        return not self.coprime_exponents or math.gcd(m, n) == 1

    def exponent_pairs(self, eq: EquationId) -> list[tuple[int, int]]:
        r = range(1, self.m_max + 1)
        return [(m, n) for m in r for n in r if self.exponent_ok(eq, m, n)]

    def z_bound(self, x: int, y: int) -> int:
        bounds = [b for b in (self.z_max, x + y if self.z_rule == "x+y" else None) if b is not None]
        return min(bounds)

    def z_values(self, x: int, y: int) -> list[int]:
        return [z for z in range(1, self.z_bound(x, y) + 1) if z not in self.z_exclusions]

    def admits(self, c: CandidateSolution) -> bool:
        eq = c.eq
        if eq.signed:
            if not (abs(c.x) <= self.x_max and abs(c.y) <= self.x_max):
                return False
        elif c.x > self.x_max:
            return False
        if not self.nu2_ok(c.x, c.y) or not self.exponent_ok(eq, c.m, c.n):
            return False
        if eq.has_z:
            return c.z <= self.z_bound(c.x, c.y) and c.z not in self.z_exclusions
        return True

    def cardinality(self, eq: EquationId) -> int:
        """Number of tuples in the box, counted without enumerating z or exponents."""
        n_exp = _count_exponent_pairs(self, eq)
        if eq.signed:
            if self.nu2 == "any":
                k = 2 * self.x_max
                return (k * k - k) * n_exp
            return len(self.pairs(eq)) * n_exp
        total = 0
        for x in range(2, self.x_max + 1):
            for y in range(1, x):
                if self.nu2_ok(x, y):
                    b = self.z_bound(x, y)
                    total += b - sum(1 for e in self.z_exclusions if 1 <= e <= b)
        return total * n_exp

    def describe(self) -> dict:
        d = asdict(self)
        d["z_exclusions"] = sorted(self.z_exclusions)
        return d


def _count_exponent_pairs(box: SearchBox, eq: EquationId) -> int:
    M = box.m_max
    odd, even = (M + 1) // 2, M // 2
    if not box.coprime_exponents:
        if eq is EquationId.E14:
            return {"all": odd * odd, "distinct": odd * odd - odd, "n<m": odd * (odd - 1) // 2}[box.exponent_order]
        if eq in (EquationId.E15, EquationId.E16):
            # m and n differ in parity, so they are never equal
            if box.exponent_order != "n<m":
                return odd * even
            if eq is EquationId.E15:  # m = 2k even, n odd < 2k: k choices
                return sum(k for k in range(1, even + 1))
            return sum((m - 1) // 2 for m in range(1, M + 1, 2))
        return {"all": M * M, "distinct": M * M - M, "n<m": M * (M - 1) // 2}[box.exponent_order]
    return sum(
        1
        for m in range(1, M + 1)
        for n in range(1, M + 1)
        if math.gcd(m, n) == 1
        and eq.parity_ok(m, n)
        and (box.exponent_order == "all" or (box.exponent_order == "distinct" and m != n) or (box.exponent_order == "n<m" and n < m))
    )


def iter_box(box: SearchBox, eq: EquationId) -> Iterator[tuple[int, int, int, int]]:
    for x, y in box.pairs(eq):
        for m, n in box.exponent_pairs(eq):
            yield x, y, m, n
