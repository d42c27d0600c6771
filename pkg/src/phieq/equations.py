"""Exact checking, case analysis and solution families for the totient equations.

The equations themselves are listed on EquationId.  Everything here is exact
integer arithmetic.  A tuple whose left-hand argument is 0 is never a
solution, since phi(0) is undefined.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import DEFAULT_EFFORT_CAP, DEFAULT_SEED, euler_phi, is_prime, nu
from .errors import ParityViolation
from .lucas import QuotientKind, quotient_parts
from .model import CandidateSolution, EquationId, SearchBox

MM, PP, MP = QuotientKind.MINUS_OVER_MINUS, QuotientKind.PLUS_OVER_PLUS, QuotientKind.MINUS_OVER_PLUS

# Quotient kinds of the phi side and of the right-hand side.
SIDES = {
    EquationId.E13: (MM, MM),
    EquationId.E14: (PP, PP),
    EquationId.E15: (MP, PP),
    EquationId.E16: (PP, MP),
}


class Family(enum.Enum):
    T11 = "T1.1"  # (+-(2^(t-1) +- 1), -+(2^(t-1) -+ 1), 2, 1), t >= 2
    T12 = "T1.2"  # (a +- 1, -a, 1, 2) and (a +- i, -a, 2, 1), i = 1, 2
    T13_1 = "T1.3-1"  # (2, 1, 2^b 3^s, 3, 1), b >= 1
    T13_2 = "T1.3-2"  # (a+1, a, 1, 2, 1), (a+2, a, 2^s, 2, 1), (a+3, a, 2^b 3^s, 2, 1)
    T13_3 = "T1.3-3"  # (2, 1, p^s 2^b, q, q-1), q and p = (2^q + 1)/3 prime
    TRIVIAL = "TRIVIAL"
    UNEXPECTED = "UNEXPECTED"


@dataclass(frozen=True)
class SolutionRecord:
    candidate: CandidateSolution
    trivial: bool
    family: Family

    def __post_init__(self):
        if self.family is Family.UNEXPECTED and self.trivial:
            raise ValueError("a trivial record cannot be unexpected")

    def to_json(self) -> dict:
        c = self.candidate
        return {
            "eq": c.eq.value,
            "x": c.x,
            "y": c.y,
            "z": c.z,
            "m": c.m,
            "n": c.n,
            "trivial": self.trivial,
            "family": self.family.value,
        }


# ---------------------------------------------------------------- sides

def quotient_pair(eq: EquationId, x: int, y: int, m: int, n: int) -> tuple[int, int]:
    """(A, B) with the z-equation reading phi(z A) = z B."""
    ka, kb = SIDES[eq]
    na, da = quotient_parts(ka, x, y, m)
    nb, db = quotient_parts(kb, x, y, n)
    return na // da, nb // db


def equation_sides(c: CandidateSolution) -> tuple[int, int]:
    """(N, R) such that c is a solution iff N > 0 and phi(N) = R."""
    x, y, m, n = c.x, c.y, c.m, c.n
    if c.eq is EquationId.E11:
        return abs(x**m - y**m), abs(x**n - y**n)
    if c.eq is EquationId.E12:
        return abs((x**m - y**m) // (x - y)), abs((x**n - y**n) // (x - y))
    a, b = quotient_pair(c.eq, x, y, m, n)
    return c.z * a, c.z * b


def cheap_reject(N: int, R: int) -> bool:
    """True when phi(N) = R is impossible for elementary reasons.

    phi(N) <= N with equality only at N = 1, phi(N) is even for N >= 3, and
    phi(N) >= sqrt(N/2) for every N >= 1.
    """
    if N <= 0 or R <= 0:
        return True
    if R > N or (R == N and N != 1):
        return True
    if N >= 3 and R % 2:
        return True
    return 2 * R * R < N


def phi_equals(N: int, R: int, cap: int = DEFAULT_EFFORT_CAP, seed: int = DEFAULT_SEED) -> bool:
    if cheap_reject(N, R):
        return False
    return euler_phi(N, cap=cap, seed=seed) == R


def check_solution(c: CandidateSolution, cap: int = DEFAULT_EFFORT_CAP, seed: int = DEFAULT_SEED) -> bool:
    """Exact test of the equation at c.  Raises EffortExhausted when the
    phi side cannot be factored within the budget.

    >>> check_solution(CandidateSolution(EquationId.E16, 2, 1, 22, 5, 4))
    True
    """
    N, R = equation_sides(c)
    return phi_equals(N, R, cap, seed)


# ---------------------------------------------------------- case split

def classify_case(x: int, y: int, m: int, n: int) -> tuple[str, str]:
    """Case tags of the first equation (a1..a4) and of the quotient form (a5..a9)."""
    if x * y == 0 or not abs(x) > abs(y):
        raise ValueError(f"need xy != 0 and |x| > |y|, got ({x}, {y})")
    if x * y > 0:
        return "a1", "a5"
    pm, pn = m % 2, n % 2
    if pm == 0 and pn == 0:
        return "a1", "a6"
    if pm == 1 and pn == 1:
        return "a2", "a7"
    if pm == 0:
        return "a3", "a8"
    return "a4", "a9"


def case_equation(tag: str, X: int, Y: int, m: int, n: int, cap: int = DEFAULT_EFFORT_CAP) -> bool:
    """Evaluate a case equation on X = |x| > Y = |y|."""
    pm, mm = X**m + Y**m, X**m - Y**m
    pn, mn = X**n + Y**n, X**n - Y**n
    lhs, rhs = {
        "a1": (mm, mn),
        "a2": (pm, pn),
        "a3": (mm, pn),
        "a4": (pm, mn),
        "a5": (mm // (X - Y), mn // (X - Y)),
        "a6": (mm // (X + Y), mn // (X + Y)),
        "a7": (pm // (X + Y), pn // (X + Y)),
        "a8": (mm // (X + Y), pn // (X + Y)),
        "a9": (pm // (X + Y), mn // (X + Y)),
    }[tag]
    return phi_equals(lhs, rhs, cap)


# ------------------------------------------------------------ triviality

def is_trivial(c: CandidateSolution) -> bool:
    """Trivial patterns, for a c that already solves its equation.

    E11: m = n.  For solutions this forces m = n = 1 and |x - y| = 1.
    E12: m = n (phi(1) = 1), or x = -y with |x| = 1 and m, n odd.
    E13..E16: m = n, or m < n with both quotients equal to 1, which leaves
    phi(z) = z and so z = 1.
    """
    if c.m == c.n:
        return True
    if c.eq is EquationId.E11:
        return False
    if c.eq is EquationId.E12:
        return c.x == -c.y and abs(c.x) == 1 and c.m % 2 == 1 and c.n % 2 == 1
    a, b = quotient_pair(c.eq, c.x, c.y, c.m, c.n)
    return c.m < c.n and a == 1 and b == 1


def _is_power_of_two(v: int) -> bool:
    return v > 0 and v & (v - 1) == 0


def _smooth_part(z: int, primes: tuple[int, ...]) -> int:
    for p in primes:
        while z % p == 0:
            z //= p
    return z


def family_prime(q: int) -> int | None:
    """p = (2^q + 1)/3 when q and p are both prime, else None."""
    if q < 3 or not is_prime(q):
        return None
    p = (2**q + 1) // 3
    return p if is_prime(p) else None


def classify_family(c: CandidateSolution) -> Family:
    """Tag a solution with the family it belongs to, or UNEXPECTED."""
    if is_trivial(c):
        return Family.TRIVIAL
    x, y, z, m, n = c.x, c.y, c.z, c.m, c.n
    if c.eq is EquationId.E11:
        if x * y < 0 and (m, n) == (2, 1) and abs(abs(x) - abs(y)) == 2:
            s = abs(x) + abs(y)
            if s >= 4 and _is_power_of_two(s):
                return Family.T11
    elif c.eq is EquationId.E12:
        if (m, n) == (1, 2) and abs(x + y) == 1:
            return Family.T12
        if (m, n) == (2, 1) and abs(x + y) in (1, 2):
            return Family.T12
    elif c.eq is EquationId.E14:
        if (x, y, m, n) == (2, 1, 3, 1) and z % 2 == 0 and _smooth_part(z, (2, 3)) == 1:
            return Family.T13_1
    elif c.eq is EquationId.E15:
        if (m, n) == (2, 1):
            d = x - y
            if d == 1 and z == 1:
                return Family.T13_2
            if d == 2 and _is_power_of_two(z):
                return Family.T13_2
            if d == 3 and z % 2 == 0 and _smooth_part(z, (2, 3)) == 1:
                return Family.T13_2
    elif c.eq is EquationId.E16:
        p = family_prime(m)
        if (x, y) == (2, 1) and n == m - 1 and p and z % 2 == 0 and _smooth_part(z, (2, p)) == 1:
            return Family.T13_3
    return Family.UNEXPECTED


def make_record(c: CandidateSolution) -> SolutionRecord:
    fam = classify_family(c)
    return SolutionRecord(c, fam is Family.TRIVIAL, fam)


# ------------------------------------------------------------- families

def _smooth_numbers(primes: tuple[int, ...], bound: int) -> list[int]:
    out = [1]
    for p in primes:
        out = [v * p**k for v in out for k in range(bound.bit_length() + 1) if v * p**k <= bound]
    return sorted(set(out))


def tested_family_exponents(m_max: int) -> list[dict]:
    """Odd primes q <= m_max, with p = (2^q + 1)/3 and whether p is prime."""
    out = []
    for q in range(3, m_max + 1):
        if is_prime(q):
            p = (2**q + 1) // 3
            out.append({"q": q, "p": p, "p_prime": is_prime(p)})
    return out


def _family_members(eq: EquationId, box: SearchBox) -> list[CandidateSolution]:
    X = box.x_max
    out = []

    def add(*args):
        try:
            out.append(CandidateSolution(eq, *args))
        except (ValueError, ParityViolation):
            pass

    if eq is EquationId.E11:
        t = 2
        while 2 ** (t - 1) - 1 <= X:
            hi, lo = 2 ** (t - 1) + 1, 2 ** (t - 1) - 1
            for a, b in ((hi, -lo), (lo, -hi), (-hi, lo), (-lo, hi)):
                add(a, b, None, 2, 1)
            t += 1
    elif eq is EquationId.E12:
        for a in range(-X - 2, X + 3):
            for s in (1, -1):
                add(a + s, -a, None, 1, 2)
            for i in (1, 2, -1, -2):
                add(a + i, -a, None, 2, 1)
    elif eq is EquationId.E14:
        zb = box.z_bound(2, 1)
        for z in _smooth_numbers((2, 3), zb):
            if z % 2 == 0:
                add(2, 1, z, 3, 1)
    elif eq is EquationId.E15:
        for a in range(1, X):
            add(a + 1, a, 1, 2, 1)
            for z in _smooth_numbers((2,), box.z_bound(a + 2, a)):
                add(a + 2, a, z, 2, 1)
            for z in _smooth_numbers((2, 3), box.z_bound(a + 3, a)):
                if z % 2 == 0:
                    add(a + 3, a, z, 2, 1)
    elif eq is EquationId.E16:
        for q in range(3, box.m_max + 1):
            p = family_prime(q)
            if p:
                for z in _smooth_numbers((2, p), box.z_bound(2, 1)):
                    if z % 2 == 0:
                        add(2, 1, z, q, q - 1)
    return out


def known_families(eq: EquationId, box: SearchBox) -> list[CandidateSolution]:
    """Members of the known nontrivial families that lie inside box.

    E13 has none: only its z = 1 and z = x - y slices are claimed solution-free
    elsewhere, so a general z sweep of it is exploratory.
    """
    box.check_for(eq)
    found = {c for c in _family_members(eq, box) if box.admits(c)}
    return sorted(found, key=CandidateSolution.key)


# ------------------------------------------------------------ reduction

def reduce_to_coprime_exponents(c: CandidateSolution) -> CandidateSolution:
    """Replace (x, y, z, m, n) by (x^d, y^d, z0, m/d, n/d) with d = gcd(m, n).

    z0 = z (x^d + y^d)/(x + y) for the plus-denominator equations and
    z (x^d - y^d)/(x - y) for E13, so both sides of the equation are unchanged.

    >>> reduce_to_coprime_exponents(CandidateSolution(EquationId.E14, 2, 1, 1, 9, 3))
    CandidateSolution(eq=<EquationId.E14: 'E14'>, x=8, y=1, z=3, m=3, n=1)
    """
    if not c.eq.has_z:
        raise ValueError("reduction applies to the z equations only")
    d = math.gcd(c.m, c.n)
    if d == 1:
        return c
    if c.eq is EquationId.E13:
        mult = (c.x**d - c.y**d) // (c.x - c.y)
    else:
        if d % 2 == 0:
            raise ParityViolation(f"gcd(m, n) = {d} is even")
        mult = (c.x**d + c.y**d) // (c.x + c.y)
    return CandidateSolution(c.eq, c.x**d, c.y**d, c.z * mult, c.m // d, c.n // d)


def nu2_differs(x: int, y: int) -> bool:
    return nu(2, abs(x)) != nu(2, abs(y))
