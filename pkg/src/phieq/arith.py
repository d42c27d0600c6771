"""Exact integer arithmetic: primality, factorization, totient and friends.

Everything here is a pure function of its arguments.  Randomized internals
(Pollard rho starting points) are driven by an explicit seed so that two runs
with the same configuration see the same factor splits and the same effort
accounting.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Dict, Iterable

import numpy as np

from .errors import EffortExhausted

Factorization = Dict[int, int]

DEFAULT_EFFORT_CAP = 5_000_000
DEFAULT_SEED = 20170101

TRIAL_BOUND = 1000

# Miller-Rabin with the first 13 prime bases is deterministic below this
# bound (Sorenson & Webster, 2015).
DETERMINISTIC_MR_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_BASES_LARGE = _MR_BASES + (43, 47, 53, 59, 61, 67, 71)


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


SMALL_PRIMES = tuple(_small_primes(TRIAL_BOUND))
_SMALL_PRIME_SET = frozenset(SMALL_PRIMES)


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array ``a`` of length ``limit + 1`` with ``a[k]`` true iff k is prime."""
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[: min(2, limit + 1)] = False
    for i in range(2, math.isqrt(limit) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    return is_p


def primes_up_to(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(prime_sieve(limit)).astype(np.int64)


def phi_sieve(limit: int) -> np.ndarray:
    """Totients of 0..limit by the multiplicative sieve (entry 0 is 0)."""
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in primes_up_to(limit):
        phi[p::p] -= phi[p::p] // p
    return phi


def _is_strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _is_strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameter choice: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    inv2 = (n + 1) // 2
    U, V, Qk = 0, 2, 1
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Below ``DETERMINISTIC_MR_BOUND`` (about 3.3e24) the answer is proven.
    Above it, Miller-Rabin with 20 fixed bases plus a strong Lucas test is
    used (a BPSW-strength test); no composite is known to pass it, but that is
    not a proof.
    """
    if n < 2:
        return False
    if n <= TRIAL_BOUND:
        return n in _SMALL_PRIME_SET
    for p in SMALL_PRIMES[:25]:
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < DETERMINISTIC_MR_BOUND else _MR_BASES_LARGE
    if not all(_is_strong_probable_prime(n, a, d, s) for a in bases):
        return False
    if n < DETERMINISTIC_MR_BOUND:
        return True
    return _is_strong_lucas_probable_prime(n)


def _integer_root(n: int, k: int) -> int:
    r = int(round(n ** (1.0 / k))) if n < 1 << 1000 else 1 << (n.bit_length() // k)
    # Newton refinement; the float guess may be off for large n.
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _perfect_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        if (1 << k) > n:
            break
        r = _integer_root(n, k)
        if r > 1 and r ** k == n:
            return r, k
    return None


class _Budget:
    __slots__ = ("left",)

    def __init__(self, cap: int) -> None:
        self.left = cap


def _brent(n: int, rng: random.Random, budget: _Budget) -> int | None:
    """One Pollard-Brent attempt; returns a nontrivial factor or None."""
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        if budget.left < r:
            budget.left = 0
            return None
        budget.left -= r
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(m, r - k)
            if budget.left < steps:
                budget.left = 0
                return None
            budget.left -= steps
            for _ in range(steps):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += steps
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _ecm_stage1(n: int, sigma: int, b1: int) -> tuple[int, int, int] | int:
    """Suyama-parameterized Montgomery curve, stage 1.

    Returns ``(X, Z, a24)`` for the point multiplied by every prime power up
    to ``b1``, or a nontrivial factor of n if one surfaced while setting up.
    """
    u = (sigma * sigma - 5) % n
    v = 4 * sigma % n
    x0 = pow(u, 3, n)
    z0 = pow(v, 3, n)
    den = 16 * x0 * v % n
    g = math.gcd(den, n)
    if g != 1:
        return g
    a24 = pow(v - u, 3, n) * (3 * u + v) % n * pow(den, -1, n) % n
    X, Z = x0, z0
    for p in _ecm_primes(b1):
        pk = p
        while pk * p <= b1:
            pk *= p
        X, Z = _ladder(pk, X, Z, a24, n)
    return X, Z, a24


def _xdbl(X: int, Z: int, a24: int, n: int) -> tuple[int, int]:
    s = (X + Z) * (X + Z) % n
    d = (X - Z) * (X - Z) % n
    t = s - d
    return s * d % n, t * (d + a24 * t) % n


def _xadd(X1: int, Z1: int, X2: int, Z2: int, Xd: int, Zd: int, n: int) -> tuple[int, int]:
    a = (X1 - Z1) * (X2 + Z2)
    b = (X1 + Z1) * (X2 - Z2)
    return Zd * (a + b) ** 2 % n, Xd * (a - b) ** 2 % n


def _ladder(k: int, X: int, Z: int, a24: int, n: int) -> tuple[int, int]:
    if k == 1:
        return X, Z
    R0 = (X, Z)
    R1 = _xdbl(X, Z, a24, n)
    for bit in bin(k)[3:]:
        if bit == "1":
            R0 = _xadd(*R0, *R1, X, Z, n)
            R1 = _xdbl(*R1, a24, n)
        else:
            R1 = _xadd(*R0, *R1, X, Z, n)
            R0 = _xdbl(*R0, a24, n)
    return R0


@lru_cache(maxsize=8)
def _ecm_primes(limit: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(limit))


_ECM_D = 105  # baby steps cover odd j < D; giant stride is 2D


def _ecm_stage2(n: int, X: int, Z: int, a24: int, b1: int, b2: int) -> int:
    """Standard continuation: catches one extra prime in (b1, b2]."""
    D = _ECM_D
    baby = {}
    Q2 = _xdbl(X, Z, a24, n)
    prev, cur = (X, Z), _xadd(*Q2, X, Z, X, Z, n)  # Q, 3Q
    baby[1] = (X, Z)
    j = 3
    while j < D:
        baby[j] = cur
        prev, cur = cur, _xadd(*cur, *Q2, *prev, n)
        j += 2
    S = _ladder(2 * D, X, Z, a24, n)
    k = max(1, b1 // (2 * D))
    G_prev = _ladder(2 * D * (k - 1), X, Z, a24, n) if k > 1 else None
    G = _ladder(2 * D * k, X, Z, a24, n)
    acc = 1
    for base, js in _stage2_plan(b1, b2):
        xg, zg = G
        for j in js:
            xj, zj = baby[j]
            acc = acc * (xg * zj - xj * zg) % n
        nxt = _xdbl(*G, a24, n) if G_prev is None else _xadd(*G, *S, *G_prev, n)
        G_prev, G = G, nxt
    return math.gcd(acc, n)


@lru_cache(maxsize=8)
def _stage2_plan(b1: int, b2: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """For each giant step 2Dk, the odd j < D with 2Dk +- j prime."""
    D = _ECM_D
    primes = set(_ecm_primes(b2))
    plan = []
    k = max(1, b1 // (2 * D))
    while 2 * D * k - D <= b2:
        base = 2 * D * k
        js = tuple(j for j in range(1, D, 2) if base + j in primes or base - j in primes)
        plan.append((base, js))
        k += 1
    return tuple(plan)


# (B1, curves) schedule, roughly tuned for 15-, 20- and 25-digit factors.
_ECM_SCHEDULE = ((2000, 25), (11000, 90), (50000, 300), (250000, 700))


def _ecm(n: int, rng: random.Random, budget: _Budget) -> int | None:
    for b1, curves in _ECM_SCHEDULE:
        b2 = 50 * b1
        cost = int(1.5 * b1) + b2 // 20
        for _ in range(curves):
            if budget.left < cost:
                budget.left = 0
                return None
            budget.left -= cost
            sigma = rng.randrange(6, n - 1)
            res = _ecm_stage1(n, sigma, b1)
            if isinstance(res, int):
                if res != n:
                    return res
                continue
            X, Z, a24 = res
            g = math.gcd(Z, n)
            if 1 < g < n:
                return g
            if g == n:
                continue
            g = _ecm_stage2(n, X, Z, a24, b1, b2)
            if 1 < g < n:
                return g
    return None


# Rho is cheap for small factors; anything it misses in this many iterations
# goes to ECM.
_RHO_SLICE = 30_000


def _split(n: int, rng: random.Random, budget: _Budget) -> int | None:
    pp = _perfect_power(n)
    if pp is not None:
        return pp[0]
    rho_budget = _Budget(min(_RHO_SLICE, budget.left))
    spent_before = rho_budget.left
    f = None
    while rho_budget.left > 0 and f is None:
        f = _brent(n, rng, rho_budget)
    budget.left -= spent_before - rho_budget.left
    if f is not None:
        return f
    return _ecm(n, rng, budget)


# Below this bound factoring is a walk down a smallest-prime-factor table.
SPF_LIMIT = 2_000_000


@lru_cache(maxsize=1)
def _spf_table() -> list[int]:
    spf = np.arange(SPF_LIMIT + 1, dtype=np.int64)
    for p in range(2, math.isqrt(SPF_LIMIT) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            np.minimum(block, p, out=block)
    return spf.tolist()


def _factor_small(n: int) -> tuple[tuple[int, int], ...]:
    spf = _spf_table()
    found: Factorization = {}
    while n > 1:
        p = spf[n]
        found[p] = found.get(p, 0) + 1
        n //= p
    return tuple(sorted(found.items()))


@lru_cache(maxsize=65536)
def _factor_cached(n: int, cap: int, seed: int) -> tuple[tuple[int, int], ...]:
    found: Factorization = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            if n > 1:  # no factor up to sqrt(n), so n is prime
                found[n] = 1
                n = 1
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    stuck: list[int] = []
    if n > 1:
        rng = random.Random(seed)
        budget = _Budget(cap)
        stack = [n]
        while stack:
            c = stack.pop()
            if c == 1:
                continue
            if is_prime(c):
                found[c] = found.get(c, 0) + 1
                continue
            f = _split(c, rng, budget)
            if f is None:
                stuck.append(c)
                continue
            stack.extend((f, c // f))
    if stuck:
        cof = math.prod(stuck)
        raise EffortExhausted(cof, dict(sorted(found.items())))
    return tuple(sorted(found.items()))


def factor(n: int, cap: int = DEFAULT_EFFORT_CAP, seed: int = DEFAULT_SEED) -> Factorization:
    """Complete factorization of ``n`` as ``{prime: exponent}``.

    ``cap`` bounds the total number of Pollard-Brent iterations spent on the
    part of ``n`` left after trial division.  When it runs out,
    :class:`EffortExhausted` is raised carrying the unfactored cofactor and
    the primes already split off.

    >>> factor(177148)
    {2: 2, 67: 1, 661: 1}
    >>> factor(1)
    {}
    """
    if n < 1:
        raise ValueError(f"factor expects a positive integer, got {n}")
    if n <= SPF_LIMIT:
        return dict(_factor_small(n))
    return dict(_factor_cached(n, cap, seed))


def unfactor(f: Factorization) -> int:
    return math.prod(p ** e for p, e in f.items())


def phi_from_factorization(f: Factorization) -> int:
    out = 1
    for p, e in f.items():
        out *= (p - 1) * p ** (e - 1)
    return out


def euler_phi(n: int, cap: int = DEFAULT_EFFORT_CAP, seed: int = DEFAULT_SEED) -> int:
    """Euler's totient of n >= 1, via :func:`factor`."""
    return phi_from_factorization(factor(n, cap, seed))


def nu(p: int, n: int) -> int:
    """p-adic valuation of the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def tau(n: int, cap: int = DEFAULT_EFFORT_CAP) -> int:
    return math.prod(e + 1 for e in factor(n, cap).values())


def omega(n: int, cap: int = DEFAULT_EFFORT_CAP) -> int:
    return len(factor(n, cap))


def least_prime_factor(n: int, cap: int = DEFAULT_EFFORT_CAP) -> int:
    if n < 2:
        raise ValueError("least_prime_factor needs n >= 2")
    for p in SMALL_PRIMES:
        if n % p == 0:
            return p
    return min(factor(n, cap))


def divisors(n: int, cap: int = DEFAULT_EFFORT_CAP) -> list[int]:
    divs = [1]
    for p, e in factor(n, cap).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def nth_prime_list(count: int) -> list[int]:
    """The first ``count`` primes."""
    limit = 16
    while True:
        ps = primes_up_to(limit)
        if len(ps) >= count:
            return [int(p) for p in ps[:count]]
        limit *= 2


def merge_factorizations(fs: Iterable[Factorization]) -> Factorization:
    out: Factorization = {}
    for f in fs:
        for p, e in f.items():
            out[p] = out.get(p, 0) + e
    return out
