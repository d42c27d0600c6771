"""Analytic bounds and the numeric constants in the inequality chains.

All real arithmetic runs at 50 significant digits.  "log" is the natural
logarithm everywhere; the chains only balance with ln.

A strict claim passes when its margin exceeds 1e-8.  A non-strict claim
passes when its margin is nonnegative up to the working precision, which
lets exact equalities such as 1.38 + 1.0357 = 2.4157 through.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from mpmath import mp, mpf

from .arith import euler_phi, nth_prime_list, phi_sieve, primes_up_to
from .errors import DomainError
from .lucas import rank_of_apparition

DPS = 50
STRICT_MARGIN = mpf("1e-8")
EQUAL_SLACK = mpf("1e-40")


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    description: str
    computed: str
    claimed: str
    relation: str
    margin: str
    passed: bool

    def to_json(self) -> dict:
        return {
            "id": self.bound_id,
            "description": self.description,
            "computed": self.computed,
            "relation": self.relation,
            "claimed": self.claimed,
            "margin": self.margin,
            "pass": self.passed,
        }


def make_report(bound_id: str, description: str, computed, relation: str, claimed) -> BoundReport:
    with mp.workdps(DPS):
        computed, claimed = mpf(computed), mpf(claimed)
        margin = claimed - computed if relation in ("<", "<=") else computed - claimed
        ok = margin > STRICT_MARGIN if relation in ("<", ">") else margin >= -EQUAL_SLACK
        return BoundReport(
            bound_id, description, mp.nstr(computed, 20), mp.nstr(claimed, 20), relation, mp.nstr(margin, 6), bool(ok)
        )


def _D(s: str) -> mpf:
    return mpf(s)


def loglog(v) -> mpf:
    return mp.log(mp.log(v))


# ----------------------------------------------------------- primitives

def sd_upper_bound(d: int, x: int) -> mpf:
    """1.084/d + 1/(d log(d+1)) + 2 loglog d/phi(d) + 2 loglog x/(phi(d) log d)."""
    if d <= 30:
        raise DomainError(f"the bound needs d > 30, got {d}")
    if x < 3:
        raise DomainError(f"the bound needs x >= 3, got {x}")
    with mp.workdps(DPS):
        ph = euler_phi(d)
        return (
            _D("1.084") / d
            + 1 / (d * mp.log(d + 1))
            + 2 * loglog(d) / ph
            + 2 * loglog(x) / (ph * mp.log(d))
        )


def primes_with_rank(x1: int, y1: int, d: int, p_limit: int) -> list[int]:
    """Primes p <= p_limit with rank of apparition exactly d for (x1, y1)."""
    ps = primes_up_to(p_limit)
    if d > 1:
        ps = ps[ps % d == 1]  # the rank divides p - 1
    out = []
    for p in ps.tolist():
        if x1 % p == 0 or y1 % p == 0:
            continue
        if pow(x1, d, p) == pow(y1, d, p) and rank_of_apparition(x1, y1, p) == d:
            out.append(p)
    return out


def sd_empirical(x1: int, y1: int, d: int, p_limit: int) -> mpf:
    """Sum of 1/p over primes p <= p_limit whose rank for (x1, y1) is d."""
    if math.gcd(x1, y1) != 1 or d < 1:
        raise ValueError("need coprime x1, y1 and d >= 1")
    with mp.workdps(DPS):
        return mp.fsum(mpf(1) / p for p in primes_with_rank(x1, y1, d, p_limit))


def f_of_p(p: int) -> mpf:
    """(log 2p / log 2) (loglog p / (p - 1)) (p / (p - loglog p))."""
    if p < 79:
        raise DomainError(f"f is used for p >= 79, got {p}")
    with mp.workdps(DPS):
        ll = loglog(p)
        return mp.log(2 * p) / mp.log(2) * ll / (p - 1) * p / (p - ll)


def mertens_sum(t: int) -> mpf:
    """Sum of 1/p over primes p <= t."""
    if t < 2:
        raise ValueError("t must be at least 2")
    with mp.workdps(DPS):
        return mp.fsum(mpf(1) / p for p in primes_up_to(t).tolist())


def prime_product(index_lo: int, index_hi: int, exclusions=frozenset()) -> mpf:
    """Product of 1 + 1/(p_i - 1) = p_i/(p_i - 1) over index_lo <= i <= index_hi,
    p_i the i-th prime (p_1 = 2), skipping primes in exclusions."""
    if index_lo < 1:
        raise ValueError("prime indices start at 1")
    with mp.workdps(DPS):
        if index_hi < index_lo:
            return mpf(1)
        primes = nth_prime_list(index_hi)[index_lo - 1 :]
        return mp.fprod(mpf(p) / (p - 1) for p in primes if p not in exclusions)


def totient_ratio_check(n_max: int) -> BoundReport:
    """N/phi(N) <= 1.79 loglog N + 2.5/loglog N for 3 <= N <= n_max.

    Screened in double precision, then the closest N is redone at 50 digits.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    ph = phi_sieve(n_max)[3:].astype(np.float64)
    N = np.arange(3, n_max + 1, dtype=np.float64)
    ll = np.log(np.log(N))
    gap = N / ph - (1.79 * ll + 2.5 / ll)
    worst = int(np.argmax(gap)) + 3
    with mp.workdps(DPS):
        w = loglog(worst)
        lhs = mpf(worst) / euler_phi(worst)
        rhs = _D("1.79") * w + _D("2.5") / w
        return make_report(
            "S4.1-totient-ratio", f"max over 3<=N<={n_max} of N/phi(N) - bound (worst N={worst})", lhs - rhs, "<=", 0
        )


# ------------------------------------------------------- chain items

def _sd_leading_constant():
    # d (-3/(4d) + 1/(d+1) + 1/(2d+1) + 1/(3d+1)) increases in d towards 13/12
    d = Fraction(10**12)
    at_large = -Fraction(3, 4) + d / (d + 1) + d / (2 * d + 1) + d / (3 * d + 1)
    assert at_large < Fraction(13, 12)
    return mpf(13) / 12


def _sd_domination(pairs=((2, 1), (3, 1), (3, 2), (5, 3)), d_range=range(31, 401), limit=10**5):
    worst = None
    for x1, y1 in pairs:
        for d in d_range:
            gap = sd_empirical(x1, y1, d, limit) - sd_upper_bound(d, max(3, x1))
            worst = gap if worst is None or gap > worst else worst
    return worst


def _reciprocal_prime_constant(limit=10**5):
    ps = [p for p in primes_up_to(limit).tolist() if p >= 7]
    # the tail over primes above limit is below sum_{n > limit} 1/(n(n-1)) = 1/limit
    return mp.log(mpf(15) / 4) + mp.fsum(mpf(1) / (p * (p - 1)) for p in ps) + mpf(1) / limit


def _mertens_gap(lo=287, hi=10**5):
    # between consecutive primes the sum is flat and the bound grows, so primes are the worst points
    ps = primes_up_to(hi)
    csum = np.cumsum(1.0 / ps)
    sel = ps >= lo
    t = ps[sel].astype(np.float64)
    lt = np.log(t)
    gap = csum[sel] - (np.log(lt) + 0.2615 + 1 / (2 * lt * lt))
    worst = int(ps[sel][int(np.argmax(gap))])
    return mertens_sum(worst) - (loglog(worst) + _D("0.2615") + 1 / (2 * mp.log(worst) ** 2))


def _tail_sum_bound(x=73):
    # the six-term bound on the sum of T_d over d > x^3, at x = 73 (it decreases in x)
    x = mpf(x)
    l3, ll3, ll = mp.log(x**3), loglog(x**3), loglog(x)
    x2 = x * x
    return (
        _D("2.168") / x2
        + 2 / (x2 * mp.log(x**3 + 1))
        + _D("7.16") * ll3**2 / x2
        + 10 / x2
        + _D("7.16") * ll3 * ll / (x2 * l3)
        + 10 * ll / (x2 * l3 * ll3)
    )


def _final_ratio_min():
    """Least x1 phi(z d1)/z over odd coprime x1 > y1, d1 x1 <= 73, 1 <= z <= d1 (x1 + y1)."""
    ph = phi_sieve(73 * 146)
    best = None
    for x1 in range(3, 74, 2):
        for y1 in range(1, x1, 2):
            if math.gcd(x1, y1) != 1:
                continue
            for d1 in range(1, 73 // x1 + 1):
                for z in range(1, d1 * (x1 + y1) + 1):
                    v = Fraction(x1 * int(ph[z * d1]), z)
                    if best is None or v < best:
                        best = v
    return mpf(best.numerator) / best.denominator


def _min_three_phi_ratio():
    return min(Fraction(3 * euler_phi(z), z) for z in range(1, 5))


@dataclass(frozen=True)
class ChainItem:
    bound_id: str
    section: str
    description: str
    relation: str
    claimed: str
    compute: Callable[[], object]

    def evaluate(self) -> BoundReport:
        with mp.workdps(DPS):
            v = self.compute()
            if isinstance(v, Fraction):
                v = mpf(v.numerator) / v.denominator
            return make_report(self.bound_id, self.description, v, self.relation, _D(self.claimed))


L = mp.log  # shorthand inside the table below


def _items() -> list[ChainItem]:
    D = _D
    return [
        # S_d bound
        ChainItem("L3.3-1.084", "3.3", "sup_d d(-3/(4d)+1/(d+1)+1/(2d+1)+1/(3d+1))", "<", "1.084", _sd_leading_constant),
        ChainItem("L3.3-neg", "3.3", "1/log 30 - loglog 4", "<", "0", lambda: 1 / L(30) - loglog(4)),
        ChainItem("L3.3-sd", "3.3", "max(sd_empirical - sd_upper_bound), 31<=d<=400, p<=1e5", "<", "0", _sd_domination),
        # prime products over a single rank
        ChainItem("L3.5-2.8431", "3.5", "2.084 + 1/log174 + 2loglog73/log173", "<", "2.8431",
                  lambda: D("2.084") + 1 / L(174) + 2 * loglog(73) / L(173)),
        ChainItem("L3.5-3.7341-d173", "3.5", "1.7341 loglog 173 (absorbs 2.8431 at d=173)", ">", "2.8431",
                  lambda: D("1.7341") * loglog(173)),
        ChainItem("L3.5-3.7341-d174", "3.5", "1.7341 loglog 174 (absorbs 2.8431 at d=174)", ">", "2.8431",
                  lambda: D("1.7341") * loglog(174)),
        ChainItem("L3.5-ratio", "3.5", "loglog 173 / 172", "<", "1", lambda: loglog(173) / 172),
        ChainItem("L3.5-0.03834", "3.5", "3.7341 loglog 346 / 172", "<", "0.03834", lambda: D("3.7341") * loglog(346) / 172),
        # the x1 >= 10 case
        ChainItem("L3.6-1.8443", "3.6", "prod_{4<=i<=16, p!=17} p/(p-1)", "<", "1.8443", lambda: prime_product(4, 16, {17})),
        ChainItem("L3.6-1.4673", "3.6", "exp(10 * 0.03834)", "<", "1.4673", lambda: mp.exp(10 * D("0.03834"))),
        ChainItem("L3.6-2.7062", "3.6", "1.8443 * 1.4673", "<", "2.7062", lambda: D("1.8443") * D("1.4673")),
        ChainItem("L3.6-2.93", "3.6", "11 (1/2)(2/3)(4/5)", ">", "2.93", lambda: Fraction(11 * 8, 30)),
        ChainItem("L3.6-contradiction", "3.6", "2.93 against 2.7062", ">", "2.7062", lambda: D("2.93")),
        # the p(m) < 173 case
        ChainItem("L3.7-1.72979", "3.7", "prod_{4<=i<=13, p!=17} p/(p-1)", "<", "1.72979", lambda: prime_product(4, 13, {17})),
        ChainItem("L3.7-2-vs-1.72979", "3.7", "1.72979 against 2", "<", "2", lambda: D("1.72979")),
        ChainItem("L3.7-1.65", "3.7", "prod_{4<=i<=10, p!=17} p/(p-1)", "<", "1.65", lambda: prime_product(4, 10, {17})),
        ChainItem("L3.7-1.08", "3.7", "exp(2 * 0.03834)", "<", "1.08", lambda: mp.exp(2 * D("0.03834"))),
        ChainItem("L3.7-1.782", "3.7", "1.65 * 1.08", "<", "2", lambda: D("1.65") * D("1.08")),
        ChainItem("L3.7-1.4", "3.7", "prod_{4<=i<=6} p/(p-1)", "<", "1.4", lambda: prime_product(4, 6)),
        ChainItem("L3.7-1.17", "3.7", "exp(4 * 0.03834)", "<", "1.17", lambda: mp.exp(4 * D("0.03834"))),
        ChainItem("L3.7-1.638", "3.7", "1.4 * 1.17", "<", "2", lambda: D("1.4") * D("1.17")),
        ChainItem("L3.7-1.34", "3.7", "(1+1/6)(1+1/12)(1+1/18)", "<", "1.34",
                  lambda: Fraction(7, 6) * Fraction(13, 12) * Fraction(19, 18)),
        ChainItem("L3.7-1.5", "3.7", "min_{1<=z<=4} 3 phi(z)/z against 1.34", ">", "1.34", _min_three_phi_ratio),
        # x > 73 with p(m) <= x
        ChainItem("S4.1-1.38", "4.1", "log(15/4) + sum_{p>=7} 1/(p(p-1)) (tail bounded by 1/1e5)", "<", "1.38", _reciprocal_prime_constant),
        ChainItem("S4.1-0.2772", "4.1", "0.2615 + 1/(2 log^2 286)", "<", "0.2772", lambda: D("0.2615") + 1 / (2 * L(286) ** 2)),
        ChainItem("S4.1-mertens", "4.1", "max_{287<=t<=1e5} sum_{p<=t} 1/p - (loglog t + 0.2615 + 1/(2log^2 t))", "<", "0",
                  _mertens_gap),
        ChainItem("S4.1-1.0357", "4.1", "log 6 + 0.2772 - 1/2 - 1/3 - 1/5", "<", "1.0357",
                  lambda: L(6) + D("0.2772") - mpf(31) / 30),
        # the printed 1.38 + 1.0357 is exactly 2.4157, so the step is checked on the unrounded terms
        ChainItem("S4.1-2.4157", "4.1", "(the 1.38 term) + (the 1.0357 term), unrounded", "<", "2.4157",
                  lambda: _reciprocal_prime_constant() + L(6) + D("0.2772") - mpf(31) / 30),
        ChainItem("S4.1-0.1667", "4.1", "x^3 / (6 x^3)", "<", "0.1667", lambda: mpf(1) / 6),
        ChainItem("S4.1-0.04", "4.1", "six-term bound on sum of T_d, d > x^3, at x = 73", "<", "0.04", _tail_sum_bound),
        ChainItem("S4.1-2.63", "4.1", "2.4157 + 0.1667 + 0.04", "<", "2.63", lambda: D("2.4157") + D("0.1667") + D("0.04")),
        ChainItem("S4.1-final", "4.1", "log 73 - loglog 73", ">", "2.83", lambda: L(73) - loglog(73)),
        ChainItem("S4.1-contradiction", "4.1", "2.83 against 2.63", ">", "2.63", lambda: D("2.83")),
        # x > 73 with p(m) > x
        ChainItem("S4.2-0.07", "4.2", "log 2 + 0.2615 + 1/(2 log^2 5329) - 1/2 - 1/3 - 1/5", "<", "-0.07",
                  lambda: L(2) + D("0.2615") + 1 / (2 * L(5329) ** 2) - mpf(31) / 30),
        ChainItem("S4.2-1.31", "4.2", "(the 1.38 term) + (the -0.07 term), unrounded", "<", "1.31",
                  lambda: _reciprocal_prime_constant() + L(2) + D("0.2615") + 1 / (2 * L(5329) ** 2) - mpf(31) / 30),
        ChainItem("S4.2-1.8659", "4.2", "1.084 + 1/log 159 + 2 loglog 73/log 146", "<", "1.8659",
                  lambda: D("1.084") + 1 / L(159) + 2 * loglog(73) / L(146)),
        ChainItem("S4.2-3.16", "4.2", "1.16 loglog 158 (absorbs 1.8659 for d >= 158)", ">", "1.8659",
                  lambda: D("1.16") * loglog(158)),
        ChainItem("S4.2-4loglog", "4.2", "3.16 loglog 158 against 4 loglog 79 (d = 2r, r = 79)", "<", "0",
                  lambda: D("3.16") * loglog(158) - 4 * loglog(79)),
        ChainItem("S4.2-f79", "4.2", "f(79)", "<", "0.15", lambda: f_of_p(79)),
        ChainItem("S4.2-0.68", "4.2", "4 (exp 0.15 - 1)", "<", "0.68", lambda: 4 * (mp.exp(D("0.15")) - 1)),
        ChainItem("S4.2-2", "4.2", "1.31 + 0.68", "<", "2", lambda: D("1.31") + D("0.68")),
        ChainItem("S4.2-final", "4.2", "log 73 - loglog 73", ">", "2.8", lambda: L(73) - loglog(73)),
        # x <= 73
        ChainItem("S4.3-4.4903", "4.3", "3.7341 loglog 346 / loglog 173 (d = 2r, r >= 173)", "<=", "4.4903",
                  lambda: D("3.7341") * loglog(346) / loglog(173)),
        ChainItem("S4.3-f173", "4.3", "f(173)", "<", "0.082", lambda: f_of_p(173)),
        ChainItem("S4.3-0.384", "4.3", "4.4903 (exp 0.082 - 1)", "<", "0.384", lambda: D("4.4903") * (mp.exp(D("0.082")) - 1)),
        ChainItem("S4.3-exp0.3833", "4.3", "exp 0.3833 (as printed)", "<", "1.47", lambda: mp.exp(D("0.3833"))),
        ChainItem("S4.3-exp0.384", "4.3", "exp 0.384 (as derived)", "<", "1.47", lambda: mp.exp(D("0.384"))),
        ChainItem("S4.3-final", "4.3", "min x1 phi(z d1)/z over x1 d1 <= 73, z <= x + y", ">", "1.47", _final_ratio_min),
    ]


ITEMS = {it.bound_id: it for it in _items()}
SECTIONS = ("3.3", "3.5", "3.6", "3.7", "4.1", "4.2", "4.3")


def bound_ids() -> list[str]:
    return list(ITEMS) + ["S4.1-totient-ratio"]


def evaluate_bound(bound_id: str) -> BoundReport:
    if bound_id == "S4.1-totient-ratio":
        return totient_ratio_check(10**5)
    try:
        item = ITEMS[bound_id]
    except KeyError:
        raise KeyError(f"unknown bound id {bound_id!r}") from None
    return item.evaluate()


def chain_audit(section: str = "all") -> list[BoundReport]:
    if section != "all" and section not in SECTIONS:
        raise KeyError(f"unknown section {section!r}")
    out = [it.evaluate() for it in ITEMS.values() if section in ("all", it.section)]
    if section in ("all", "4.1"):
        out.append(totient_ratio_check(10**5))
    return out
