"""Exhaustive sweeps over a SearchBox and certification against the known families.

Work is split into contiguous blocks of the (x, y) grid.  Each block is a
pure function of (eq, box, pairs), so blocks can run in worker processes and
the merged, sorted result does not depend on how many workers were used.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .arith import factor, merge_factorizations, phi_from_factorization
from .equations import (
    SolutionRecord,
    cheap_reject,
    check_solution,
    known_families,
    make_record,
    quotient_pair,
    tested_family_exponents,
)
from .errors import EffortExhausted
from .model import CandidateSolution, EquationId, SearchBox


class Verdict(enum.Enum):
    MATCH = "MATCH"
    UNEXPECTED_SOLUTION = "UNEXPECTED_SOLUTION"
    INCOMPLETE = "INCOMPLETE"


@dataclass(frozen=True)
class Unresolved:
    candidate: CandidateSolution
    cofactor: int

    def to_json(self) -> dict:
        c = self.candidate
        return {"eq": c.eq.value, "x": c.x, "y": c.y, "z": c.z, "m": c.m, "n": c.n, "cofactor": str(self.cofactor)}


@dataclass
class CertificationReport:
    eq: EquationId
    box: SearchBox
    found: list[SolutionRecord]
    unresolved: list[Unresolved]
    checked: int
    cardinality: int
    surplus: list[CandidateSolution] = field(default_factory=list)
    missing: list[CandidateSolution] = field(default_factory=list)
    verdict: Verdict = Verdict.INCOMPLETE

    @property
    def nontrivial(self) -> list[SolutionRecord]:
        return [r for r in self.found if not r.trivial]

    def summary(self) -> dict:
        d = {
            "eq": self.eq.value,
            "verdict": self.verdict.value,
            "cardinality": self.cardinality,
            "checked": self.checked,
            "unresolved": len(self.unresolved),
            "found": len(self.found),
            "nontrivial": len(self.nontrivial),
            "distinct_nontrivial_abs": len({_abs_key(r.candidate) for r in self.nontrivial}),
            "surplus": [list(c.as_tuple()) for c in self.surplus],
            "missing": [list(c.as_tuple()) for c in self.missing],
            "box": self.box.describe(),
        }
        if self.eq is EquationId.E16:
            d["family_exponents_tested"] = tested_family_exponents(self.box.m_max)
        return d


def _abs_key(c: CandidateSolution) -> tuple:
    # sign and swap variants of a signed solution collapse to one entry
    return (max(abs(c.x), abs(c.y)), min(abs(c.x), abs(c.y)), c.z, c.m, c.n)


# ------------------------------------------------------------------ z scan

def _z_scan(eq, x, y, m, n, zs, cap, seed) -> tuple[list[int], list[tuple[int, int]]]:
    """Solutions z in zs of phi(zA) = zB, plus (z, cofactor) pairs left open."""
    A, B = quotient_pair(eq, x, y, m, n)
    if B > A:
        return [], []  # phi(zA) <= zA < zB
    open_zs = [z for z in zs if not cheap_reject(z * A, z * B)]
    if not open_zs:
        return [], []
    try:
        fa = factor(A, cap=cap, seed=seed)
    except EffortExhausted as e:
        return [], [(z, e.cofactor) for z in open_zs]
    hits = []
    for z in open_zs:
        if phi_from_factorization(merge_factorizations((fa, factor(z)))) == z * B:
            hits.append(z)
    return hits, []


def z_solve(eq: EquationId, x: int, y: int, m: int, n: int, z_range, cap: int, seed: int = 0) -> list[int]:
    """All z in z_range with phi(z A) = z B, where A, B are the two quotients.

    >>> z_solve(EquationId.E14, 2, 1, 3, 1, range(1, 21), 10**6)
    [2, 4, 6, 8, 12, 16, 18]
    """
    CandidateSolution(eq, x, y, 1, m, n)  # validates shape and parity
    hits, stuck = _z_scan(eq, x, y, m, n, list(z_range), cap, seed)
    if stuck:
        raise EffortExhausted(stuck[0][1])
    return hits


# ------------------------------------------------------------------ sweep

def _sweep_block(eq: EquationId, box: SearchBox, pairs: list[tuple[int, int]]):
    found, unresolved, checked = [], [], 0
    exps = box.exponent_pairs(eq)
    for x, y in pairs:
        zs = box.z_values(x, y) if eq.has_z else None
        for m, n in exps:
            if eq.has_z:
                hits, stuck = _z_scan(eq, x, y, m, n, zs, box.effort_cap, box.seed)
                for z in hits:
                    found.append(make_record(CandidateSolution(eq, x, y, z, m, n)))
                for z, cof in stuck:
                    unresolved.append(Unresolved(CandidateSolution(eq, x, y, z, m, n), cof))
                checked += len(zs) - len(stuck)
            else:
                c = CandidateSolution(eq, x, y, None, m, n)
                try:
                    if check_solution(c, box.effort_cap, box.seed):
                        found.append(make_record(c))
                    checked += 1
                except EffortExhausted as e:
                    unresolved.append(Unresolved(c, e.cofactor))
    return found, unresolved, checked


def _blocks(items: list, count: int) -> list[list]:
    count = max(1, min(count, len(items)))
    size, extra = divmod(len(items), count)
    out, start = [], 0
    for i in range(count):
        end = start + size + (1 if i < extra else 0)
        out.append(items[start:end])
        start = end
    return out


def sweep(eq: EquationId, box: SearchBox, workers: int = 1) -> CertificationReport:
    """Check every tuple of the box exactly and certify the result."""
    if workers < 1:
        raise ValueError("workers must be at least 1")
    box.check_for(eq)
    pairs = box.pairs(eq)
    # more blocks than workers keeps the pool busy; block layout stays static
    blocks = _blocks(pairs, workers * 4 if workers > 1 else 1)
    if workers == 1:
        parts = [_sweep_block(eq, box, b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_block, [eq] * len(blocks), [box] * len(blocks), blocks))
    found = sorted((r for p in parts for r in p[0]), key=lambda r: r.candidate.key())
    unresolved = sorted((u for p in parts for u in p[1]), key=lambda u: u.candidate.key())
    checked = sum(p[2] for p in parts)
    report = CertificationReport(eq, box, found, unresolved, checked, box.cardinality(eq))
    report.verdict = compare_to_known(report, eq, box)
    return report


def family_differences(found: list[SolutionRecord], eq: EquationId, box: SearchBox):
    """(surplus, missing): nontrivial records outside the families, and
    family members in the box that were not found."""
    got = {r.candidate for r in found if not r.trivial}
    expected = set(known_families(eq, box))
    key = CandidateSolution.key
    return sorted(got - expected, key=key), sorted(expected - got, key=key)


def compare_to_known(report: CertificationReport, eq: EquationId, box: SearchBox) -> Verdict:
    """Set equality of nontrivial findings with the families.

    A surplus wins over incompleteness: an extra solution is a discrepancy
    whatever else is unresolved.  Missing family members also count as a
    discrepancy, unless unresolved tuples could account for them.
    """
    report.surplus, report.missing = family_differences(report.found, eq, box)
    if report.surplus or any(r.family.value == "UNEXPECTED" for r in report.found):
        return Verdict.UNEXPECTED_SOLUTION
    if report.unresolved:
        return Verdict.INCOMPLETE
    if report.missing:
        return Verdict.UNEXPECTED_SOLUTION
    return Verdict.MATCH
