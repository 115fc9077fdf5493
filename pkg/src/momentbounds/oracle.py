"""Independent brute-force ground truth for the closed-form bounds.

Sharp bounds on the tail P(S >= k) subject to moment constraints form a
linear program over the probability simplex.  A bounded feasible LP attains
its optimum at a basic feasible solution, and a basic solution of a program
with m+1 equality constraints has at most m+1 positive masses.  Enumerating
every support of size <= m+1, solving the square moment system exactly and
keeping the nonnegative solutions therefore finds the exact optimum.

Nothing here shares logic with the geometric fast path: the systems are
solved through integer adjugates of power-basis matrices, so agreement
between the two modules is meaningful evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

from .exact import Rational, det_int
from .moments import (
    Distribution,
    InfeasibleMomentsError,
    MomentTriple,
    as_moment_triple,
    moment_triple_of,
)

__all__ = [
    "OracleReport",
    "VerifyReport",
    "lp_bounds",
    "lp_bounds_prefix",
    "random_distribution",
    "verify",
    "compare_reports",
]


@dataclass(frozen=True)
class OracleReport:
    """Result of the exhaustive basic-solution search."""

    n: int
    k: int
    num_moments: int
    min: Rational
    max: Rational
    argmin: Distribution
    argmax: Distribution
    supports_searched: int
    feasible_bases: int

    def to_text(self) -> str:
        lines = [
            f"n: {self.n}",
            f"k: {self.k}",
            f"moments used: {self.num_moments}",
            f"min: {self.min} ~ {float(self.min):.12g}",
            f"max: {self.max} ~ {float(self.max):.12g}",
            f"argmin: {_support_text(self.argmin)}",
            f"argmax: {_support_text(self.argmax)}",
            f"supports searched: {self.supports_searched}",
            f"feasible bases: {self.feasible_bases}",
        ]
        return "\n".join(lines)


def _support_text(dist: Distribution) -> str:
    return " ".join(f"{j}:{dist.masses[j]}" for j in dist.support())


@lru_cache(maxsize=None)
def _support_system(support: tuple[int, ...]) -> tuple[int, list[list[int]], list[list[int]]]:
    """Integer data for the square moment system on a support.

    For points x_0 < ... < x_{s-1} the matrix V has entries x_j^p for
    p = 0..s-1.  Returns (det V, adjugate of V, power rows x_j^p for
    p = 0..3).  det V is a Vandermonde determinant of distinct nonnegative
    integers, hence positive; adj(V) @ rhs gives det(V) times the solution.
    """
    s = len(support)
    pows = [[x**p for x in support] for p in range(4)]
    matrix = [pows[p][:] for p in range(s)]
    det = det_int([row[:] for row in matrix])
    adj = []
    for i in range(s):
        row = []
        for j in range(s):
            minor = [
                [matrix[r][c] for c in range(s) if c != i]
                for r in range(s)
                if r != j
            ]
            cof = det_int(minor) if minor else 1
            row.append(cof if (i + j) % 2 == 0 else -cof)
        adj.append(row)
    return det, adj, pows


def _raw_prefix(n: int, moments: tuple[Rational, ...]) -> list[Fraction]:
    """Normalized moments of S/n -> raw moments of S, with the 0th moment 1."""
    raw = [Fraction(1)]
    for j, mu in enumerate(moments, start=1):
        raw.append(mu * n**j)
    return raw


def lp_bounds_prefix(n: int, moments, k: int) -> OracleReport:
    """Exhaustive sharp bounds given the first len(moments) normalized moments.

    moments: sequence of 1 to 3 rationals, the leading moments of S/n.
    Raises InfeasibleMomentsError when no distribution on {0,..,n} has them.
    """
    moments = tuple(Fraction(m) for m in moments)
    m = len(moments)
    if not 1 <= m <= 3:
        raise ValueError("between one and three moments are supported")
    if m + 1 > n + 1:
        raise ValueError("support size m+1 exceeds the number of points")
    if k < 0 or k > n:
        raise ValueError(f"k must lie in 0..{n}, got {k}")

    raw = _raw_prefix(n, moments)
    scale = lcm(*[r.denominator for r in raw])
    rhs = [int(r * scale) for r in raw]

    searched = 0
    feasible = 0
    best_min = None
    best_max = None

    for size in range(1, m + 2):
        for support in combinations(range(n + 1), size):
            searched += 1
            det, adj, pows = _support_system(support)
            nu = [
                sum(adj[i][p] * rhs[p] for p in range(size))
                for i in range(size)
            ]
            if any(v < 0 for v in nu):
                continue
            consistent = True
            for p in range(size, m + 1):
                if sum(pows[p][j] * nu[j] for j in range(size)) != det * rhs[p]:
                    consistent = False
                    break
            if not consistent:
                continue
            feasible += 1
            tail_num = sum(nu[j] for j in range(size) if support[j] >= k)
            positive = tuple(x for x, v in zip(support, nu) if v > 0)
            entry = (tail_num, det, support, nu, positive)
            if best_min is None or _less(entry, best_min):
                best_min = entry
            if best_max is None or _greater(entry, best_max):
                best_max = entry

    if best_min is None:
        raise InfeasibleMomentsError(
            f"no distribution on 0..{n} matches the given {m} moment(s)"
        )

    total = scale  # nu scales by det; masses are nu / (det * scale)
    return OracleReport(
        n=n,
        k=k,
        num_moments=m,
        min=_tail_value(best_min, total),
        max=_tail_value(best_max, total),
        argmin=_distribution(best_min, total, n),
        argmax=_distribution(best_max, total, n),
        supports_searched=searched,
        feasible_bases=feasible,
    )


def _tail_value(entry, scale: int) -> Fraction:
    tail_num, det, _, _, _ = entry
    return Fraction(tail_num, det * scale)


def _distribution(entry, scale: int, n: int) -> Distribution:
    _, det, support, nu, _ = entry
    masses = [Fraction(0)] * (n + 1)
    for x, v in zip(support, nu):
        masses[x] = Fraction(v, det * scale)
    return Distribution(n=n, masses=tuple(masses))


def _tie_key(entry):
    _, _, _, _, positive = entry
    return (len(positive), positive)


def _less(entry, incumbent) -> bool:
    # exact comparison of tail_a/det_a vs tail_b/det_b (dets positive)
    ta, da = entry[0], entry[1]
    tb, db = incumbent[0], incumbent[1]
    lhs, rhs = ta * db, tb * da
    if lhs != rhs:
        return lhs < rhs
    return _tie_key(entry) < _tie_key(incumbent)


def _greater(entry, incumbent) -> bool:
    ta, da = entry[0], entry[1]
    tb, db = incumbent[0], incumbent[1]
    lhs, rhs = ta * db, tb * da
    if lhs != rhs:
        return lhs > rhs
    return _tie_key(entry) < _tie_key(incumbent)


def lp_bounds(query, k: int, num_moments: int = 3) -> OracleReport:
    """Sharp tail bounds by exhaustive enumeration, from any moment query.

    query is anything `as_moment_triple` accepts; only the first
    num_moments coordinates are used, so the 1- and 2-moment relaxations
    of the same instance are directly comparable.
    """
    mu = as_moment_triple(query)
    if not 1 <= num_moments <= 3:
        raise ValueError("num_moments must be 1, 2 or 3")
    return lp_bounds_prefix(mu.n, mu.coords[:num_moments], k)


def random_distribution(n: int, seed) -> Distribution:
    """Deterministic random pmf on {0,..,n} with exact rational masses.

    Generator contract (stable across runs and platforms): a
    ``random.Random`` seeded with the string ``"dist:{n}:{seed}"`` draws
    n+1 integer weights uniformly from 0..999; an all-zero draw is
    redrawn; masses are the weights normalized by their sum.
    """
    rng = random.Random(f"dist:{n}:{seed}")
    while True:
        weights = [rng.randint(0, 999) for _ in range(n + 1)]
        total = sum(weights)
        if total:
            break
    return Distribution(
        n=n, masses=tuple(Fraction(w, total) for w in weights)
    )


@dataclass(frozen=True)
class VerifyReport:
    """Exact comparison of the closed-form path against the oracle."""

    ok: bool
    n: int
    k: int
    mu: MomentTriple
    failures: tuple[str, ...]

    def to_text(self) -> str:
        head = "pass" if self.ok else "FAIL"
        out = [f"{head} n={self.n} k={self.k} mu={self.mu.coords}"]
        out.extend(f"  {f}" for f in self.failures)
        return "\n".join(out)


def compare_reports(closed, oracle: OracleReport, k: int) -> VerifyReport:
    """Check a closed-form BoundsResult against an oracle report.

    Reports every discrepancy: bound values, extremal-distribution moment
    reconstruction, and bound attainment.  Kept separate from `verify` so a
    corrupted result can be fed in to prove the comparison has teeth.
    """
    mu = closed.query
    failures = []
    if closed.min != oracle.min:
        failures.append(
            f"min mismatch: closed {closed.min} vs oracle {oracle.min}"
        )
    if closed.max != oracle.max:
        failures.append(
            f"max mismatch: closed {closed.max} vs oracle {oracle.max}"
        )
    for name, dist, bound in (
        ("argmin", closed.argmin, closed.min),
        ("argmax", closed.argmax, closed.max),
    ):
        if moment_triple_of(dist) != mu:
            failures.append(f"{name} does not reconstruct the query moments")
        if dist.tail(k) != bound:
            failures.append(f"{name} does not attain its bound")
    return VerifyReport(
        ok=not failures, n=closed.n, k=k, mu=mu, failures=tuple(failures)
    )


def verify(query, k: int) -> VerifyReport:
    """Run both paths on one instance and compare them exactly."""
    from .bounds import sharp_bounds

    closed = sharp_bounds(query, k)
    oracle = lp_bounds(closed.query, k)
    return compare_reports(closed, oracle, k)
