"""Sharp bounds on P(S >= k) from the first three normalized moments.

The maximum (minimum) of the tail over all laws on {0..n} sharing a moment
triple is the height of the upper (lower) hull of the tail-indicator
prismatoid over that triple. Both hulls project to simplex subdivisions of
the moment polytope (see geometry.subdivision), so a query reduces to:

1. locate the subdivision simplex containing the triple,
2. read off the extremal law as the barycentric masses on its vertices,
3. the bound is that law's tail at k.

Location has a closed-form fast path. Blocks 1-2 of a subdivision fan
around the edge (v_0, v_apex): the fan position of a triple is the floor of

    q_low = n (n mu3 - apex mu2) / (n mu2 - apex mu1).

Blocks 3-4 fan around (v_apex, v_n), with fan position the floor of

    q_high = n (n mu3 - (apex+n) mu2 + apex mu1) / (n mu2 - (apex+n) mu1 + apex).

A floor landing inside a family range nominates that family's simplex, whose
candidate masses also have closed forms; a negative candidate mass means the
triple actually lies in the other fan. Degenerate cases (zero denominator,
floor ties, floors in the gap between ranges, apex 0 or n) fall back to a
barycentric scan over the subdivision, which is always correct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import format_sig
from .geometry import (
    LOWER,
    UPPER,
    MembershipResult,
    Simplex,
    combination_on_curve,
    membership,
    subdivision,
)
from .moments import (
    Distribution,
    InfeasibleMomentsError,
    MomentTriple,
    as_moment_triple,
    moment_triple_of,
)

__all__ = [
    "LocatedSimplex",
    "BoundsResult",
    "fan_index_low",
    "fan_index_high",
    "low_fan_masses",
    "high_fan_masses",
    "locate_by_scan",
    "locate",
    "upper_bound",
    "lower_bound",
    "sharp_bounds",
    "sharp_bounds_batch",
]


@dataclass(frozen=True)
class LocatedSimplex:
    """A subdivision simplex containing the query triple, together with the
    query's barycentric masses on its vertices. star_index is the fan index
    that nominated it on the closed-form path (None on the scan path)."""

    simplex: Simplex
    masses: tuple[Fraction, ...]
    star_index: int | None
    fast_path: bool

    def distribution(self, n: int) -> Distribution:
        return Distribution.from_support(n, zip(self.simplex.indices, self.masses))


@dataclass(frozen=True)
class BoundsResult:
    """Sharp reliability bounds for one query, with their witnesses.

    min and max are attained exactly by argmin and argmax. Block labels
    record which facet family carried each extremum (None for k = 0 and for
    boundary queries). degenerate marks boundary queries, where the moments
    pin down a unique law and the interval collapses."""

    n: int
    k: int
    query: MomentTriple
    min: Fraction
    max: Fraction
    argmin: Distribution
    argmax: Distribution
    min_block: int | None
    max_block: int | None
    degenerate: bool

    def to_text(self) -> str:
        def dist_pairs(d: Distribution) -> str:
            return " ".join("%d:%s" % (i, d.masses[i]) for i in d.support())

        def block(b: int | None) -> str:
            return "none" if b is None else str(b)

        lines = [
            "n = %d" % self.n,
            "k = %d" % self.k,
            "mu = %s %s %s" % self.query.coords,
            "min = %s ~ %s" % (self.min, format_sig(self.min)),
            "max = %s ~ %s" % (self.max, format_sig(self.max)),
            "argmin = %s" % dist_pairs(self.argmin),
            "argmax = %s" % dist_pairs(self.argmax),
            "min_block = %s" % block(self.min_block),
            "max_block = %s" % block(self.max_block),
            "degenerate = %s" % ("true" if self.degenerate else "false"),
        ]
        return "\n".join(lines)


def _fan_quotient_low(mu: MomentTriple, apex: int, n: int) -> Fraction | None:
    den = n * mu.mu2 - apex * mu.mu1
    if den == 0:
        return None
    return n * (n * mu.mu3 - apex * mu.mu2) / den


def _fan_quotient_high(mu: MomentTriple, apex: int, n: int) -> Fraction | None:
    den = n * mu.mu2 - (apex + n) * mu.mu1 + apex
    if den == 0:
        return None
    return n * (n * mu.mu3 - (apex + n) * mu.mu2 + apex * mu.mu1) / den


def _low_range(apex: int, n: int, i: int) -> bool:
    return 1 <= i <= apex - 2 or apex + 1 <= i <= n - 1


def _high_range(apex: int, n: int, t: int) -> bool:
    return 0 <= t <= apex - 2 or apex + 1 <= t <= n - 2


def fan_index_low(mu: MomentTriple, apex: int, n: int) -> int | None:
    """Floor of the low-fan quotient when it is defined and lands inside a
    block 1 or block 2 range; None otherwise."""
    q = _fan_quotient_low(mu, apex, n)
    if q is None:
        return None
    i = math.floor(q)
    return i if _low_range(apex, n, i) else None


def fan_index_high(mu: MomentTriple, apex: int, n: int) -> int | None:
    """Floor of the high-fan quotient when it is defined and lands inside a
    block 3 or block 4 range; None otherwise."""
    q = _fan_quotient_high(mu, apex, n)
    if q is None:
        return None
    t = math.floor(q)
    return t if _high_range(apex, n, t) else None


def low_fan_masses(
    mu: MomentTriple, apex: int, n: int, i: int
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Closed-form candidate masses on the simplex (0, apex, i, i+1), in
    vertex order (v_0, v_apex, v_i, v_{i+1}). Masses can be negative, which
    disqualifies the simplex. Raises on index collisions (zero denominators).
    """
    if i in (apex - 1, apex) or i == 0 or apex == 0:
        raise ValueError("degenerate index collision in low-fan masses")
    mu1, mu2, mu3 = mu.coords
    m_apex = (
        n
        * (n**2 * mu3 - (2 * i + 1) * n * mu2 + i * (i + 1) * mu1)
        / (apex * (apex - i) * (apex - i - 1))
    )
    m_i = (
        n
        * (n**2 * mu3 - (apex + i + 1) * n * mu2 + apex * (i + 1) * mu1)
        / (i * (apex - i))
    )
    m_i1 = (
        -n
        * (n**2 * mu3 - (apex + i) * n * mu2 + apex * i * mu1)
        / ((i + 1) * (apex - i - 1))
    )
    m_0 = 1 - m_apex - m_i - m_i1
    return (m_0, m_apex, m_i, m_i1)


def high_fan_masses(
    mu: MomentTriple, apex: int, n: int, t: int
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Closed-form candidate masses on the simplex (apex, t, t+1, n), in
    vertex order (v_apex, v_t, v_{t+1}, v_n)."""
    if t in (apex - 1, apex) or t >= n - 1 or apex == n:
        raise ValueError("degenerate index collision in high-fan masses")
    mu1, mu2, mu3 = mu.coords
    m_apex = (
        n
        * (
            n**2 * mu3
            - n * (n + 2 * t + 1) * mu2
            + (t * t + 2 * n * t + n + t) * mu1
            - (t + 1) * t
        )
        / ((apex - n) * (apex - t) * (apex - t - 1))
    )
    m_t = (
        -n
        * (
            n**2 * mu3
            - n * (n + apex + t + 1) * mu2
            + (apex + n + apex * n + apex * t + n * t) * mu1
            - apex
            - apex * t
        )
        / ((apex - t) * (n - t))
    )
    m_t1 = (
        n
        * (
            n**2 * mu3
            - n * (apex + n + t) * mu2
            + (n * t + apex * n + apex * t) * mu1
            - apex * t
        )
        / ((apex - t - 1) * (n - t - 1))
    )
    m_n = 1 - m_apex - m_t - m_t1
    return (m_apex, m_t, m_t1, m_n)


def locate_by_scan(mu: MomentTriple, apex: int, n: int, side: str) -> LocatedSimplex:
    """Barycentric scan over the subdivision, in family listing order; the
    first simplex containing the triple (all weights >= 0) wins, so shared
    faces resolve to the lower-indexed simplex."""
    for block, ix in subdivision(apex, n):
        lam = combination_on_curve(ix, n, mu.coords)
        if lam is not None and all(l >= 0 for l in lam):
            return LocatedSimplex(Simplex(ix, side, block), lam, None, False)
    raise RuntimeError(
        "no subdivision simplex contains the query; it should have failed membership"
    )


def locate(mu: MomentTriple, apex: int, n: int, side: str) -> LocatedSimplex:
    """Closed-form location with scan fallback on any degenerate reading."""
    if apex <= 0 or apex >= n:
        return locate_by_scan(mu, apex, n, side)
    q_low = _fan_quotient_low(mu, apex, n)
    q_high = _fan_quotient_high(mu, apex, n)
    if (
        q_low is None
        or q_high is None
        or q_low.denominator == 1
        or q_high.denominator == 1
    ):
        return locate_by_scan(mu, apex, n, side)
    i = math.floor(q_low)
    t = math.floor(q_high)
    if i in (apex - 1, apex) or t in (apex - 1, apex):
        return locate_by_scan(mu, apex, n, side)
    candidates: list[LocatedSimplex] = []
    if _low_range(apex, n, i):
        masses = low_fan_masses(mu, apex, n, i)
        if all(m >= 0 for m in masses):
            block = 1 if i < apex else 2
            order = (0, i, i + 1, apex) if block == 1 else (0, apex, i, i + 1)
            reorder = {0: masses[0], apex: masses[1], i: masses[2], i + 1: masses[3]}
            lam = tuple(reorder[j] for j in order)
            candidates.append(
                LocatedSimplex(Simplex(order, side, block), lam, i, True)
            )
    if _high_range(apex, n, t):
        masses = high_fan_masses(mu, apex, n, t)
        if all(m >= 0 for m in masses):
            block = 3 if t < apex else 4
            order = (t, t + 1, apex, n) if block == 3 else (apex, t, t + 1, n)
            reorder = {apex: masses[0], t: masses[1], t + 1: masses[2], n: masses[3]}
            lam = tuple(reorder[j] for j in order)
            candidates.append(
                LocatedSimplex(Simplex(order, side, block), lam, t, True)
            )
    if len(candidates) == 1:
        return candidates[0]
    # zero or two proper candidates: a shared-face or inconsistent reading
    return locate_by_scan(mu, apex, n, side)


def _side_bound(
    mu: MomentTriple, k: int, n: int, side: str
) -> tuple[Fraction, Distribution, int]:
    apex = k if side == UPPER else k - 1
    loc = locate(mu, apex, n, side)
    dist = loc.distribution(n)
    return dist.tail(k), dist, loc.simplex.block


def _any_consistent_distribution(mu: MomentTriple) -> Distribution:
    """Some law matching the triple: scan the apex-0 triangulation."""
    return locate_by_scan(mu, 0, mu.n, UPPER).distribution(mu.n)


def upper_bound(query, k: int) -> tuple[Fraction, Distribution, int | None]:
    """Sharp maximum of P(S >= k) with its witness and block label."""
    result = sharp_bounds(query, k)
    return result.max, result.argmax, result.max_block


def lower_bound(query, k: int) -> tuple[Fraction, Distribution, int | None]:
    """Sharp minimum of P(S >= k) with its witness and block label."""
    result = sharp_bounds(query, k)
    return result.min, result.argmin, result.min_block


def _boundary_result(mu: MomentTriple, k: int, mem: MembershipResult) -> BoundsResult:
    dist = Distribution.from_support(mu.n, zip(mem.face, mem.weights))
    value = dist.tail(k)
    return BoundsResult(mu.n, k, mu, value, value, dist, dist, None, None, True)


def sharp_bounds(query, k: int) -> BoundsResult:
    """Sharp [min, max] of P(S >= k) over all laws on {0..n} matching the
    query moments, with the unique extremal laws attaining them.

    The query may be a Distribution, RawMoments, MomentTriple,
    DeFinettiParams or BahadurParams; n is taken from it. Raises
    InfeasibleMomentsError when the moments match no law at all.
    """
    mu = as_moment_triple(query)
    n = mu.n
    if not 0 <= k <= n:
        raise ValueError("k must lie in {0..n}")
    mem = membership(mu)
    if mem.kind == "outside":
        raise InfeasibleMomentsError(
            "moment triple lies outside the n=%d moment polytope "
            "(separating face %s)" % (n, list(mem.violated))
        )
    if mem.kind == "boundary":
        return _boundary_result(mu, k, mem)
    if k == 0:
        dist = _any_consistent_distribution(mu)
        one = Fraction(1)
        return BoundsResult(n, k, mu, one, one, dist, dist, None, None, False)
    max_value, argmax, max_block = _side_bound(mu, k, n, UPPER)
    min_value, argmin, min_block = _side_bound(mu, k, n, LOWER)
    assert min_value <= max_value
    assert moment_triple_of(argmax) == mu and moment_triple_of(argmin) == mu
    return BoundsResult(
        n, k, mu, min_value, max_value, argmin, argmax, min_block, max_block, False
    )


def sharp_bounds_batch(queries) -> list[BoundsResult]:
    """Evaluate many (query, k) pairs; pure and order-preserving."""
    return [sharp_bounds(query, k) for query, k in queries]
