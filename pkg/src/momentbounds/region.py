"""Feasible-region sweeps over the first Bahadur parameter.

Holding the standardized correlations fixed and sweeping the marginal
probability w1 traces out a band of attainable tail probabilities.  The
sweep grid, the per-point bounds, and the bisection-refined endpoints of
the feasible w1 window all live here; the CLI only formats them.

With fewer than three fixed parameters the closed forms do not apply, so
those sweeps go through the exhaustive oracle instead; the three-moment
sweep uses the geometric fast path.  A fixed correlation parameter
presupposes nondegenerate margins, so w1 in {0, 1} is reported infeasible
whenever rho2 or rho3 is pinned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import sharp_bounds
from .exact import Rational, format_sig
from .geometry import membership
from .moments import (
    BahadurParams,
    InfeasibleMomentsError,
    MomentTriple,
    as_moment_triple,
)
from .oracle import lp_bounds_prefix

__all__ = [
    "RegionRow",
    "moment_prefix",
    "sweep",
    "feasible_interval",
    "rows_to_csv",
]

CSV_HEADER = "w1,min,max,feasible"

_SCAN_GRID = 512
_DEFAULT_TOL = Fraction(1, 10**6)


@dataclass(frozen=True)
class RegionRow:
    """One sweep sample: bounds of the tail at this w1, if feasible."""

    w1: Rational
    min_bound: Rational | None
    max_bound: Rational | None
    feasible: bool

    def __post_init__(self):
        if not self.feasible and not (
            self.min_bound is None and self.max_bound is None
        ):
            raise ValueError("infeasible rows carry no bound values")


def moment_prefix(n: int, w1, rho2=None, rho3=None) -> tuple[Fraction, ...]:
    """Leading normalized moments pinned by (w1 [, rho2 [, rho3]]).

    Length of the result equals the number of parameters given.  Raises
    ValueError outside the parameter domain and when rho3 is given
    without rho2.
    """
    w1 = Fraction(w1)
    if rho3 is not None and rho2 is None:
        raise ValueError("rho3 requires rho2")
    if rho2 is None:
        if not 0 <= w1 <= 1:
            raise ValueError("w1 must lie in [0, 1]")
        return (w1,)
    if not 0 < w1 < 1:
        raise ValueError("w1 must lie in (0, 1) when correlations are fixed")
    if rho3 is None:
        rho2 = Fraction(rho2)
        w2 = w1 * w1 + rho2 * w1 * (1 - w1)
        raw2 = n * w1 + n * (n - 1) * w2
        mu2 = raw2 / n**2
        if not 0 <= mu2 <= 1:
            raise ValueError("second moment escapes [0, 1]")
        return (w1, mu2)
    params = BahadurParams(n=n, w1=w1, rho2=Fraction(rho2), rho3=Fraction(rho3))
    return as_moment_triple(params).coords


def _row(n: int, k: int, w1: Fraction, rho2, rho3) -> RegionRow:
    try:
        prefix = moment_prefix(n, w1, rho2, rho3)
    except (ValueError, InfeasibleMomentsError):
        return RegionRow(w1=w1, min_bound=None, max_bound=None, feasible=False)
    try:
        if len(prefix) == 3:
            triple = MomentTriple(n=n, mu1=prefix[0], mu2=prefix[1], mu3=prefix[2])
            result = sharp_bounds(triple, k)
            lo, hi = result.min, result.max
        else:
            report = lp_bounds_prefix(n, prefix, k)
            lo, hi = report.min, report.max
    except InfeasibleMomentsError:
        return RegionRow(w1=w1, min_bound=None, max_bound=None, feasible=False)
    return RegionRow(w1=w1, min_bound=lo, max_bound=hi, feasible=True)


def sweep(n: int, k: int, rho2=None, rho3=None, steps: int = 101) -> list[RegionRow]:
    """Evaluate bounds on a uniform w1 grid of the given size."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    rho2 = None if rho2 is None else Fraction(rho2)
    rho3 = None if rho3 is None else Fraction(rho3)
    if rho3 is not None and rho2 is None:
        raise ValueError("rho3 requires rho2")
    return [
        _row(n, k, Fraction(j, steps - 1), rho2, rho3) for j in range(steps)
    ]


def _feasible_predicate(n: int, rho2, rho3):
    def feasible(w1: Fraction) -> bool:
        try:
            prefix = moment_prefix(n, w1, rho2, rho3)
        except (ValueError, InfeasibleMomentsError):
            return False
        if len(prefix) == 3:
            triple = MomentTriple(n=n, mu1=prefix[0], mu2=prefix[1], mu3=prefix[2])
            return membership(triple).is_inside
        try:
            lp_bounds_prefix(n, prefix, 0)
        except InfeasibleMomentsError:
            return False
        return True

    return feasible


def feasible_interval(
    n: int, rho2=None, rho3=None, tol: Fraction = _DEFAULT_TOL
) -> tuple[Fraction, Fraction] | None:
    """Endpoints of the feasible w1 window, refined by bisection.

    Scans a fixed interior grid, then bisects each boundary bracket until
    it is narrower than tol and returns the bracket midpoints.  Returns
    None when no grid point is feasible.  With disconnected feasibility
    (not observed for any tested parameter choice) this reports the outer
    envelope.
    """
    rho2 = None if rho2 is None else Fraction(rho2)
    rho3 = None if rho3 is None else Fraction(rho3)
    if rho2 is None and rho3 is None:
        return (Fraction(0), Fraction(1))
    feasible = _feasible_predicate(n, rho2, rho3)
    grid = [Fraction(j, _SCAN_GRID) for j in range(1, _SCAN_GRID)]
    marks = [w for w in grid if feasible(w)]
    if not marks:
        return None

    def refine(good: Fraction, bad: Fraction) -> Fraction:
        while abs(good - bad) > tol:
            mid = (good + bad) / 2
            if feasible(mid):
                good = mid
            else:
                bad = mid
        return (good + bad) / 2

    lo = refine(marks[0], marks[0] - Fraction(1, _SCAN_GRID))
    hi = refine(marks[-1], marks[-1] + Fraction(1, _SCAN_GRID))
    return lo, hi


def rows_to_csv(rows) -> str:
    """Render sweep rows as CSV: fixed columns, 12 significant digits, LF."""
    lines = [CSV_HEADER]
    for row in rows:
        if row.feasible:
            lines.append(
                f"{format_sig(row.w1)},{format_sig(row.min_bound)},"
                f"{format_sig(row.max_bound)},true"
            )
        else:
            lines.append(f"{format_sig(row.w1)},,,false")
    return "\n".join(lines) + "\n"
