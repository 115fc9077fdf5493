"""Distributions on {0..n} and the equivalent moment parameterizations.

A law for a random count S on {0, .., n} can be carried as any of:

* raw power moments        E[S^j]
* normalized moments       E[(S/n)^j], each in [0, 1]
* factorial moments        E[S (S-1) .. (S-j+1)]
* de Finetti coordinates   w_j = E[X_1 .. X_j] of an exchangeable 0/1
  sequence X with S = X_1 + .. + X_n
* standardized correlations (w1, rho2, rho3) a la Bahadur

Conversions between all five are exact rational arithmetic, except for the
3/2 power linking rho3 and w3, which is exact when w1(1-w1) is a perfect
rational square and otherwise goes through a controlled-precision rational
approximation (absolute error below 1e-30) intended for the I/O boundary.

Type constructors enforce cheap necessary sanity conditions only; full
feasibility (is there really a distribution with these moments?) is the
geometry module's job, so conversions stay usable on infeasible probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    as_rational,
    binomial,
    sqrt_rational,
    stirling_first_signed,
    stirling_second,
)

__all__ = [
    "InfeasibleMomentsError",
    "Distribution",
    "RawMoments",
    "MomentTriple",
    "FactorialMoments",
    "DeFinettiParams",
    "BahadurParams",
    "moments_of",
    "moment_triple_of",
    "normalize",
    "denormalize",
    "raw_to_factorial",
    "factorial_to_raw",
    "factorial_to_definetti",
    "definetti_to_factorial",
    "bahadur_to_definetti",
    "definetti_to_bahadur",
    "pmf_from_factorial",
    "reliability_from_factorial",
    "as_moment_triple",
]


class InfeasibleMomentsError(ValueError):
    """Raised when moment-type values cannot belong to any distribution on
    {0..n}, or when a parameterization is undefined at the given point."""


def _rational_tuple(values) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


@dataclass(frozen=True)
class Distribution:
    """Probability masses on {0, 1, .., n}; exact, nonnegative, summing to 1."""

    n: int
    masses: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "masses", _rational_tuple(self.masses))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.masses) != self.n + 1:
            raise ValueError("need exactly n+1 masses")
        if any(m < 0 or m > 1 for m in self.masses):
            raise ValueError("masses must lie in [0, 1]")
        if sum(self.masses) != 1:
            raise ValueError("masses must sum to 1")

    @classmethod
    def from_support(cls, n: int, pairs) -> "Distribution":
        """Build from (index, mass) pairs; unmentioned indices get mass 0."""
        masses = [Fraction(0)] * (n + 1)
        for idx, mass in pairs:
            masses[idx] += as_rational(mass)
        return cls(n, tuple(masses))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.masses) if m != 0)

    def tail(self, k: int) -> Fraction:
        """P(S >= k)."""
        if not 0 <= k <= self.n:
            raise ValueError("k must lie in {0..n}")
        return sum(self.masses[k:], Fraction(0))


@dataclass(frozen=True)
class RawMoments:
    """Raw power moments (E[S], E[S^2], .., E[S^m]) of a law on {0..n}."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _rational_tuple(self.values))
        if self.n < 1 or not self.values:
            raise ValueError("need n >= 1 and at least one moment")
        if not 0 <= self.values[0] <= self.n:
            raise InfeasibleMomentsError("mean must lie in [0, n]")

    @property
    def m(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class MomentTriple:
    """Normalized moments mu_j = E[(S/n)^j], j = 1..3."""

    n: int
    mu1: Fraction
    mu2: Fraction
    mu3: Fraction

    def __post_init__(self):
        for name in ("mu1", "mu2", "mu3"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if any(not 0 <= v <= 1 for v in self.coords):
            raise InfeasibleMomentsError("normalized moments must lie in [0, 1]")
        if not self.mu3 <= self.mu2 <= self.mu1:
            raise InfeasibleMomentsError(
                "normalized moments must be nonincreasing (mu3 <= mu2 <= mu1)"
            )

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.mu1, self.mu2, self.mu3)


@dataclass(frozen=True)
class FactorialMoments:
    """Factorial moments E[S(S-1)..(S-j+1)], j = 1..m."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _rational_tuple(self.values))
        if self.n < 1 or not self.values:
            raise ValueError("need n >= 1 and at least one moment")
        if any(v < 0 for v in self.values):
            raise InfeasibleMomentsError("factorial moments must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DeFinettiParams:
    """Joint success probabilities w_j = E[X_1 .. X_j] of an exchangeable
    0/1 sequence of length n."""

    n: int
    w: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", _rational_tuple(self.w))
        if self.n < 1 or not self.w:
            raise ValueError("need n >= 1 and at least one parameter")
        if len(self.w) > self.n:
            raise ValueError("at most n parameters are defined")
        chain = (Fraction(1),) + self.w + (Fraction(0),)
        if any(a < b for a, b in zip(chain, chain[1:])):
            raise InfeasibleMomentsError("need 1 >= w1 >= w2 >= .. >= 0")

    @property
    def m(self) -> int:
        return len(self.w)


@dataclass(frozen=True)
class BahadurParams:
    """Marginal probability w1 plus standardized second and third order
    correlations of an exchangeable 0/1 sequence. ``exact`` records whether
    rho3 is exact or a controlled-precision approximation."""

    n: int
    w1: Fraction
    rho2: Fraction
    rho3: Fraction
    exact: bool = True

    def __post_init__(self):
        for name in ("w1", "rho2", "rho3"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 < self.w1 < 1:
            raise InfeasibleMomentsError(
                "correlation parameters are defined only for 0 < w1 < 1"
            )


def moments_of(dist: Distribution, m: int) -> RawMoments:
    """First m raw power moments of a distribution."""
    if m < 1:
        raise ValueError("m must be at least 1")
    values = tuple(
        sum((mass * i**j for i, mass in enumerate(dist.masses)), Fraction(0))
        for j in range(1, m + 1)
    )
    return RawMoments(dist.n, values)


def normalize(raw: RawMoments) -> MomentTriple:
    """Normalized triple mu_j = E[S^j] / n^j from the first three raw moments."""
    if raw.m < 3:
        raise ValueError("need at least three raw moments")
    n = raw.n
    return MomentTriple(n, raw.values[0] / n, raw.values[1] / n**2, raw.values[2] / n**3)


def denormalize(mu: MomentTriple) -> RawMoments:
    n = mu.n
    return RawMoments(n, (mu.mu1 * n, mu.mu2 * n**2, mu.mu3 * n**3))


def moment_triple_of(dist: Distribution) -> MomentTriple:
    return normalize(moments_of(dist, 3))


def raw_to_factorial(raw: RawMoments) -> FactorialMoments:
    """Factorial from raw moments via signed Stirling numbers of the first
    kind: E[(S)_j] = sum_i s(j, i) E[S^i]."""
    values = tuple(
        sum(
            (stirling_first_signed(j, i) * raw.values[i - 1] for i in range(1, j + 1)),
            Fraction(0),
        )
        for j in range(1, raw.m + 1)
    )
    return FactorialMoments(raw.n, values)


def factorial_to_raw(fm: FactorialMoments) -> RawMoments:
    """Raw from factorial moments via Stirling numbers of the second kind:
    E[S^j] = sum_i S(j, i) E[(S)_i]."""
    values = tuple(
        sum(
            (stirling_second(j, i) * fm.values[i - 1] for i in range(1, j + 1)),
            Fraction(0),
        )
        for j in range(1, fm.m + 1)
    )
    return RawMoments(fm.n, values)


def factorial_to_definetti(fm: FactorialMoments) -> DeFinettiParams:
    """w_j = E[(S)_j] / (n)_j; the j-th factorial moment counts ordered
    j-tuples of successes among n exchangeable trials."""
    if fm.m > fm.n:
        raise ValueError("factorial moments beyond order n carry no w parameter")
    w = tuple(
        fm.values[j - 1] / (binomial(fm.n, j) * _factorial(j)) for j in range(1, fm.m + 1)
    )
    return DeFinettiParams(fm.n, w)


def definetti_to_factorial(params: DeFinettiParams) -> FactorialMoments:
    values = tuple(
        binomial(params.n, j) * _factorial(j) * params.w[j - 1]
        for j in range(1, params.m + 1)
    )
    return FactorialMoments(params.n, values)


def _factorial(j: int) -> int:
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def bahadur_to_definetti(params: BahadurParams) -> DeFinettiParams:
    """(w1, rho2, rho3) -> (w1, w2, w3).

    w2 = w1^2 + rho2 v and w3 = 3 w1 w2 - 2 w1^3 + rho3 v^(3/2) with
    v = w1 (1 - w1). The 3/2 power uses the controlled-precision square root
    when v is not a perfect rational square.
    """
    w1, rho2, rho3 = params.w1, params.rho2, params.rho3
    v = w1 * (1 - w1)
    root, _ = sqrt_rational(v)
    w2 = w1 * w1 + rho2 * v
    w3 = 3 * w1 * w2 - 2 * w1**3 + rho3 * v * root
    return DeFinettiParams(params.n, (w1, w2, w3))


def definetti_to_bahadur(params: DeFinettiParams) -> BahadurParams:
    """(w1, w2, w3) -> (w1, rho2, rho3); undefined at w1 in {0, 1}."""
    if params.m < 3:
        raise ValueError("need three de Finetti parameters")
    w1, w2, w3 = params.w[:3]
    if not 0 < w1 < 1:
        raise InfeasibleMomentsError(
            "correlation parameters are defined only for 0 < w1 < 1"
        )
    v = w1 * (1 - w1)
    root, exact = sqrt_rational(v)
    rho2 = (w2 - w1 * w1) / v
    rho3 = (w3 - 3 * w1 * w2 + 2 * w1**3) / (v * root)
    return BahadurParams(params.n, w1, rho2, rho3, exact=exact)


def pmf_from_factorial(fm: FactorialMoments) -> Distribution:
    """Reconstruct the full pmf from a complete set of factorial moments
    (m must equal n) by inclusion-exclusion:

        P(S = j) = sum_{i=j}^{n} (-1)^(i-j) C(i, j) E[(S)_i] / i!

    Raises InfeasibleMomentsError when any reconstructed mass is negative,
    which is the exact feasibility test at m = n.
    """
    n = fm.n
    if fm.m != n:
        raise ValueError("pmf reconstruction needs all n factorial moments")
    full = (Fraction(1),) + fm.values  # order 0 moment is 1
    masses = []
    for j in range(n + 1):
        mass = sum(
            (
                (-1) ** (i - j) * binomial(i, j) * full[i] / _factorial(i)
                for i in range(j, n + 1)
            ),
            Fraction(0),
        )
        if mass < 0 or mass > 1:
            raise InfeasibleMomentsError(
                "factorial moments reconstruct a negative mass at %d" % j
            )
        masses.append(mass)
    return Distribution(n, tuple(masses))


def reliability_from_factorial(fm: FactorialMoments, k: int) -> Fraction:
    """P(S >= k) from a complete set of factorial moments:

        P(S >= k) = sum_{i=k}^{n} (-1)^(i-k) C(i-1, k-1) E[(S)_i] / i!

    for k >= 1; P(S >= 0) = 1. Feasibility is checked by reconstructing the
    pmf first.
    """
    n = fm.n
    if not 0 <= k <= n:
        raise ValueError("k must lie in {0..n}")
    pmf_from_factorial(fm)  # feasibility gate
    if k == 0:
        return Fraction(1)
    return sum(
        (
            (-1) ** (i - k) * binomial(i - 1, k - 1) * fm.values[i - 1] / _factorial(i)
            for i in range(k, n + 1)
        ),
        Fraction(0),
    )


def as_moment_triple(query) -> MomentTriple:
    """Funnel the accepted query shapes into a normalized MomentTriple."""
    if isinstance(query, MomentTriple):
        return query
    if isinstance(query, Distribution):
        return moment_triple_of(query)
    if isinstance(query, RawMoments):
        return normalize(query)
    if isinstance(query, BahadurParams):
        query = bahadur_to_definetti(query)
    if isinstance(query, DeFinettiParams):
        if query.m < 3:
            raise ValueError("need three de Finetti parameters for a moment triple")
        return normalize(factorial_to_raw(definetti_to_factorial(query)))
    raise TypeError("unsupported query type: %r" % type(query).__name__)
