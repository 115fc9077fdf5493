"""Moment representations and conversions.

The independent oracle here is the exchangeable-sequence construction
itself: spread P(S = s) uniformly over the C(n, s) binary vectors with s
ones and read the joint success probabilities off the vectors directly.
"""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentbounds.exact import binomial
from momentbounds.moments import (
    BahadurParams,
    DeFinettiParams,
    Distribution,
    FactorialMoments,
    InfeasibleMomentsError,
    MomentTriple,
    RawMoments,
    as_moment_triple,
    bahadur_to_definetti,
    definetti_to_bahadur,
    definetti_to_factorial,
    denormalize,
    factorial_to_definetti,
    factorial_to_raw,
    moment_triple_of,
    moments_of,
    normalize,
    pmf_from_factorial,
    raw_to_factorial,
    reliability_from_factorial,
)

# ---------------------------------------------------------------- oracles


def random_pmf(n, seed):
    rng = random.Random(seed)
    weights = [rng.randint(0, 99) for _ in range(n + 1)]
    if not any(weights):
        weights[0] = 1
    total = sum(weights)
    return Distribution(n, tuple(Fraction(w, total) for w in weights))


def joint_success_by_enumeration(dist, j):
    """w_j computed from the exchangeable 0/1 sequence induced by the law of
    S: each vector with s ones carries mass P(S = s) / C(n, s)."""
    n = dist.n
    total = Fraction(0)
    for vector in product((0, 1), repeat=n):
        s = sum(vector)
        if all(vector[:j]):
            total += dist.masses[s] / binomial(n, s)
    return total


def factorial_moment_by_enumeration(dist, j):
    total = Fraction(0)
    for i, mass in enumerate(dist.masses):
        term = Fraction(1)
        for r in range(j):
            term *= i - r
        total += mass * term
    return total


# --------------------------------------------------------- distributions


def test_distribution_support_and_tail():
    dist = Distribution(4, (Fraction(1, 2), 0, Fraction(1, 4), 0, Fraction(1, 4)))
    assert dist.support() == (0, 2, 4)
    assert dist.tail(0) == 1
    assert dist.tail(3) == Fraction(1, 4)
    assert dist.tail(4) == Fraction(1, 4)
    with pytest.raises(ValueError):
        dist.tail(5)


def test_distribution_from_support():
    dist = Distribution.from_support(7, [(0, Fraction(1, 2)), (7, Fraction(1, 2))])
    assert dist.masses[0] == Fraction(1, 2)
    assert dist.masses[7] == Fraction(1, 2)
    assert sum(dist.masses) == 1


def test_distribution_rejects_bad_mass():
    with pytest.raises(ValueError):
        Distribution(2, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(ValueError):
        Distribution(2, (Fraction(3, 2), Fraction(-1, 2), Fraction(0)))


# -------------------------------------------------------------- moments


def test_moments_of_point_mass():
    dist = Distribution(2, (0, 0, 1))
    assert moments_of(dist, 3).values == (2, 4, 8)


def test_moments_of_uniform():
    dist = Distribution(7, tuple(Fraction(1, 8) for _ in range(8)))
    raw = moments_of(dist, 3)
    assert raw.values == (Fraction(7, 2), Fraction(35, 2), 98)


def test_normalize_uniform():
    raw = RawMoments(7, (Fraction(7, 2), Fraction(35, 2), 98))
    mu = normalize(raw)
    assert mu.coords == (Fraction(1, 2), Fraction(5, 14), Fraction(2, 7))
    assert denormalize(mu).values == raw.values


def test_moment_triple_ordering_enforced():
    with pytest.raises(InfeasibleMomentsError):
        MomentTriple(7, Fraction(1, 4), Fraction(1, 2), Fraction(1, 8))


# ---------------------------------------------------- factorial moments


def test_raw_to_factorial_point_mass():
    fm = raw_to_factorial(RawMoments(2, (2, 4, 8)))
    assert fm.values == (2, 2, 0)


def test_raw_to_factorial_binomial():
    raw = RawMoments(3, (Fraction(3, 2), 3, Fraction(27, 4)))
    fm = raw_to_factorial(raw)
    assert fm.values == (Fraction(3, 2), Fraction(3, 2), Fraction(3, 4))
    assert factorial_to_raw(fm).values == raw.values


def test_factorial_matches_direct_enumeration():
    for seed in range(20):
        n = 3 + seed % 5
        dist = random_pmf(n, f"fm:{seed}")
        raw = moments_of(dist, 3)
        fm = raw_to_factorial(raw)
        for j in (1, 2, 3):
            assert fm.values[j - 1] == factorial_moment_by_enumeration(dist, j)


def test_factorial_negative_rejected():
    with pytest.raises(InfeasibleMomentsError):
        FactorialMoments(3, (1, Fraction(-1, 4)))


# ----------------------------------------------------------- de Finetti


def test_factorial_to_definetti_point_mass():
    params = factorial_to_definetti(FactorialMoments(2, (2, 2)))
    assert params.w == (1, 1)


def test_factorial_to_definetti_binomial():
    fm = FactorialMoments(3, (Fraction(3, 2), Fraction(3, 2), Fraction(3, 4)))
    params = factorial_to_definetti(fm)
    assert params.w == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))
    assert definetti_to_factorial(params).values == fm.values


def test_definetti_matches_sequence_enumeration():
    for seed in range(12):
        n = 3 + seed % 4
        dist = random_pmf(n, f"w:{seed}")
        fm = raw_to_factorial(moments_of(dist, 3))
        params = factorial_to_definetti(fm)
        for j in (1, 2, 3):
            assert params.w[j - 1] == joint_success_by_enumeration(dist, j)


def test_definetti_monotonicity_enforced():
    with pytest.raises(InfeasibleMomentsError):
        DeFinettiParams(3, (Fraction(1, 4), Fraction(1, 2)))
    with pytest.raises(InfeasibleMomentsError):
        DeFinettiParams(3, (Fraction(5, 4),))


def test_definetti_order_cap():
    with pytest.raises(ValueError):
        factorial_to_definetti(FactorialMoments(2, (1, Fraction(1, 2), Fraction(1, 4))))


# -------------------------------------------------------------- Bahadur


def test_bahadur_independent_case():
    params = bahadur_to_definetti(BahadurParams(7, Fraction(1, 2), 0, 0))
    assert params.w == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))


def test_bahadur_worked_example():
    params = bahadur_to_definetti(
        BahadurParams(7, Fraction(1, 2), Fraction(1, 5), Fraction(1, 10))
    )
    assert params.w == (Fraction(1, 2), Fraction(3, 10), Fraction(17, 80))


def test_bahadur_roundtrip_exact_variance():
    # v = w1 (1 - w1) is a perfect rational square here, so the round trip
    # is exact and the flag says so
    start = DeFinettiParams(7, (Fraction(4, 5), Fraction(2, 3), Fraction(3, 5)))
    b = definetti_to_bahadur(start)
    assert b.exact
    back = bahadur_to_definetti(b)
    assert back.w == start.w


def test_bahadur_inexact_flagged():
    start = DeFinettiParams(7, (Fraction(1, 3), Fraction(1, 6), Fraction(1, 10)))
    b = definetti_to_bahadur(start)
    assert not b.exact
    back = bahadur_to_definetti(b)
    assert abs(back.w[2] - start.w[2]) < Fraction(1, 10**25)


def test_bahadur_rejects_degenerate_marginal():
    with pytest.raises(InfeasibleMomentsError):
        BahadurParams(7, 0, 0, 0)
    with pytest.raises(InfeasibleMomentsError):
        definetti_to_bahadur(DeFinettiParams(7, (1, 1, 1)))


# ----------------------------------------------------- pmf reconstruction


def test_pmf_from_factorial_point_mass():
    dist = pmf_from_factorial(FactorialMoments(3, (3, 6, 6)))
    assert dist.masses == (0, 0, 0, 1)


def test_pmf_from_factorial_binomial():
    fm = FactorialMoments(3, (Fraction(3, 2), Fraction(3, 2), Fraction(3, 4)))
    dist = pmf_from_factorial(fm)
    assert dist.masses == (Fraction(1, 8), Fraction(3, 8), Fraction(3, 8), Fraction(1, 8))


def test_pmf_from_factorial_truncated_uniform():
    fm = FactorialMoments(3, (1, Fraction(2, 3), 0))
    dist = pmf_from_factorial(fm)
    assert dist.masses == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3), 0)


def test_pmf_roundtrip_random():
    for seed in range(30):
        n = 2 + seed % 6
        dist = random_pmf(n, f"pmf:{seed}")
        fm = raw_to_factorial(moments_of(dist, n))
        assert pmf_from_factorial(fm).masses == dist.masses


def test_pmf_from_factorial_requires_full_order():
    with pytest.raises(ValueError):
        pmf_from_factorial(FactorialMoments(3, (1, Fraction(1, 2))))


def test_pmf_from_factorial_detects_infeasible():
    # first two moments of a point mass at 3, third moment wildly off
    with pytest.raises(InfeasibleMomentsError):
        pmf_from_factorial(FactorialMoments(3, (3, 6, 60)))


# ------------------------------------------------------------ tail values


def test_reliability_examples():
    assert reliability_from_factorial(FactorialMoments(2, (2, 2)), 1) == 1
    fm = FactorialMoments(3, (Fraction(3, 2), Fraction(3, 2), Fraction(3, 4)))
    assert reliability_from_factorial(fm, 2) == Fraction(1, 2)
    assert reliability_from_factorial(fm, 0) == 1


def test_reliability_matches_tail():
    for seed in range(20):
        n = 2 + seed % 6
        dist = random_pmf(n, f"tail:{seed}")
        fm = raw_to_factorial(moments_of(dist, n))
        for k in range(n + 2):
            if k > n:
                with pytest.raises(ValueError):
                    reliability_from_factorial(fm, k)
            else:
                assert reliability_from_factorial(fm, k) == dist.tail(k)


# ---------------------------------------------------------------- funnel


def test_as_moment_triple_accepts_each_shape():
    dist = Distribution(7, tuple(Fraction(1, 8) for _ in range(8)))
    mu = moment_triple_of(dist)
    assert as_moment_triple(mu) is mu
    assert as_moment_triple(dist).coords == mu.coords
    assert as_moment_triple(RawMoments(7, (Fraction(7, 2), Fraction(35, 2), 98))).coords == mu.coords
    bah = BahadurParams(7, Fraction(1, 2), Fraction(1, 5), Fraction(1, 10))
    w = bahadur_to_definetti(bah)
    assert as_moment_triple(bah).coords == as_moment_triple(w).coords


def test_as_moment_triple_bahadur_value():
    mu = as_moment_triple(BahadurParams(7, Fraction(1, 2), Fraction(1, 5), Fraction(1, 10)))
    # w = (1/2, 3/10, 17/80); raw moments 7 w1, 7 w1 + 42 w2, 7 w1 + 126 w2 + 210 w3
    assert mu.mu1 == Fraction(1, 2)
    assert mu.mu2 == (7 * Fraction(1, 2) + 42 * Fraction(3, 10)) / 49
    assert mu.mu3 == (
        7 * Fraction(1, 2) + 126 * Fraction(3, 10) + 210 * Fraction(17, 80)
    ) / 343


def test_as_moment_triple_rejects_other_types():
    with pytest.raises(TypeError):
        as_moment_triple((Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)))
    with pytest.raises(ValueError):
        as_moment_triple(DeFinettiParams(7, (Fraction(1, 2), Fraction(1, 4))))


# -------------------------------------------------------------- property


@st.composite
def small_distributions(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    weights = draw(
        st.lists(
            st.integers(min_value=0, max_value=50), min_size=n + 1, max_size=n + 1
        )
    )
    if not any(weights):
        weights[0] = 1
    total = sum(weights)
    return Distribution(n, tuple(Fraction(w, total) for w in weights))


@settings(max_examples=80, deadline=None)
@given(small_distributions())
def test_raw_factorial_roundtrip(dist):
    raw = moments_of(dist, dist.n)
    assert factorial_to_raw(raw_to_factorial(raw)).values == raw.values


@settings(max_examples=80, deadline=None)
@given(small_distributions())
def test_full_reconstruction_chain(dist):
    fm = raw_to_factorial(moments_of(dist, dist.n))
    params = factorial_to_definetti(fm)
    assert definetti_to_factorial(params).values == fm.values
    assert pmf_from_factorial(fm).masses == dist.masses
