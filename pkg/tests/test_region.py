"""Parameter sweeps and the feasible w1 window."""

from fractions import Fraction

import pytest

from momentbounds.moments import Distribution, moment_triple_of
from momentbounds.oracle import lp_bounds_prefix
from momentbounds.region import (
    CSV_HEADER,
    RegionRow,
    feasible_interval,
    moment_prefix,
    rows_to_csv,
    sweep,
)

# ----------------------------------------------------------------- rows


def test_region_row_invariant():
    RegionRow(w1=Fraction(1, 2), min_bound=None, max_bound=None, feasible=False)
    with pytest.raises(ValueError):
        RegionRow(w1=Fraction(1, 2), min_bound=Fraction(1, 4), max_bound=None, feasible=False)
    with pytest.raises(ValueError):
        RegionRow(
            w1=Fraction(1, 2),
            min_bound=Fraction(1, 4),
            max_bound=Fraction(1, 2),
            feasible=False,
        )


# --------------------------------------------------------- moment_prefix


def test_moment_prefix_lengths():
    assert moment_prefix(7, Fraction(1, 2)) == (Fraction(1, 2),)
    assert moment_prefix(7, Fraction(1, 2), Fraction(1, 5)) == (
        Fraction(1, 2),
        Fraction(23, 70),
    )
    assert moment_prefix(7, Fraction(1, 2), Fraction(1, 5), Fraction(1, 10)) == (
        Fraction(1, 2),
        Fraction(23, 70),
        Fraction(491, 1960),
    )


def test_moment_prefix_matches_iid_moments():
    # rho2 = rho3 = 0 must reproduce the moments of Binomial(n, w1)
    n, p = 6, Fraction(1, 3)
    masses = tuple(
        Fraction(
            __import__("math").comb(n, i) * p.numerator**i * (p.denominator - p.numerator) ** (n - i),
            p.denominator**n,
        )
        for i in range(n + 1)
    )
    mu = moment_triple_of(Distribution(n, masses))
    assert moment_prefix(n, p, 0, 0) == mu.coords


def test_moment_prefix_domain():
    assert moment_prefix(7, 0) == (0,)
    assert moment_prefix(7, 1) == (1,)
    with pytest.raises(ValueError):
        moment_prefix(7, Fraction(3, 2))
    with pytest.raises(ValueError):
        moment_prefix(7, 0, Fraction(1, 5))
    with pytest.raises(ValueError):
        moment_prefix(7, 1, Fraction(1, 5), Fraction(1, 10))
    with pytest.raises(ValueError):
        moment_prefix(7, Fraction(1, 2), None, Fraction(1, 10))


# ------------------------------------------------------------------ sweep


def test_sweep_grid():
    rows = sweep(7, 4, rho2=Fraction(1, 5), rho3=Fraction(1, 10), steps=5)
    assert [r.w1 for r in rows] == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]
    assert not rows[0].feasible
    assert not rows[-1].feasible
    assert all(r.feasible for r in rows[1:-1])


def test_sweep_validation():
    with pytest.raises(ValueError):
        sweep(7, 4, steps=1)
    with pytest.raises(ValueError):
        sweep(7, 4, rho3=Fraction(1, 10))


def test_sweep_iid_rows_bracket_binomial_tail():
    # with zero correlations each feasible row must contain the tail of the
    # matching binomial law
    from math import comb

    rows = sweep(7, 4, rho2=0, rho3=0, steps=9)
    for row in rows[1:-1]:
        p = row.w1
        tail = sum(
            Fraction(comb(7, i) * p.numerator**i * (p.denominator - p.numerator) ** (7 - i),
                     p.denominator**7)
            for i in range(4, 8)
        )
        assert row.feasible
        assert row.min_bound <= tail <= row.max_bound


def test_sweep_prefix_lengths_nest():
    # fixing fewer parameters can only widen the interval at the same w1
    w1 = Fraction(1, 2)
    rho2, rho3 = Fraction(1, 5), Fraction(1, 10)
    r1 = sweep(7, 4, steps=3)[1]
    r2 = sweep(7, 4, rho2=rho2, steps=3)[1]
    r3 = sweep(7, 4, rho2=rho2, rho3=rho3, steps=3)[1]
    assert r1.w1 == r2.w1 == r3.w1 == w1
    assert r1.min_bound <= r2.min_bound <= r3.min_bound
    assert r3.max_bound <= r2.max_bound <= r1.max_bound


def test_sweep_two_moment_rows_use_exhaustive_search():
    row = sweep(7, 4, rho2=Fraction(1, 5), steps=3)[1]
    report = lp_bounds_prefix(7, (Fraction(1, 2), Fraction(23, 70)), 4)
    assert (row.min_bound, row.max_bound) == (report.min, report.max)


# -------------------------------------------------------------- intervals


def test_feasible_interval_unpinned():
    assert feasible_interval(7) == (0, 1)


def test_feasible_interval_iid_fills_the_unit_interval():
    lo, hi = feasible_interval(7, 0, 0)
    assert lo < Fraction(1, 10**5)
    assert hi > 1 - Fraction(1, 10**5)


def test_feasible_interval_worked_parameters():
    lo, hi = feasible_interval(7, Fraction(1, 5), Fraction(1, 10))
    assert abs(lo - Fraction(108514, 10**7)) < Fraction(1, 10**5)
    assert abs(hi - Fraction(8717732, 10**7)) < Fraction(1, 10**5)


def test_feasible_interval_contains_sweep_support():
    rho2, rho3 = Fraction(1, 5), Fraction(1, 10)
    lo, hi = feasible_interval(7, rho2, rho3)
    for row in sweep(7, 4, rho2=rho2, rho3=rho3, steps=21):
        if row.feasible:
            assert lo <= row.w1 <= hi


def test_feasible_interval_two_parameter():
    lo, hi = feasible_interval(7, Fraction(1, 5))
    assert lo < Fraction(1, 2) < hi


def test_feasible_interval_none_when_impossible():
    # rho2 far beyond what any law on {0..7} supports
    assert feasible_interval(7, Fraction(-2), Fraction(0)) is None


# -------------------------------------------------------------------- csv


def test_csv_golden():
    rows = sweep(7, 4, rho2=Fraction(1, 5), rho3=Fraction(1, 10), steps=5)
    assert rows_to_csv(rows) == (
        "w1,min,max,feasible\n"
        "0,,,false\n"
        "0.25,0.0398362352006,0.300545882665,true\n"
        "0.5,0.23125,0.634444444444,true\n"
        "0.75,0.688228646404,0.951444999391,true\n"
        "1,,,false\n"
    )


def test_csv_header_and_endings():
    rows = sweep(5, 2, rho2=0, rho3=0, steps=3)
    text = rows_to_csv(rows)
    assert text.startswith(CSV_HEADER + "\n")
    assert text.endswith("\n")
    assert "\r" not in text
    assert len(text.splitlines()) == 4
