"""Typical-set masses: exact type census, Monte Carlo, and rate bounds."""

import math

import numpy as np
import pytest

from entcost import (
    SourceDistribution,
    aep_bounds_check,
    is_weakly_typical,
    sequence_rate_bits,
    strong_typical_mass,
    type_count,
    weak_typical_census,
    weak_typical_mass,
)


def test_source_distribution_entropy():
    d = SourceDistribution(np.array([0.9, 0.1]))
    assert d.entropy_bits == pytest.approx(0.4689955935892812, abs=1e-13)


def test_sequence_rate_and_membership():
    d = SourceDistribution(np.array([0.9, 0.1]))
    # the all-zeros block has rate -log2(0.9) = 0.152, far below H
    seq = np.zeros(20, dtype=int)
    rate = sequence_rate_bits(d, seq)
    assert rate == pytest.approx(-math.log2(0.9), abs=1e-13)
    assert not is_weakly_typical(d, seq, delta=0.05)
    # a block at the true composition sits inside any window
    seq2 = np.array([0] * 18 + [1] * 2)
    assert is_weakly_typical(d, seq2, delta=0.05)


def test_rate_infinite_on_impossible_symbol():
    d = SourceDistribution(np.array([1.0, 0.0]))
    assert sequence_rate_bits(d, [0, 1, 0]) == math.inf


def test_type_count_multiset_coefficient():
    assert type_count(2, 2) == 3
    assert type_count(5, 2) == 6
    assert type_count(4, 3) == 15


def test_weak_mass_empty_window_small_block():
    # (0.8, 0.2) at n = 2: attainable rates are 0.3219, 1.3219, 2.3219 while
    # H = 0.7219; the window [H - 0.05, H + 0.05] contains none of them
    d = SourceDistribution(np.array([0.8, 0.2]))
    rep = weak_typical_mass(d, 2, 0.05)
    assert rep.mass == 0.0
    assert rep.log2_cardinality_bound == -math.inf


def test_weak_mass_uniform_source_is_one_exactly():
    d = SourceDistribution(np.full(3, 1.0 / 3.0))
    rep = weak_typical_mass(d, 5, 0.1)
    assert rep.mass == 1.0
    assert rep.log2_cardinality_bound == pytest.approx(5.0 * math.log2(3.0),
                                                       abs=1e-12)


def test_weak_mass_ignores_zero_probability_symbols():
    # a padded alphabet must behave exactly like the unpadded one
    d2 = SourceDistribution(np.array([0.5, 0.5]))
    d3 = SourceDistribution(np.array([0.5, 0.5, 0.0]))
    r2 = weak_typical_mass(d2, 12, 0.08)
    r3 = weak_typical_mass(d3, 12, 0.08)
    assert r3.mass == pytest.approx(r2.mass, abs=1e-14)
    assert r3.log2_cardinality_bound == pytest.approx(
        r2.log2_cardinality_bound, abs=1e-12)


def test_strong_mass_hand_census():
    # (0.5, 0.5) at n = 2, delta = 0.1: only the (1, 1) composition has both
    # empirical frequencies within 0.1 of one half; its mass is 2 * 0.25
    d = SourceDistribution(np.array([0.5, 0.5]))
    rep = strong_typical_mass(d, 2, 0.1)
    assert rep.mass == pytest.approx(0.5, abs=1e-15)
    assert rep.log2_cardinality_bound == pytest.approx(1.0, abs=1e-12)


def test_strong_typicality_excludes_impossible_symbols():
    d = SourceDistribution(np.array([0.7, 0.3, 0.0]))
    rep = strong_typical_mass(d, 10, 0.25)
    assert rep.mass > 0.5
    # sequences using symbol 2 are excluded, so mass is also the mass of the
    # same census on the reduced alphabet
    d2 = SourceDistribution(np.array([0.7, 0.3]))
    rep2 = strong_typical_mass(d2, 10, 0.25)
    assert rep.mass == pytest.approx(rep2.mass, abs=1e-14)


def test_census_matches_report_and_integer_count():
    d = SourceDistribution(np.array([0.8, 0.2]))
    mass, count = weak_typical_census(d, 60, 0.08)
    rep = weak_typical_mass(d, 60, 0.08)
    assert mass == pytest.approx(rep.mass, abs=1e-15)
    assert isinstance(count, int)
    assert count > 0
    assert rep.log2_cardinality_bound == pytest.approx(math.log2(count),
                                                       abs=1e-10)


def test_mass_grows_with_block_length():
    d = SourceDistribution(np.array([0.7, 0.3]))
    masses = [weak_typical_mass(d, n, 0.05).mass for n in (100, 400, 1000)]
    assert masses[0] < masses[1] < masses[2]
    assert masses[2] >= 0.99


def test_mass_grows_with_delta():
    d = SourceDistribution(np.array([0.8, 0.2]))
    masses = [weak_typical_mass(d, 120, delta).mass
              for delta in (0.02, 0.05, 0.1, 0.2)]
    assert all(a <= b for a, b in zip(masses, masses[1:]))
    assert masses[-1] > masses[0]


def test_cardinality_bounded_by_entropy_window():
    d = SourceDistribution(np.array([0.6, 0.3, 0.1]))
    n, delta = 40, 0.07
    rep = weak_typical_mass(d, n, delta)
    assert rep.log2_cardinality_bound <= n * (d.entropy_bits + delta) + 1e-9


def test_monte_carlo_interval_covers_exact_mass():
    d = SourceDistribution(np.array([0.8, 0.2]))
    exact = weak_typical_mass(d, 80, 0.06).mass
    mc = weak_typical_mass(d, 80, 0.06, mode="mc", samples=60_000, seed=3)
    assert mc.mode == "mc"
    assert mc.mass_low <= exact <= mc.mass_high
    assert abs(mc.mass - exact) < 0.02


def test_monte_carlo_strong_agrees():
    d = SourceDistribution(np.array([0.5, 0.3, 0.2]))
    exact = strong_typical_mass(d, 30, 0.1).mass
    mc = strong_typical_mass(d, 30, 0.1, mode="mc", samples=60_000, seed=5)
    assert mc.mass_low <= exact <= mc.mass_high


def test_aep_bounds_hold_on_window():
    d = SourceDistribution(np.array([0.8, 0.2]))
    assert aep_bounds_check(d, 50, 0.1)


def test_aep_bounds_fail_when_tightened():
    # typical types at deviation in (delta/2, delta] violate the tightened
    # probability window, so the check must notice
    d = SourceDistribution(np.array([0.8, 0.2]))
    assert not aep_bounds_check(d, 50, 0.1, bound_delta=0.05)


def test_exact_mode_rejects_huge_type_tables():
    d = SourceDistribution(np.full(12, 1.0 / 12.0))
    with pytest.raises(ValueError):
        weak_typical_mass(d, 64, 0.05, max_types=10_000)
