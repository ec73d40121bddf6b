"""Entropy functionals, tail-sum tables, and the integral representation."""

import math

import numpy as np
import pytest

from entcost import (
    InvariantViolation,
    Spectrum,
    TailSumTable,
    binary_entropy,
    entropy_integral_closed_form,
    entropy_integral_quadrature,
    entropy_tail_uncertainty,
    g_function,
    stream,
    tail_sum,
    tail_sums,
    von_neumann_entropy,
)


def test_binary_entropy_known_values():
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    # H(0.2) = -(0.2 log2 0.2 + 0.8 log2 0.8)
    assert binary_entropy(0.2) == pytest.approx(0.7219280948873623, abs=1e-14)


def test_g_function_known_values():
    assert g_function(0.0) == 0.0
    assert g_function(1.0) == pytest.approx(2.0, abs=1e-14)
    # g(3) = 4 log2 4 - 3 log2 3
    assert g_function(3.0) == pytest.approx(8.0 - 3.0 * math.log2(3.0), abs=1e-13)


def test_g_function_sublinear_growth():
    xs = np.array([1.0, 10.0, 100.0, 1000.0])
    ratios = [g_function(x) / x for x in xs]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_von_neumann_entropy_examples():
    assert von_neumann_entropy(Spectrum(np.array([1.0]))) == 0.0
    assert von_neumann_entropy(Spectrum(np.array([0.5, 0.5]))) == pytest.approx(
        1.0, abs=1e-15)
    s = Spectrum(np.array([0.8, 0.2]))
    assert von_neumann_entropy(s) == pytest.approx(0.7219280948873623, abs=1e-14)


def test_entropy_never_negative_zero():
    val = von_neumann_entropy(Spectrum(np.array([1.0, 0.0])))
    assert val == 0.0 and math.copysign(1.0, val) > 0.0


def test_tail_uncertainty_needs_dimension_bound():
    s = Spectrum(np.array([0.6, 0.3]), tail_mass=0.1)
    assert entropy_tail_uncertainty(s) == math.inf
    bounded = entropy_tail_uncertainty(s, dim_bound=16)
    assert bounded == pytest.approx(0.1 * math.log2(16 / 0.1), abs=1e-12)
    assert entropy_tail_uncertainty(Spectrum(np.array([1.0]))) == 0.0


def test_tail_sum_table_telescopes_exactly():
    rng = stream(11, 0)
    v = rng.random(32)
    s = Spectrum.from_unsorted(v / v.sum())
    table = TailSumTable.build(s).tails
    # backward accumulation means consecutive differences reproduce the
    # values at machine precision, not merely to a loose tolerance
    diffs = table[:-1] - table[1:]
    assert np.max(np.abs(diffs - s.values)) < 1e-15
    assert table[0] == pytest.approx(1.0, abs=1e-12)
    assert table[-1] == 0.0


def test_tail_sum_indexing():
    s = Spectrum(np.array([0.5, 0.3, 0.2]))
    assert tail_sum(s, 0) == pytest.approx(1.0, abs=1e-15)
    assert tail_sum(s, 1) == pytest.approx(0.5, abs=1e-15)
    assert tail_sum(s, 2) == pytest.approx(0.2, abs=1e-15)
    assert tail_sum(s, 3) == 0.0
    assert tail_sum(s, 99) == 0.0
    with pytest.raises(ValueError):
        tail_sum(s, -1)


def test_tail_sums_prefix():
    s = Spectrum(np.array([0.5, 0.3, 0.2]))
    got = tail_sums(s, 6)
    assert np.allclose(got, [1.0, 0.5, 0.2, 0.0, 0.0, 0.0], atol=1e-15)


def test_integral_closed_form_matches_direct_entropy():
    cases = [
        Spectrum(np.array([1.0])),
        Spectrum(np.array([0.5, 0.5])),
        Spectrum(np.full(8, 0.125)),
        Spectrum(np.array([0.9, 0.05, 0.03, 0.02])),
    ]
    for s in cases:
        direct = von_neumann_entropy(s)
        integral = entropy_integral_closed_form(s)
        assert integral == pytest.approx(direct, abs=1e-12)


def test_integral_closed_form_random_sweep():
    rng = stream(11, 1)
    for i in range(60):
        ln = int(rng.integers(1, 33))
        v = rng.random(ln) + 1e-9
        s = Spectrum.from_unsorted(v / v.sum())
        direct = von_neumann_entropy(s)
        integral = entropy_integral_closed_form(s)
        assert abs(integral - direct) <= 1e-9 * max(1.0, direct)


def test_integral_quadrature_agrees_with_closed_form():
    rng = stream(11, 2)
    for i in range(20):
        ln = int(rng.integers(2, 17))
        v = rng.random(ln) + 1e-6
        s = Spectrum.from_unsorted(v / v.sum())
        cf = entropy_integral_closed_form(s)
        quad = entropy_integral_quadrature(s)
        assert abs(quad - cf) <= 1e-9


def test_integral_handles_degenerate_spectra():
    s = Spectrum(np.full(4, 0.25))
    assert entropy_integral_closed_form(s) == pytest.approx(2.0, abs=1e-12)
    assert entropy_integral_quadrature(s) == pytest.approx(2.0, abs=1e-9)


def test_integral_requires_normalized_no_tail():
    with pytest.raises(InvariantViolation):
        entropy_integral_closed_form(
            Spectrum(np.array([0.6, 0.3]), tail_mass=0.1))


def test_pointwise_min_convention():
    # at mu = 1 the k = 0 term (total mass) must win: min is tails[0] = 1,
    # pinning the 0-indexed convention of the representation
    s = Spectrum(np.array([0.7, 0.3]))
    table = TailSumTable.build(s).tails
    ks = np.arange(table.size)
    assert np.min(table + ks * 1.0) == pytest.approx(1.0, abs=1e-15)
    # at mu just above the smallest eigenvalue, k = 1 wins for this spectrum
    mu = 0.4
    vals = table + ks * mu
    assert int(np.argmin(vals)) == 1
