"""Dilution ledgers, mixing-driven convexity, and the converse chain."""

import math

import numpy as np
import pytest

from entcost import (
    DiagonalHamiltonian,
    DilutionTrace,
    Ensemble,
    InvariantViolation,
    Spectrum,
    additivity_check,
    binary_mixing_error,
    converse_bound,
    curtailed_binomial_pmf,
    curtailed_binomial_sample,
    dilution_sweep,
    eof_pure,
    harmonic_oscillator,
    mixed_dilution_rate,
    pure_dilution,
    schmidt_decompose,
    tensor_power_state,
)


def _geometric_pure_ensemble(members: int = 24) -> Ensemble:
    """p(x) proportional to 2^-x over pure states with marginal entropy <= 2 bits."""
    w = 2.0 ** -np.arange(members, dtype=float)
    pures = []
    for x in range(members):
        r = 0.25 + 0.5 * (x % 7) / 6.0
        q = r ** np.arange(4)
        pures.append(schmidt_decompose(np.diag(np.sqrt(q / q.sum()))))
    return Ensemble(w / w.sum(), tuple(pures))


def test_trace_invariants():
    with pytest.raises(InvariantViolation):
        DilutionTrace(n=4, ebits=3, cbits=5, error=0.1, rate=0.75)
    with pytest.raises(InvariantViolation):
        DilutionTrace(n=4, ebits=3, cbits=6, error=1.5, rate=0.75)
    with pytest.raises(InvariantViolation):
        DilutionTrace(n=4, ebits=3, cbits=6, error=0.1, rate=0.5)


def test_ebit_dilutes_at_rate_one_with_zero_error():
    ebit = Spectrum(np.array([0.5, 0.5]))
    for n in (1, 3, 10, 64):
        t = pure_dilution(ebit, 0.01, n)
        assert t.error == 0.0
        assert t.ebits == n
        assert t.rate == 1.0
        assert t.cbits == 2 * n


def test_product_state_needs_no_entanglement():
    t = pure_dilution(Spectrum(np.array([1.0])), 0.05, 20)
    assert t.ebits == 0
    assert t.error == 0.0
    assert t.rate == 0.0


def test_dilution_error_falls_below_tenth():
    spec = Spectrum(np.array([0.8, 0.2]))
    t = pure_dilution(spec, 0.05, 1731)
    assert t.error < 0.1
    assert t.error_kind == "exact"


def test_dilution_rate_within_entropy_window():
    spec = Spectrum(np.array([0.8, 0.2]))
    h = 0.7219280948873623
    for t in dilution_sweep(spec, 0.05, [10, 50, 200, 800]):
        assert t.rate <= h + 0.05 + 1.0 / t.n + 1e-12


def test_dilution_error_decreases_down_the_sweep():
    spec = Spectrum(np.array([0.8, 0.2]))
    errors = [t.error for t in dilution_sweep(spec, 0.05,
                                              [200, 400, 800, 1600])]
    assert all(a > b for a, b in zip(errors, errors[1:]))


def test_monte_carlo_mode_tracks_exact():
    spec = Spectrum(np.array([0.7, 0.3]))
    exact = pure_dilution(spec, 0.05, 300)
    mc = pure_dilution(spec, 0.05, 300, mode="mc", samples=40_000, seed=9)
    assert mc.error_kind == "mc-estimate"
    assert abs(mc.error - exact.error) < 0.05
    # Monte Carlo books the theoretical subspace size
    assert mc.ebits == math.ceil(300 * (0.8812908992306927 + 0.05))


def test_mixed_single_member_rate_is_marginal_entropy():
    psi = schmidt_decompose(np.diag([np.sqrt(0.8), np.sqrt(0.2)]))
    ens = Ensemble(np.array([1.0]), (psi,))
    for cut in (0, 3):
        point = mixed_dilution_rate(ens, cut)
        assert point.rate_bound == pytest.approx(eof_pure(psi), abs=1e-12)
        assert point.wasteful_term == 0.0
        assert point.delta_n == 0.0


def test_mixed_two_members_full_cut_is_exact_mean():
    m1 = schmidt_decompose(np.eye(2) / np.sqrt(2.0))
    m2 = schmidt_decompose(np.diag([1.0, 0.0]))
    ens = Ensemble(np.array([0.6, 0.4]), (m1, m2))
    point = mixed_dilution_rate(ens, 1)
    assert point.rate_bound == pytest.approx(0.6, abs=1e-12)
    assert point.wasteful_term == 0.0


def test_mixed_wasteful_term_vanishes_geometrically():
    ens = _geometric_pure_ensemble()
    points = [mixed_dilution_rate(ens, cut) for cut in range(0, 20)]
    wasteful = [p.wasteful_term for p in points]
    assert all(a > b for a, b in zip(wasteful, wasteful[1:]))
    assert wasteful[-1] < 1e-3
    # the rare weight itself halves with every extra common member
    deltas = [p.delta_n for p in points]
    assert all(abs(d2 / d1 - 0.5) < 0.05 for d1, d2 in zip(deltas, deltas[1:])
               if d1 > 1e-12)


def test_binary_mixing_hand_oracles():
    # n = 1, xi = 0.49 around one half: neither count is inside the window,
    # the raw bound saturates at 2
    assert binary_mixing_error(0.5, 0.49, 1) == 2.0
    # n = 2, xi = 0.5: every count is inside, the protocol is exact
    assert binary_mixing_error(0.5, 0.5, 2) == 0.0
    assert binary_mixing_error(0.3, 0.05, 10_000) < 1e-2


def test_binary_mixing_error_non_increasing_in_blocks():
    errors = [binary_mixing_error(0.3, 0.05, n) for n in (10, 100, 1000, 10_000)]
    assert all(a >= b for a, b in zip(errors, errors[1:]))
    assert errors[0] > errors[-1]


def test_curtailed_pmf_support_and_normalization():
    ks, probs = curtailed_binomial_pmf(0.3, 0.1, 100)
    assert ks.min() >= 20 and ks.max() <= 40
    assert float(np.sum(probs)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvariantViolation):
        curtailed_binomial_pmf(0.5, 0.49, 1)


def test_curtailed_sampler_respects_support():
    draws = curtailed_binomial_sample(0.3, 0.1, 100, size=3000, seed=17)
    assert draws.min() >= 20 and draws.max() <= 40
    again = curtailed_binomial_sample(0.3, 0.1, 100, size=3000, seed=17)
    assert np.array_equal(draws, again)


def test_curtailed_sampler_singleton_support():
    # window so tight only the exact composition count fits
    draws = curtailed_binomial_sample(0.5, 1e-9, 2, size=50, seed=1)
    assert np.all(draws == 1)


def test_converse_terms_decrease_with_epsilon():
    bell = schmidt_decompose(np.eye(2) / np.sqrt(2.0))
    rho = bell.to_density()
    h = harmonic_oscillator()
    reports = [converse_bound(rho, 1.0, eps, h, 4, seed=0)
               for eps in (1e-2, 1e-3, 1e-4)]
    conts = [r.continuity_term_bits for r in reports]
    gs = [r.g_term_bits for r in reports]
    assert all(a > b for a, b in zip(conts, conts[1:]))
    assert all(a > b for a, b in zip(gs, gs[1:]))
    lowers = [r.rate_lower_bound for r in reports]
    assert all(a < b for a, b in zip(lowers, lowers[1:]))


def test_converse_pure_target_uses_exact_surrogate():
    bell = schmidt_decompose(np.eye(2) / np.sqrt(2.0))
    rep = converse_bound(bell.to_density(), 1.0, 1e-3, harmonic_oscillator(),
                         6, seed=0)
    assert rep.surrogate_kind == "pure-exact"
    assert rep.ef_surrogate_bits == pytest.approx(6.0, abs=1e-9)
    assert rep.lhs_ebits == 6


def test_converse_rejects_bad_epsilon():
    bell = schmidt_decompose(np.eye(2) / np.sqrt(2.0))
    with pytest.raises(ValueError):
        converse_bound(bell.to_density(), 1.0, 0.0, harmonic_oscillator(), 2)


def test_additivity_of_pure_rate():
    psi = schmidt_decompose(np.diag([np.sqrt(0.7), np.sqrt(0.3)]))
    rho = psi.to_density()

    def marginal_entropy_rate(state):
        from entcost import partial_trace
        ea = np.clip(np.linalg.eigvalsh(partial_trace(state, "A")), 0.0, None)
        ea = ea[ea > 1e-15]
        return float(-np.sum(ea * np.log2(ea)))

    assert additivity_check(marginal_entropy_rate, rho, 3)
    assert tensor_power_state(rho, 2).dim_a == 4
