"""Entanglement dilution protocols and their resource ledgers.

Preparing n copies of a pure target from shared maximal entanglement needs
one ebit per qubit of the typical subspace, so the ledger of a block is
ceil(log2 |W_delta|) ebits (capped by ceil(n(S + delta))) and, under the
teleportation convention adopted here, two classical bits per ebit.  The
approximation error of projecting onto the typical subspace is exactly
sqrt(1 - mass(W_delta)) in trace distance.

Mixed targets are diluted member-by-member from a pure decomposition; the
rare part beyond a cutoff is prepared wastefully and only contributes
delta_N * S(omega_N^A), which vanishes as the cutoff grows.  Binary
mixtures can instead be driven by a curtailed binomial on the mixing
weight, at cost 2 * (1 - mass) in trace distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .entropy import g_function, von_neumann_entropy
from .eof import eof_surrogate_for_copies
from .gibbs import DiagonalHamiltonian, max_entropy_at_energy, mean_energy_density
from .rng import stream
from .spectra import (
    BipartiteState,
    Ensemble,
    InvariantViolation,
    PureBipartite,
    Spectrum,
    partial_trace,
    tensor_power_state,
)
from .typicality import (
    DEFAULT_MAX_TYPES,
    SourceDistribution,
    weak_typical_census,
    weak_typical_mass,
)


@dataclass(frozen=True)
class DilutionTrace:
    """Resource ledger of one dilution block.

    ``error`` is trace distance in [0, 1]; ``error_kind`` records whether it
    is the exact projection error or a sampled estimate.  ``cbits`` follows
    the two-classical-bits-per-teleported-qubit convention.
    """

    n: int
    ebits: int
    cbits: int
    error: float
    rate: float
    error_kind: str = "exact"

    def __post_init__(self) -> None:
        if self.n < 1 or self.ebits < 0:
            raise InvariantViolation("need n >= 1 and ebits >= 0")
        if self.cbits != 2 * self.ebits:
            raise InvariantViolation("classical cost must be 2 bits per ebit")
        if not (0.0 <= self.error <= 1.0):
            raise InvariantViolation(f"error {self.error!r} outside [0, 1]")
        if not math.isclose(self.rate, self.ebits / self.n, rel_tol=0.0, abs_tol=1e-12):
            raise InvariantViolation("rate must equal ebits / n")


def _schmidt_of(target: PureBipartite | Spectrum) -> Spectrum:
    return target if isinstance(target, Spectrum) else target.schmidt


def pure_dilution(target: PureBipartite | Spectrum, delta: float, n: int,
                  mode: str = "exact", samples: int = 100_000, seed: int = 0,
                  max_types: int = DEFAULT_MAX_TYPES) -> DilutionTrace:
    """Dilute n copies of a pure target through its typical subspace.

    The target may be the state itself or just its Schmidt spectrum.  Exact
    mode enumerates the Schmidt-coefficient types: the subspace dimension
    |W_delta| is an exact integer and the error sqrt(1 - mass(W_delta)) is
    exact.  Monte Carlo mode estimates the mass and books the theoretical
    ceil(n(S + delta)) ebits instead.
    """
    if delta < 0.0 or n < 1:
        raise ValueError("need delta >= 0 and n >= 1")
    dist = SourceDistribution(_schmidt_of(target).stripped().values)
    h = dist.entropy_bits
    cap = math.ceil(n * (h + delta)) if h + delta > 0.0 else 0
    if mode == "exact":
        mass, count = weak_typical_census(dist, n, delta, max_types)
        ebits = min((count - 1).bit_length(), cap) if count > 0 else 0
        error = 0.0 if mass >= 1.0 else math.sqrt(max(0.0, 1.0 - mass))
        kind = "exact"
    elif mode == "mc":
        report = weak_typical_mass(dist, n, delta, mode="mc",
                                   samples=samples, seed=seed)
        ebits = cap
        error = math.sqrt(max(0.0, 1.0 - report.mass))
        kind = "mc-estimate"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return DilutionTrace(n, ebits, 2 * ebits, min(1.0, error), ebits / n, kind)


def dilution_sweep(target: PureBipartite | Spectrum, delta: float, n_grid,
                   **kwargs) -> list[DilutionTrace]:
    return [pure_dilution(target, delta, int(n), **kwargs) for n in n_grid]


@dataclass(frozen=True)
class MixedDilutionPoint:
    """Rate bound of a decomposition split at a cutoff into common and rare parts."""

    n_cut: int
    rate_bound: float
    wasteful_term: float
    delta_n: float


def mixed_dilution_rate(decomposition: Ensemble, n_cut: int) -> MixedDilutionPoint:
    """Rate bound sum_{x<=N} p(x) S(psi_x_A) + delta_N * S(omega_N^A).

    Members with index above ``n_cut`` form the rare part of weight delta_N;
    they are prepared jointly (wastefully) at the entropy of their averaged
    marginal, which is the term that must vanish as the cutoff grows.
    """
    if n_cut < 0:
        raise ValueError("n_cut must be non-negative")
    if not decomposition.all_pure():
        raise InvariantViolation("dilution needs a pure-member decomposition")
    w = decomposition.weights
    members = decomposition.members
    common = float(sum(
        w[x] * von_neumann_entropy(members[x].schmidt)
        for x in range(min(n_cut + 1, len(members)))))
    delta_n = float(np.sum(w[n_cut + 1:])) if n_cut + 1 < len(members) else 0.0
    if delta_n <= 0.0:
        return MixedDilutionPoint(n_cut, common, 0.0, 0.0)
    da = decomposition.dim_a
    omega = np.zeros((da, da), dtype=complex)
    for x in range(n_cut + 1, len(members)):
        omega += w[x] * members[x].marginal_a()
    omega /= delta_n
    eig = np.clip(np.linalg.eigvalsh((omega + omega.conj().T) / 2.0), 0.0, None)
    wasteful = delta_n * von_neumann_entropy(Spectrum.from_unsorted(
        eig, normalized=False))
    return MixedDilutionPoint(n_cut, common + wasteful, wasteful, delta_n)


def _curtailed_support(p0: float, xi: float, n: int) -> np.ndarray:
    if not (0.0 < p0 < 1.0):
        raise ValueError("p0 must lie strictly between 0 and 1")
    if xi <= 0.0 or n < 1:
        raise ValueError("need xi > 0 and n >= 1")
    ks = np.arange(n + 1)
    return ks[np.abs(ks / n - p0) <= xi]


def _binomial_log_pmf(ks: np.ndarray, p0: float, n: int) -> np.ndarray:
    return (gammaln(n + 1) - gammaln(ks + 1) - gammaln(n - ks + 1)
            + ks * math.log(p0) + (n - ks) * math.log1p(-p0))


def binary_mixing_error(p0: float, xi: float, n: int) -> float:
    """Raw error bound 2 * (1 - mass) of driving a binary mixture by a
    curtailed binomial count; may exceed 1, cap at 1 when booking it as a
    trace distance."""
    ks = _curtailed_support(p0, xi, n)
    if ks.size == 0:
        return 2.0
    if ks.size == n + 1:
        return 0.0  # nothing curtailed
    mass = float(np.sum(np.exp(_binomial_log_pmf(ks, p0, n))))
    return max(0.0, 2.0 * (1.0 - mass))


def curtailed_binomial_pmf(p0: float, xi: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Support and normalized probabilities of the curtailed binomial."""
    ks = _curtailed_support(p0, xi, n)
    if ks.size == 0:
        raise InvariantViolation("curtailed support is empty; widen xi or grow n")
    logw = _binomial_log_pmf(ks, p0, n)
    w = np.exp(logw - np.max(logw))
    return ks, w / np.sum(w)


def curtailed_binomial_sample(p0: float, xi: float, n: int, size: int = 1,
                              seed: int = 0) -> np.ndarray:
    """Draw mixing counts K with |K/n - p0| <= xi from the curtailed binomial."""
    ks, probs = curtailed_binomial_pmf(p0, xi, n)
    rng = stream(seed, 0)
    return rng.choice(ks, size=size, p=probs)


@dataclass(frozen=True)
class ConverseReport:
    """Terms of the rate converse chain at one (n, epsilon) point.

    floor(r*n) is compared against the formation surrogate of the n-copy
    target minus the energy-continuity correction n * eps' * F(E/eps') and
    the offset g(eps').  The surrogate is an UPPER bound on the true
    formation value (exact for pure targets), so ``slack_bits`` is reliable
    as a consistency indicator, not as a proof of optimality.
    """

    n: int
    r: float
    epsilon: float
    energy: float
    lhs_ebits: int
    ef_surrogate_bits: float
    surrogate_kind: str
    continuity_term_bits: float
    g_term_bits: float
    rate_lower_bound: float
    slack_bits: float


def converse_bound(rho: BipartiteState, r: float, epsilon: float,
                   hamiltonian: DiagonalHamiltonian, n: int,
                   **estimate_kwargs) -> ConverseReport:
    """Evaluate the converse chain floor(rn) >= E_f(rho^n) - n*eps'F(E/eps') - g(eps').

    E is the A-marginal energy under the supplied grounded Hamiltonian;
    eps' = sqrt(epsilon * (2 - epsilon)).
    """
    if n < 1 or r < 0.0:
        raise ValueError("need n >= 1 and r >= 0")
    if not (0.0 < epsilon <= 1.0):
        raise ValueError("epsilon must lie in (0, 1]")
    energy = mean_energy_density(hamiltonian, partial_trace(rho, "A"))
    eps_prime = math.sqrt(epsilon * (2.0 - epsilon))
    if energy > 0.0:
        cont_per_copy = eps_prime * max_entropy_at_energy(hamiltonian,
                                                          energy / eps_prime)
    else:
        cont_per_copy = eps_prime * math.log2(hamiltonian.ground_degeneracy())
    g_term = g_function(eps_prime)
    ef_total, kind = eof_surrogate_for_copies(rho, n, **estimate_kwargs)
    lhs = math.floor(r * n)
    rate_lower = ef_total / n - cont_per_copy - g_term / n
    slack = lhs - (ef_total - n * cont_per_copy - g_term)
    return ConverseReport(n, r, epsilon, energy, lhs, ef_total, kind,
                          n * cont_per_copy, g_term, rate_lower, slack)


def additivity_check(rate_fn, rho: BipartiteState, n: int,
                     atol: float = 1e-9) -> bool:
    """True iff rate_fn(rho^(x) n) / n <= rate_fn(rho) + atol."""
    if n < 1:
        raise ValueError("n must be positive")
    single = float(rate_fn(rho))
    many = float(rate_fn(tensor_power_state(rho, n)))
    return many / n <= single + atol
