"""Grounded diagonal Hamiltonians, Gibbs spectra, and continuity bounds.

Hamiltonians are diagonal with non-decreasing energies, ground energy 0,
and natural-log units (a Gibbs weight is exp(-beta * e_n)).  An optional
affine tail model e_n = a*n + b for levels beyond the truncation makes the
partition function and mean energy exactly summable, so an infinite ladder
like the harmonic oscillator can be represented without approximation.

The max-entropy-at-fixed-energy curve F(E) (entropy in bits of the Gibbs
state with mean energy E) underpins a one-sided continuity bound

    eps' * F(E / eps') + g(eps'),   eps' = sqrt(eps * (2 - eps)),

which vanishes as eps -> 0 precisely because F grows sublinearly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import LN2, g_function
from .spectra import InvariantViolation, Spectrum

ENERGY_RTOL = 1e-10
DEFAULT_BETA_GRID = (0.1, 0.5, 1.0, 2.0)


@dataclass(frozen=True)
class AffineTail:
    """Energies e_n = a*n + b for every level n beyond the stored ones."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0.0):
            raise InvariantViolation("affine tail needs slope a > 0 for convergence")


@dataclass(frozen=True)
class DiagonalHamiltonian:
    """Diagonal Hamiltonian with non-decreasing energies and ground energy 0."""

    energies: np.ndarray
    tail: AffineTail | None = None

    def __post_init__(self) -> None:
        e = np.asarray(self.energies, dtype=float).reshape(-1)
        if e.size == 0:
            raise InvariantViolation("need at least one level")
        if abs(e[0]) > 1e-9:
            raise InvariantViolation(f"ground energy must be 0, got {e[0]!r}")
        e = e - e[0]
        if np.any(e[1:] - e[:-1] < -1e-12):
            raise InvariantViolation("energies must be non-decreasing")
        if self.tail is not None:
            first_tail = self.tail.a * e.size + self.tail.b
            if first_tail < e[-1] - 1e-9:
                raise InvariantViolation(
                    "tail model starts below the last stored energy")
        e.setflags(write=False)
        object.__setattr__(self, "energies", e)

    @property
    def levels(self) -> int:
        return int(self.energies.size)

    def ground_degeneracy(self) -> int:
        return int(np.sum(np.abs(self.energies) <= 1e-12))


def harmonic_oscillator(levels: int = 64) -> DiagonalHamiltonian:
    """The ladder e_n = n, stored up to ``levels`` and continued exactly."""
    if levels < 1:
        raise ValueError("levels must be positive")
    return DiagonalHamiltonian(np.arange(levels, dtype=float), AffineTail(1.0, 0.0))


def _partition_sums(h: DiagonalHamiltonian, beta: float) -> tuple[float, float]:
    """(Z, sum of e_n * exp(-beta e_n)) including the tail model exactly."""
    if not (beta > 0.0) or not math.isfinite(beta):
        raise ValueError("beta must be positive and finite")
    e = h.energies
    w = np.exp(-beta * e)
    z = float(np.sum(w))
    num = float(np.sum(e * w))
    if h.tail is not None:
        a, b = h.tail.a, h.tail.b
        e_first = a * h.levels + b
        x = math.exp(-beta * a)
        w0 = math.exp(-beta * e_first)
        z += w0 / (1.0 - x)
        num += w0 * (e_first / (1.0 - x) + a * x / (1.0 - x) ** 2)
    return z, num


@dataclass(frozen=True)
class GibbsPoint:
    """A point on the Gibbs curve: inverse temperature, mean energy, entropy.

    ``beta = math.inf`` encodes the zero-energy endpoint, where the state is
    uniform on the ground space.
    """

    beta: float
    energy: float
    entropy_bits: float


def gibbs_state(h: DiagonalHamiltonian, beta: float) -> Spectrum:
    """Gibbs spectrum exp(-beta e_n)/Z over the stored levels.

    The mass of the (exactly summed) tail levels is reported as the
    spectrum's tail mass, so the result is normalized including its tail.
    """
    z, _ = _partition_sums(h, beta)
    vals = np.exp(-beta * h.energies) / z
    tail_mass = max(0.0, 1.0 - float(np.sum(vals)))
    return Spectrum(vals, tail_mass, normalized=True)


def gibbs_point(h: DiagonalHamiltonian, beta: float) -> GibbsPoint:
    z, num = _partition_sums(h, beta)
    energy = num / z
    entropy_bits = (beta * energy + math.log(z)) / LN2
    return GibbsPoint(beta, energy, entropy_bits)


def max_mean_energy(h: DiagonalHamiltonian) -> float:
    """Supremum of representable mean energies (inf with a tail model)."""
    if h.tail is not None:
        return math.inf
    return float(np.mean(h.energies))


def beta_of_energy(h: DiagonalHamiltonian, energy: float,
                   rtol: float = ENERGY_RTOL) -> GibbsPoint:
    """Invert the (strictly decreasing) energy-vs-beta curve by bisection.

    The bracket starts at [1e-6, 1e6] and expands geometrically until it
    straddles the target.  E = 0 returns the beta = inf endpoint with the
    ground-space entropy.
    """
    if energy < 0.0:
        raise InvariantViolation("mean energy must be non-negative")
    if energy == 0.0:
        return GibbsPoint(math.inf, 0.0, math.log2(h.ground_degeneracy()))
    if energy >= max_mean_energy(h):
        raise InvariantViolation(
            f"energy {energy!r} is not attained by any Gibbs state of this Hamiltonian")

    def mean_energy(beta: float) -> float:
        z, num = _partition_sums(h, beta)
        return num / z

    lo, hi = 1e-6, 1e6
    for _ in range(200):
        if mean_energy(lo) > energy:
            break
        lo *= 0.1
        if lo < 1e-280:
            raise InvariantViolation("failed to bracket the target energy from above")
    for _ in range(200):
        if mean_energy(hi) < energy:
            break
        hi *= 10.0
        if hi > 1e280:
            raise InvariantViolation("failed to bracket the target energy from below")
    tol = rtol * max(1.0, abs(energy))
    mid = 0.5 * (lo + hi)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        e_mid = mean_energy(mid)
        if abs(e_mid - energy) <= tol:
            break
        if e_mid > energy:
            lo = mid
        else:
            hi = mid
        if (hi - lo) <= 1e-16 * hi:
            break
    point = gibbs_point(h, mid)
    if abs(point.energy - energy) > 10.0 * tol:
        raise InvariantViolation(
            f"bisection stalled: reached energy {point.energy!r} for target {energy!r}")
    return point


def max_entropy_at_energy(h: DiagonalHamiltonian, energy: float) -> float:
    """F(E) = sup { S(rho) : Tr[rho H] <= E }, in bits.

    For E below the uniform-state energy this is the Gibbs entropy at the
    matching beta.  A bounded Hamiltonian saturates at log2(levels) once
    the constraint goes inactive; with a tail model every energy is
    attained.
    """
    if energy < 0.0:
        raise InvariantViolation("mean energy must be non-negative")
    if h.tail is None and energy >= max_mean_energy(h):
        return math.log2(h.levels)
    return beta_of_energy(h, energy).entropy_bits


def sublinearity_probe(h: DiagonalHamiltonian, energy_grid) -> list[tuple[float, float]]:
    """Table of (E, F(E)/E) across an increasing grid spanning >= 3 decades."""
    grid = np.asarray(energy_grid, dtype=float).reshape(-1)
    if grid.size < 2 or np.any(grid <= 0.0) or np.any(np.diff(grid) <= 0.0):
        raise ValueError("energy grid must be positive and strictly increasing")
    if grid[-1] / grid[0] < 1e3:
        raise ValueError("energy grid must span at least three decades")
    return [(float(e), max_entropy_at_energy(h, float(e)) / float(e)) for e in grid]


def one_sided_continuity_bound(h: DiagonalHamiltonian, energy: float,
                               epsilon: float) -> float:
    """eps' * F(E/eps') + g(eps') with eps' = sqrt(eps*(2-eps)).

    One-sided entropy continuity at energy level E: the bound applies when
    comparing a state of mean energy <= E against one eps-close to it in
    trace distance.  Tends to 0 as eps -> 0 because F grows sublinearly.
    """
    if not (0.0 <= epsilon <= 1.0):
        raise ValueError("epsilon must lie in [0, 1]")
    if epsilon == 0.0:
        return 0.0
    if energy < 0.0:
        raise InvariantViolation("energy must be non-negative")
    eps_prime = math.sqrt(epsilon * (2.0 - epsilon))
    if energy == 0.0:
        return g_function(eps_prime)
    return eps_prime * max_entropy_at_energy(h, energy / eps_prime) + g_function(eps_prime)


@dataclass(frozen=True)
class SeriesWeights:
    """Diverging weights b against a summable series a with sum(a*b) <= c*sum(a).

    b is non-decreasing with b >= 1, built from the suffix sums of a:
    b_n = 1 - log2(tail_n / total).  The raw recipe achieves slack factor
    c = 5; smaller factors c in (1, 5) are reached by mixing toward the
    constant weight 1.
    """

    a: np.ndarray
    b: np.ndarray
    c: float

    def __post_init__(self) -> None:
        a = np.asarray(self.a, dtype=float).reshape(-1)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if a.size != b.size or a.size == 0:
            raise InvariantViolation("a and b must align and be non-empty")
        if np.any(b < 1.0 - 1e-12):
            raise InvariantViolation("weights must satisfy b >= 1")
        if np.any(np.diff(b) < -1e-12):
            raise InvariantViolation("weights must be non-decreasing")
        total = float(np.sum(a))
        weighted = float(np.sum(a * b))
        if weighted > self.c * total * (1.0 + 1e-12):
            raise InvariantViolation(
                f"sum(a*b) = {weighted!r} exceeds c * sum(a) = {self.c * total!r}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def series_weights(a, c: float = 5.0) -> SeriesWeights:
    """Build diverging weights against a non-negative summable sequence.

    Weights grow like 1 + log2(total / tail_n), so they diverge along the
    truncated trend wherever the suffix mass keeps shrinking; indices past
    the support continue the growth by one per step.  Requires c > 1
    (c >= 5 uses the raw recipe, smaller c mixes toward constant 1).
    """
    if c <= 1.0:
        raise InvariantViolation("slack factor c must exceed 1")
    arr = np.asarray(a, dtype=float).reshape(-1)
    if arr.size == 0 or np.any(arr < 0.0):
        raise InvariantViolation("series must be non-negative and non-empty")
    total = float(np.sum(arr))
    if total <= 0.0:
        raise InvariantViolation("series must carry positive mass")
    tails = np.empty(arr.size)
    acc = 0.0
    for i in range(arr.size - 1, -1, -1):
        acc += arr[i]
        tails[i] = acc
    b = np.empty(arr.size)
    last = 1.0
    for i in range(arr.size):
        if tails[i] > 0.0:
            last = 1.0 - math.log2(tails[i] / total)
            b[i] = last
        else:
            last = last + 1.0  # past the support: keep the divergence going
            b[i] = last
    if c < 5.0:
        p = (5.0 - c) / 4.0
        b = p + (1.0 - p) * b
    return SeriesWeights(arr, b, c)


def hamiltonian_for_spectrum(spectrum: Spectrum, c: float = 5.0) -> DiagonalHamiltonian:
    """Grounded diagonal Hamiltonian under which a given state has finite energy.

    Level n >= 1 gets energy b_n * ln(1 / p_n) with b the series weights of
    the probability sequence itself; the largest eigenvalue sits at energy 0.
    Weights diverge while sum p_n b_n ln(1/p_n) stays within the slack
    factor of the entropy, so the state's mean energy is finite while the
    Hamiltonian still forces Gibbs normalizability.
    """
    sp = spectrum.stripped()
    if sp.tail_mass > 1e-12:
        raise InvariantViolation("need the full spectrum (tail mass 0)")
    p = sp.values
    if p.size == 1:
        return DiagonalHamiltonian(np.zeros(1), None)
    b = series_weights(p, c).b
    energies = np.concatenate(([0.0], b[1:] * np.log(1.0 / p[1:])))
    return DiagonalHamiltonian(energies, None)


def state_mean_energy(h: DiagonalHamiltonian, spectrum: Spectrum) -> float:
    """sum_n p_n e_n for a spectrum aligned with the Hamiltonian's levels."""
    p = spectrum.values
    if p.size > h.levels:
        raise InvariantViolation("spectrum has more levels than the Hamiltonian")
    return float(np.sum(p * h.energies[:p.size]))


def mean_energy_density(h: DiagonalHamiltonian, rho: np.ndarray) -> float:
    """Tr[rho H] for a density matrix expressed in the Hamiltonian's eigenbasis."""
    rho = np.asarray(rho)
    d = rho.shape[0]
    if rho.shape != (d, d) or d > h.levels:
        raise InvariantViolation("density matrix does not fit the stored levels")
    return float(np.sum(np.diag(rho).real * h.energies[:d]))


def gibbs_hypothesis_check(h: DiagonalHamiltonian,
                           betas=DEFAULT_BETA_GRID) -> bool:
    """True iff the partition function is finite on every probe temperature.

    Finite level sets always pass; an affine tail passes because its
    geometric remainder is summed exactly.  The probe grid documents which
    temperatures were checked.
    """
    for beta in betas:
        z, num = _partition_sums(h, float(beta))
        if not (math.isfinite(z) and math.isfinite(num)):
            return False
    return True


def n_copy_gibbs_entropy(h: DiagonalHamiltonian, n: int, energy_per_copy: float) -> float:
    """F of n non-interacting copies at total energy n*E, as n * F(E).

    For a sum Hamiltonian the Gibbs state factorizes at equal beta, so the
    n-copy curve satisfies F_n(n*E) = n * F(E) exactly; no tensor power is
    ever materialized.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if energy_per_copy == 0.0:
        return n * math.log2(h.ground_degeneracy())
    return n * beta_of_energy(h, energy_per_copy).entropy_bits
