"""Weak and strong typical sets over finite alphabets.

Exact set masses and cardinalities are computed by enumerating empirical
types (compositions of n into K parts): every sequence of a type has the
same probability, so the mass of a typical set is a sum of
multinomial(n; counts) * prod_i p_i^counts_i over the typical types.
Multinomial weights are handled in log space; cardinalities are exact
integers.  A Monte Carlo mode with a 99% Clopper-Pearson interval covers
parameter ranges where the type count is too large to enumerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy import stats

from .rng import stream
from .spectra import InvariantViolation

DEFAULT_MAX_TYPES = 2_000_000


@dataclass(frozen=True)
class SourceDistribution:
    """Probability vector over a finite alphabet with cached entropy."""

    probs: np.ndarray
    entropy_bits: float = field(default=math.nan)

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float).reshape(-1)
        if p.size == 0 or np.any(p < 0.0):
            raise InvariantViolation("probabilities must be non-negative and non-empty")
        if abs(float(np.sum(p)) - 1.0) > 1e-12:
            raise InvariantViolation(f"probabilities sum to {float(np.sum(p))!r}")
        p.setflags(write=False)
        nz = p[p > 0.0]
        h = float(-np.sum(nz * np.log2(nz)))
        if not math.isnan(self.entropy_bits) and abs(self.entropy_bits - h) > 1e-12:
            raise InvariantViolation("cached entropy does not match the probabilities")
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "entropy_bits", h)

    def __len__(self) -> int:
        return int(self.probs.size)


@dataclass(frozen=True)
class TypicalReport:
    """Mass and size of a typical set at block length n and slack delta.

    ``log2_cardinality_bound`` is the exact log2 set size in exact mode
    (-inf for an empty set) and the theoretical bound in Monte Carlo mode.
    ``mass_low``/``mass_high`` carry the 99% Clopper-Pearson interval for
    Monte Carlo estimates; in exact mode they equal the mass.
    """

    n: int
    delta: float
    mass: float
    log2_cardinality_bound: float
    kind: str
    mode: str = "exact"
    samples: int = 0
    mass_low: float = math.nan
    mass_high: float = math.nan


def sequence_rate_bits(dist: SourceDistribution, x_seq) -> float:
    """Empirical rate -(1/n) log2 p(x^n); +inf if a zero-probability symbol occurs."""
    x = np.asarray(x_seq, dtype=int).reshape(-1)
    if x.size == 0:
        raise ValueError("sequence must be non-empty")
    if np.any(x < 0) or np.any(x >= len(dist)):
        raise ValueError("sequence contains out-of-alphabet symbols")
    p = dist.probs[x]
    if np.any(p <= 0.0):
        return math.inf
    return float(-np.sum(np.log2(p)) / x.size)


def is_weakly_typical(dist: SourceDistribution, x_seq, delta: float) -> bool:
    """True iff |rate(x^n) - H| <= delta; zero-probability symbols disqualify."""
    if delta < 0.0:
        raise ValueError("delta must be non-negative")
    r = sequence_rate_bits(dist, x_seq)
    return math.isfinite(r) and abs(r - dist.entropy_bits) <= delta


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    # lexicographic over (c_0, ..., c_{k-1}) with sum n; deterministic order
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def type_count(n: int, k: int) -> int:
    return math.comb(n + k - 1, k - 1)


def _exact_multinomial(n: int, counts: tuple[int, ...]) -> int:
    c, rem = 1, n
    for t in counts:
        c *= math.comb(rem, t)
        rem -= t
    return c


def _log2_bigint(m: int) -> float:
    if m <= 0:
        return -math.inf
    bits = m.bit_length()
    if bits <= 900:
        return math.log2(m)
    shift = bits - 900
    return math.log2(m >> shift) + shift


@dataclass(frozen=True)
class _TypeRecord:
    counts: tuple[int, ...]
    log2_seq_prob: float  # -inf for types touching zero-probability symbols
    ln_multiplicity: float
    multiplicity: int


def _iter_type_records(dist: SourceDistribution, n: int,
                       max_types: int) -> Iterator[_TypeRecord]:
    k = len(dist)
    total = type_count(n, k)
    if total > max_types:
        raise InvariantViolation(
            f"{total} empirical types exceed the exact-mode limit {max_types}; "
            "use Monte Carlo mode")
    p = dist.probs
    log2p = np.where(p > 0.0, np.log2(np.where(p > 0.0, p, 1.0)), -math.inf)
    lg_n1 = math.lgamma(n + 1)
    if k == 2:
        # binary alphabets walk the binomial row incrementally; the exact
        # division keeps the multiplicity an exact integer at any n
        mult = 1
        l2p0, l2p1 = float(log2p[0]), float(log2p[1])
        for c0 in range(n + 1):
            c1 = n - c0
            l2 = (c0 * l2p0 if c0 else 0.0) + (c1 * l2p1 if c1 else 0.0)
            ln_mult = lg_n1 - math.lgamma(c0 + 1) - math.lgamma(c1 + 1)
            yield _TypeRecord((c0, c1), l2, ln_mult, mult)
            mult = mult * (n - c0) // (c0 + 1)
        return
    for counts in _compositions(n, k):
        c = np.asarray(counts)
        used = c > 0
        if np.any(used & (p <= 0.0)):
            l2 = -math.inf
        else:
            l2 = float(np.sum(c[used] * log2p[used]))
        ln_mult = lg_n1 - float(sum(math.lgamma(t + 1) for t in counts))
        yield _TypeRecord(counts, l2, ln_mult, _exact_multinomial(n, counts))


def _census(dist: SourceDistribution, n: int, delta: float, kind: str,
            max_types: int) -> tuple[float, int, bool]:
    """(mass, exact cardinality, any_excluded) of the typical set."""
    h = dist.entropy_bits
    p = dist.probs
    mass = 0.0
    card = 0
    excluded = False
    for rec in _iter_type_records(dist, n, max_types):
        if kind == "weak":
            ok = math.isfinite(rec.log2_seq_prob) and \
                abs(-rec.log2_seq_prob / n - h) <= delta
        else:
            c = np.asarray(rec.counts, dtype=float)
            ok = math.isfinite(rec.log2_seq_prob) and \
                bool(np.all(np.abs(c / n - p)[p > 0.0] <= delta))
        if ok:
            mass += math.exp(rec.ln_multiplicity + rec.log2_seq_prob * math.log(2.0))
            card += rec.multiplicity
        elif math.isfinite(rec.log2_seq_prob):
            excluded = True  # a mass-bearing type was cut
    if not excluded:
        mass = 1.0  # no mass-bearing type was cut, so the mass is exactly 1
    return min(mass, 1.0), card, excluded


def _clopper_pearson_99(hits: int, n: int) -> tuple[float, float]:
    lo = 0.0 if hits == 0 else float(stats.beta.ppf(0.005, hits, n - hits + 1))
    hi = 1.0 if hits == n else float(stats.beta.ppf(0.995, hits + 1, n - hits))
    return lo, hi


def _mc_mass(dist: SourceDistribution, n: int, delta: float, kind: str,
             samples: int, seed: int) -> tuple[float, float, float]:
    rng = stream(seed, 0)
    k = len(dist)
    p = dist.probs
    log2p = np.where(p > 0.0, np.log2(np.where(p > 0.0, p, 1.0)), -np.inf)
    hits = 0
    done = 0
    chunk = max(1, min(samples, int(2e7) // max(n, 1)))
    while done < samples:
        m = min(chunk, samples - done)
        seqs = rng.choice(k, size=(m, n), p=p)
        if kind == "weak":
            rates = -np.sum(log2p[seqs], axis=1) / n
            ok = np.abs(rates - dist.entropy_bits) <= delta
        else:
            counts = np.stack([np.sum(seqs == s, axis=1) for s in range(k)], axis=1)
            dev = np.abs(counts / n - p[None, :])
            ok = np.all(dev[:, p > 0.0] <= delta, axis=1)
            if np.any(p <= 0.0):
                ok &= np.all(counts[:, p <= 0.0] == 0, axis=1)
        hits += int(np.sum(ok))
        done += m
    lo, hi = _clopper_pearson_99(hits, samples)
    return hits / samples, lo, hi


def weak_typical_mass(dist: SourceDistribution, n: int, delta: float,
                      mode: str = "exact", samples: int = 100_000, seed: int = 0,
                      max_types: int = DEFAULT_MAX_TYPES) -> TypicalReport:
    """Probability mass of the weakly typical set W_delta at block length n.

    Exact mode enumerates empirical types (guarded by ``max_types``); the
    reported cardinality is then an exact integer count in log2.  Monte
    Carlo mode samples i.i.d. blocks and reports a 99% confidence interval.
    """
    if n < 1 or delta < 0.0:
        raise ValueError("need n >= 1 and delta >= 0")
    if mode == "exact":
        mass, card, _ = _census(dist, n, delta, "weak", max_types)
        return TypicalReport(n, delta, mass, _log2_bigint(card), "weak",
                             mode="exact", mass_low=mass, mass_high=mass)
    if mode == "mc":
        mass, lo, hi = _mc_mass(dist, n, delta, "weak", samples, seed)
        bound = n * (dist.entropy_bits + delta)
        return TypicalReport(n, delta, mass, bound, "weak", mode="mc",
                             samples=samples, mass_low=lo, mass_high=hi)
    raise ValueError(f"unknown mode {mode!r}")


def strong_typical_mass(dist: SourceDistribution, n: int, delta: float,
                        mode: str = "exact", samples: int = 100_000, seed: int = 0,
                        max_types: int = DEFAULT_MAX_TYPES) -> TypicalReport:
    """Mass of the strongly typical set: every empirical frequency within
    delta of its probability, and zero-probability symbols absent."""
    if n < 1 or delta < 0.0:
        raise ValueError("need n >= 1 and delta >= 0")
    if mode == "exact":
        mass, card, _ = _census(dist, n, delta, "strong", max_types)
        return TypicalReport(n, delta, mass, _log2_bigint(card), "strong",
                             mode="exact", mass_low=mass, mass_high=mass)
    if mode == "mc":
        mass, lo, hi = _mc_mass(dist, n, delta, "strong", samples, seed)
        return TypicalReport(n, delta, mass, n * math.log2(len(dist)), "strong",
                             mode="mc", samples=samples, mass_low=lo, mass_high=hi)
    raise ValueError(f"unknown mode {mode!r}")


def weak_typical_census(dist: SourceDistribution, n: int, delta: float,
                        max_types: int = DEFAULT_MAX_TYPES) -> tuple[float, int]:
    """(exact mass, exact integer cardinality) of the weakly typical set."""
    mass, card, _ = _census(dist, n, delta, "weak", max_types)
    return mass, card


def aep_bounds_check(dist: SourceDistribution, n: int, delta: float,
                     bound_delta: float | None = None, rtol: float = 1e-12,
                     max_types: int = DEFAULT_MAX_TYPES) -> bool:
    """Verify 2^{-n(H+d)} <= p(x^n) <= 2^{-n(H-d)} on every weakly typical type.

    ``bound_delta`` sets the window half-width d used for the bounds
    themselves (defaults to ``delta``); passing a smaller value tightens the
    bounds and should fail on non-degenerate sources.  Comparisons happen in
    log space with relative slack ``rtol``.
    """
    if bound_delta is None:
        bound_delta = delta
    h = dist.entropy_bits
    slack = rtol * max(1.0, n * (h + max(delta, bound_delta)))
    lo = -n * (h + bound_delta) - slack
    hi = -n * (h - bound_delta) + slack
    for rec in _iter_type_records(dist, n, max_types):
        if not math.isfinite(rec.log2_seq_prob):
            continue
        if abs(-rec.log2_seq_prob / n - h) > delta:
            continue
        if not (lo <= rec.log2_seq_prob <= hi):
            return False
    return True
