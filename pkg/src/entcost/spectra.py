"""Core value types for finite-truncation bipartite states.

Everything in this module is a dense double-precision truncation of an
in-principle infinite-dimensional object: eigenvalue spectra with declared
tail mass, bipartite density operators, pure states with cached Schmidt
coefficients, and weighted ensembles.  Constructors validate their numeric
invariants once; instances are immutable afterwards and safe to share
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

PSD_ATOL = 1e-12
TRACE_ATOL = 1e-12
NORMALIZED_ATOL = 1e-12
WEIGHT_ATOL = 1e-10
RECONSTRUCTION_ATOL = 1e-10


class InvariantViolation(ValueError):
    """A constructed value broke one of its declared numeric invariants."""


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Spectrum:
    """Non-increasing sequence of non-negative reals plus declared tail mass.

    ``tail_mass`` records how much weight lives beyond the truncation point,
    so downstream bounds can account for what was cut off.  A ``normalized``
    spectrum must carry total mass 1 to within 1e-12; pass
    ``normalized=False`` for spectra of general positive operators.
    """

    values: np.ndarray
    tail_mass: float = 0.0
    normalized: bool = True

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if v.size == 0:
            raise InvariantViolation("spectrum needs at least one value")
        if np.any(v < -PSD_ATOL):
            raise InvariantViolation("spectrum values must be non-negative")
        if np.any(v[:-1] - v[1:] < -1e-12):
            raise InvariantViolation("spectrum values must be non-increasing")
        v = np.clip(v, 0.0, None)
        tail = float(self.tail_mass)
        if tail < -PSD_ATOL:
            raise InvariantViolation("tail mass must be non-negative")
        tail = max(tail, 0.0)
        object.__setattr__(self, "values", _readonly(v))
        object.__setattr__(self, "tail_mass", tail)
        if self.normalized and abs(self.total_mass - 1.0) > NORMALIZED_ATOL:
            raise InvariantViolation(
                f"normalized spectrum has total mass {self.total_mass!r}")

    @classmethod
    def from_unsorted(cls, values, tail_mass: float = 0.0,
                      normalized: bool = True) -> "Spectrum":
        v = np.sort(np.asarray(values, dtype=float).reshape(-1))[::-1]
        return cls(v, tail_mass, normalized)

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.values)) + self.tail_mass

    def __len__(self) -> int:
        return int(self.values.size)

    def stripped(self) -> "Spectrum":
        """Drop trailing zero values (tail mass is kept)."""
        nz = np.nonzero(self.values)[0]
        if nz.size == 0:
            return Spectrum(self.values[:1], self.tail_mass, self.normalized)
        return Spectrum(self.values[:nz[-1] + 1], self.tail_mass, self.normalized)


def _check_square(m: np.ndarray, dim: int, what: str) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (dim, dim):
        raise InvariantViolation(f"{what} must be {dim}x{dim}, got {m.shape}")
    return m


@dataclass(frozen=True)
class BipartiteState:
    """Density operator on a (dim_a x dim_b)-dimensional bipartite space.

    The constructor symmetrizes the matrix as (x + x')/2 before validating,
    so inputs that are Hermitian only up to roundoff are accepted.  Basis
    ordering is row-major: index i*dim_b + j carries |i>_A |j>_B.
    """

    dim_a: int
    dim_b: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        d = self.dim_a * self.dim_b
        if self.dim_a < 1 or self.dim_b < 1:
            raise InvariantViolation("dimensions must be positive")
        m = _check_square(self.matrix, d, "state matrix")
        herm_defect = np.max(np.abs(m - m.conj().T)) if d > 1 else abs(m[0, 0].imag)
        m = (m + m.conj().T) / 2.0
        eig = np.linalg.eigvalsh(m)
        if eig[0] < -PSD_ATOL:
            raise InvariantViolation(f"state has negative eigenvalue {eig[0]!r}")
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise InvariantViolation(f"state trace is {tr!r}")
        object.__setattr__(self, "matrix", _readonly(m))
        object.__setattr__(self, "_herm_defect", float(herm_defect))

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def spectrum(self) -> Spectrum:
        eig = np.linalg.eigvalsh(self.matrix)[::-1]
        return Spectrum(np.clip(eig, 0.0, None), 0.0, normalized=True)


@dataclass(frozen=True)
class PureBipartite:
    """Pure bipartite state stored as its amplitude matrix.

    ``amplitudes[i, j]`` is the coefficient of |i>_A |j>_B; the Frobenius
    norm must be 1.  ``schmidt`` caches the squared singular values of the
    amplitude matrix, sorted non-increasing.
    """

    amplitudes: np.ndarray
    schmidt: Spectrum

    def __post_init__(self) -> None:
        c = np.asarray(self.amplitudes, dtype=complex)
        if c.ndim != 2 or c.shape[0] < 1 or c.shape[1] < 1:
            raise InvariantViolation("amplitudes must be a 2-D matrix")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > 1e-9:
            raise InvariantViolation(f"amplitude matrix has norm {norm!r}")
        sv = np.linalg.svd(c, compute_uv=False)
        sq = np.clip(sv, 0.0, None) ** 2
        pad = max(len(self.schmidt), sq.size)
        a = np.zeros(pad)
        a[:sq.size] = sq
        b = np.zeros(pad)
        b[:len(self.schmidt)] = self.schmidt.values
        if np.max(np.abs(a - b)) > RECONSTRUCTION_ATOL:
            raise InvariantViolation("schmidt spectrum does not match amplitudes")
        object.__setattr__(self, "amplitudes", _readonly(c))

    @property
    def dim_a(self) -> int:
        return int(self.amplitudes.shape[0])

    @property
    def dim_b(self) -> int:
        return int(self.amplitudes.shape[1])

    def vector(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)

    def marginal_a(self) -> np.ndarray:
        c = self.amplitudes
        return c @ c.conj().T

    def marginal_b(self) -> np.ndarray:
        c = self.amplitudes
        return c.T @ c.conj()

    def to_density(self) -> BipartiteState:
        v = self.vector()
        return BipartiteState(self.dim_a, self.dim_b, np.outer(v, v.conj()))


def schmidt_decompose(amplitudes) -> PureBipartite:
    """Build a PureBipartite from a nonzero amplitude matrix.

    The matrix is normalized to unit Frobenius norm first; the Schmidt
    spectrum is the vector of squared singular values of the result.
    """
    c = np.asarray(amplitudes, dtype=complex)
    if c.ndim != 2:
        raise InvariantViolation("amplitudes must be a 2-D matrix")
    norm = float(np.linalg.norm(c))
    if norm <= 0.0 or not math.isfinite(norm):
        raise InvariantViolation("amplitude matrix must be nonzero and finite")
    c = c / norm
    sv = np.linalg.svd(c, compute_uv=False)
    sq = np.clip(sv, 0.0, None) ** 2
    sq = sq / np.sum(sq)
    return PureBipartite(c, Spectrum(sq, 0.0, normalized=True))


@dataclass(frozen=True)
class Ensemble:
    """Finite weighted list of bipartite states on common dimensions.

    Members may be PureBipartite or BipartiteState.  Weights must be
    non-negative and sum to 1 within 1e-10.  Only finitely many members are
    representable here; a countable preparation has to be truncated before
    it can be stored, with the cut accounted for by the caller.
    """

    weights: np.ndarray
    members: tuple

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        members = tuple(self.members)
        if w.size != len(members) or w.size == 0:
            raise InvariantViolation("weights and members must align and be non-empty")
        if np.any(w < -WEIGHT_ATOL):
            raise InvariantViolation("weights must be non-negative")
        if abs(float(np.sum(w)) - 1.0) > WEIGHT_ATOL:
            raise InvariantViolation(f"weights sum to {float(np.sum(w))!r}")
        dims = {(m.dim_a, m.dim_b) for m in members}
        if len(dims) != 1:
            raise InvariantViolation(f"members live on mixed dimensions {dims}")
        object.__setattr__(self, "weights", _readonly(np.clip(w, 0.0, None)))
        object.__setattr__(self, "members", members)

    @property
    def dim_a(self) -> int:
        return self.members[0].dim_a

    @property
    def dim_b(self) -> int:
        return self.members[0].dim_b

    def all_pure(self) -> bool:
        return all(isinstance(m, PureBipartite) for m in self.members)


def partial_trace(state: BipartiteState, keep: str) -> np.ndarray:
    """Trace out one side of a bipartite state; ``keep`` is "A" or "B"."""
    da, db = state.dim_a, state.dim_b
    t = state.matrix.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError("keep must be 'A' or 'B'")


def trace_distance(x: np.ndarray, y: np.ndarray) -> float:
    """(1/2)||x - y||_1 for Hermitian matrices of equal shape."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != y.shape:
        raise InvariantViolation(f"shape mismatch {x.shape} vs {y.shape}")
    d = x - y
    d = (d + d.conj().T) / 2.0
    eig = np.linalg.eigvalsh(d)
    return float(np.sum(np.abs(eig)) / 2.0)


def state_trace_distance(x: BipartiteState, y: BipartiteState) -> float:
    return trace_distance(x.matrix, y.matrix)


def ensemble_average(ensemble: Ensemble) -> BipartiteState:
    """The barycenter sum_x w(x) rho_x as a BipartiteState."""
    d = ensemble.dim_a * ensemble.dim_b
    acc = np.zeros((d, d), dtype=complex)
    for w, m in zip(ensemble.weights, ensemble.members):
        rho = m.to_density().matrix if isinstance(m, PureBipartite) else m.matrix
        acc += w * rho
    return BipartiteState(ensemble.dim_a, ensemble.dim_b, acc)


def tensor_pure(x: PureBipartite, y: PureBipartite) -> PureBipartite:
    """Tensor product regrouped to the (AA' : BB') bipartition."""
    return schmidt_decompose(np.kron(x.amplitudes, y.amplitudes))


def tensor_state(x: BipartiteState, y: BipartiteState) -> BipartiteState:
    """Tensor product regrouped to the (AA' : BB') bipartition."""
    m = np.kron(x.matrix, y.matrix)
    da, db, dc, dd = x.dim_a, x.dim_b, y.dim_a, y.dim_b
    t = m.reshape(da, db, dc, dd, da, db, dc, dd)
    t = t.transpose(0, 2, 1, 3, 4, 6, 5, 7)
    d = da * db * dc * dd
    return BipartiteState(da * dc, db * dd, t.reshape(d, d))


def tensor_power_state(x: BipartiteState, n: int) -> BipartiteState:
    if n < 1:
        raise ValueError("n must be at least 1")
    out = x
    for _ in range(n - 1):
        out = tensor_state(out, x)
    return out


def random_pure_state(rng: np.random.Generator, dim_a: int, dim_b: int) -> PureBipartite:
    c = rng.standard_normal((dim_a, dim_b)) + 1j * rng.standard_normal((dim_a, dim_b))
    return schmidt_decompose(c)


def random_density_state(rng: np.random.Generator, dim_a: int, dim_b: int,
                         rank: int | None = None) -> BipartiteState:
    d = dim_a * dim_b
    r = rank or d
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    m = g @ g.conj().T
    return BipartiteState(dim_a, dim_b, m / np.trace(m).real)
