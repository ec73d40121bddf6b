"""JSON encodings of the value types used by the command-line interface.

Complex matrices travel as flat row-major lists of [re, im] pairs next to
their dimensions; spectra as value lists plus tail mass; Hamiltonians as
energy lists plus an optional affine tail model.
"""

from __future__ import annotations

import numpy as np

from .gibbs import AffineTail, DiagonalHamiltonian
from .spectra import BipartiteState, Ensemble, PureBipartite, Spectrum, schmidt_decompose


class SchemaError(ValueError):
    """Input does not match the documented JSON layout."""


def matrix_to_pairs(m: np.ndarray) -> list:
    flat = np.asarray(m, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def pairs_to_matrix(pairs, rows: int, cols: int) -> np.ndarray:
    if not isinstance(pairs, list) or len(pairs) != rows * cols:
        raise SchemaError(f"matrix needs {rows * cols} [re, im] pairs")
    try:
        flat = np.array([complex(p[0], p[1]) for p in pairs])
    except (TypeError, IndexError) as exc:
        raise SchemaError("matrix entries must be [re, im] pairs") from exc
    return flat.reshape(rows, cols)


def spectrum_to_json(s: Spectrum) -> dict:
    return {"values": [float(v) for v in s.values],
            "tail_mass": float(s.tail_mass)}


def spectrum_from_json(obj, normalized: bool = True) -> Spectrum:
    if not isinstance(obj, dict) or "values" not in obj:
        raise SchemaError("spectrum needs a 'values' list")
    values = obj["values"]
    if not isinstance(values, list) or not values:
        raise SchemaError("spectrum 'values' must be a non-empty list")
    return Spectrum(np.asarray(values, dtype=float),
                    float(obj.get("tail_mass", 0.0)), normalized=normalized)


def state_to_json(s: BipartiteState) -> dict:
    return {"dim_a": s.dim_a, "dim_b": s.dim_b,
            "matrix": matrix_to_pairs(s.matrix)}


def state_from_json(obj) -> BipartiteState:
    if not isinstance(obj, dict):
        raise SchemaError("state must be an object")
    for key in ("dim_a", "dim_b", "matrix"):
        if key not in obj:
            raise SchemaError(f"state needs '{key}'")
    da, db = int(obj["dim_a"]), int(obj["dim_b"])
    return BipartiteState(da, db, pairs_to_matrix(obj["matrix"], da * db, da * db))


def pure_to_json(p: PureBipartite) -> dict:
    return {"dim_a": p.dim_a, "dim_b": p.dim_b,
            "amplitudes": matrix_to_pairs(p.amplitudes)}


def pure_from_json(obj) -> PureBipartite:
    if not isinstance(obj, dict):
        raise SchemaError("pure state must be an object")
    for key in ("dim_a", "dim_b", "amplitudes"):
        if key not in obj:
            raise SchemaError(f"pure state needs '{key}'")
    da, db = int(obj["dim_a"]), int(obj["dim_b"])
    return schmidt_decompose(pairs_to_matrix(obj["amplitudes"], da, db))


def ensemble_to_json(e: Ensemble) -> dict:
    members = []
    for m in e.members:
        members.append(pure_to_json(m) if isinstance(m, PureBipartite)
                       else state_to_json(m))
    return {"weights": [float(w) for w in e.weights], "members": members}


def ensemble_from_json(obj) -> Ensemble:
    if not isinstance(obj, dict) or "weights" not in obj or "members" not in obj:
        raise SchemaError("ensemble needs 'weights' and 'members'")
    members = []
    for m in obj["members"]:
        if not isinstance(m, dict):
            raise SchemaError("ensemble members must be objects")
        members.append(pure_from_json(m) if "amplitudes" in m else state_from_json(m))
    return Ensemble(np.asarray(obj["weights"], dtype=float), tuple(members))


def hamiltonian_to_json(h: DiagonalHamiltonian) -> dict:
    tail = ({"kind": "affine", "a": h.tail.a, "b": h.tail.b}
            if h.tail is not None else {"kind": "none"})
    return {"energies": [float(e) for e in h.energies], "tail_model": tail}


def hamiltonian_from_json(obj) -> DiagonalHamiltonian:
    if not isinstance(obj, dict) or "energies" not in obj:
        raise SchemaError("hamiltonian needs an 'energies' list")
    tail_obj = obj.get("tail_model", {"kind": "none"})
    if not isinstance(tail_obj, dict) or "kind" not in tail_obj:
        raise SchemaError("tail_model needs a 'kind'")
    if tail_obj["kind"] == "none":
        tail = None
    elif tail_obj["kind"] == "affine":
        try:
            tail = AffineTail(float(tail_obj["a"]), float(tail_obj["b"]))
        except KeyError as exc:
            raise SchemaError("affine tail needs 'a' and 'b'") from exc
    else:
        raise SchemaError(f"unknown tail model {tail_obj['kind']!r}")
    return DiagonalHamiltonian(np.asarray(obj["energies"], dtype=float), tail)
