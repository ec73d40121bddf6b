"""Counter-based, splittable random streams.

Every stochastic routine in this package draws from a Philox generator keyed
by a 64-bit experiment seed plus an integer path (trial index, restart index,
and so on).  The same (seed, path) pair always yields the same stream, no
matter how work is scheduled across threads, so sweeps reduce to the same
result at any worker count.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def stream(seed: int, *path: int) -> np.random.Generator:
    """Return the generator for a (seed, path) address.

    Parameters
    ----------
    seed : int
        Experiment-level seed.  Negative values are mapped into the unsigned
        64-bit range.
    *path : int
        Non-negative integers addressing a sub-stream, e.g. a trial index
        followed by a restart index.
    """
    key = tuple(int(p) & _MASK64 for p in path)
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))
