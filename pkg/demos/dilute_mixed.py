"""Diluting a mixed state from a pure-state decomposition, branch by branch.

Given an ensemble decomposition of a mixed target, the protocol prepares
the common branches (x below a cutoff) at their own entanglement rates and
handles the rare remainder wastefully.  The rate bound is the ensemble
average entanglement plus a wasteful term delta_N * S(remainder marginal)
that vanishes as the cutoff grows.
"""

import numpy as np

from entcost import Ensemble, mixed_dilution_rate, schmidt_decompose


def geometric_ensemble(members: int) -> Ensemble:
    weights = 2.0 ** -np.arange(members, dtype=float)
    weights /= weights.sum()
    pures = []
    for x in range(members):
        ratio = 0.25 + 0.5 * (x % 7) / 6.0
        q = ratio ** np.arange(4, dtype=float)
        pures.append(schmidt_decompose(np.diag(np.sqrt(q / q.sum()))))
    return Ensemble(weights, tuple(pures))


def main() -> None:
    ensemble = geometric_ensemble(48)
    print("geometric ensemble p(x) ~ 2^-x over 48 four-level pure states")
    print(f"\n{'cutoff':>7}  {'rate bound':>11}  {'wasteful':>12}  "
          f"{'rare mass':>11}")
    for cut in (1, 2, 4, 8, 12, 16, 20, 30, 40):
        pt = mixed_dilution_rate(ensemble, cut)
        print(f"{pt.n_cut:>7}  {pt.rate_bound:11.6f}  {pt.wasteful_term:12.3e}  "
              f"{pt.delta_n:11.3e}")
    print("\nthe wasteful term halves with each extra member because the")
    print("rare mass does; the rate bound settles at the ensemble average")


if __name__ == "__main__":
    main()
