"""Typical-set growth for a biased coin: exact masses and set sizes.

Enumerating empirical types gives the exact probability mass and exact
cardinality of the weakly typical set at each block length.  The mass climbs
toward 1 while the per-symbol set size stays pinned near the source entropy,
and the equipartition window holds on every typical type.
"""

import numpy as np

from entcost import (
    SourceDistribution,
    aep_bounds_check,
    strong_typical_mass,
    weak_typical_mass,
)


def main() -> None:
    dist = SourceDistribution(np.array([0.8, 0.2]))
    delta = 0.05
    print(f"source entropy H = {dist.entropy_bits:.6f} bits, delta = {delta}")
    print(f"\n{'n':>6}  {'weak mass':>12}  {'log2|T|/n':>10}  {'strong mass':>12}")
    for n in (10, 50, 100, 250, 500, 1000, 2000):
        weak = weak_typical_mass(dist, n, delta)
        strong = strong_typical_mass(dist, n, delta)
        per_symbol = weak.log2_cardinality_bound / n
        print(f"{n:>6}  {weak.mass:12.8f}  {per_symbol:10.6f}  "
              f"{strong.mass:12.8f}")

    n = 500
    print(f"\nequipartition window at n = {n}, delta = {delta}:",
          aep_bounds_check(dist, n, delta))
    print(f"tightened to delta/2 (should fail): ",
          aep_bounds_check(dist, n, delta, bound_delta=delta / 2))


if __name__ == "__main__":
    main()
