"""Energy-constrained entropy for a harmonic ladder and its continuity bound.

The maximum entropy at mean energy E is attained by a thermal state; for the
unit-gap ladder it equals g(E) = (E+1)log2(E+1) - E log2 E exactly.  F(E)/E
decreases in E (sublinearity), which makes the one-sided continuity bound
epsilon' F(E/epsilon') + g(epsilon') meaningful for states close in trace
distance.  A diagonal operator can also be associated with any spectrum so
that the spectrum itself becomes thermal at unit inverse temperature.
"""

import numpy as np

from entcost import (
    Spectrum,
    beta_of_energy,
    g_function,
    gibbs_hypothesis_check,
    hamiltonian_for_spectrum,
    harmonic_oscillator,
    max_entropy_at_energy,
    one_sided_continuity_bound,
    sublinearity_probe,
)


def main() -> None:
    ladder = harmonic_oscillator()
    print(f"{'E':>8}  {'F(E)':>12}  {'g(E)':>12}  {'beta(E)':>10}")
    for e in (0.1, 1.0, 10.0, 100.0):
        f = max_entropy_at_energy(ladder, e)
        print(f"{e:>8.1f}  {f:12.8f}  {g_function(e):12.8f}  "
              f"{beta_of_energy(ladder, e).beta:10.6f}")

    print("\nsublinearity F(E)/E across four decades:")
    for energy, ratio in sublinearity_probe(ladder, np.logspace(-2, 2, 9)):
        print(f"  E = {energy:8.2f}   F/E = {ratio:10.6f}")

    print("\none-sided continuity bound at E = 1:")
    for eps in (1e-1, 1e-2, 1e-3, 1e-4, 1e-7):
        print(f"  eps = {eps:7.0e}   bound = {one_sided_continuity_bound(ladder, 1.0, eps):10.7f}")

    spec = Spectrum(np.array([0.8, 0.2]))
    assoc = hamiltonian_for_spectrum(spec)
    print(f"\noperator associated with spectrum {spec.values}:")
    print(f"  stored levels = {np.round(assoc.energies, 6)}")
    print(f"  thermal-family check across a beta grid: "
          f"{gibbs_hypothesis_check(assoc)}")


if __name__ == "__main__":
    main()
