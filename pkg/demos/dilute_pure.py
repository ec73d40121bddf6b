"""Entanglement dilution of a biased pure state from shared ebits.

At block length n the protocol teleports the typical component of n target
copies using roughly n(H + delta) ebits and twice as many classical bits.
The exact residual error sqrt(1 - typical mass) decays with n while the
ebit rate stays inside H + delta + 1/n.  A maximally entangled two-level
target needs exactly one ebit per copy with zero error.
"""

import numpy as np

from entcost import Spectrum, dilution_sweep, von_neumann_entropy


def main() -> None:
    target = Spectrum(np.array([0.8, 0.2]))
    delta = 0.05
    h = von_neumann_entropy(target)
    print(f"schmidt coefficients {target.values}, H = {h:.6f} bits, "
          f"delta = {delta}")
    grid = (1, 10, 50, 200, 500, 1000, 1500, 1685, 2000)
    print(f"\n{'n':>6}  {'ebits':>7}  {'cbits':>7}  {'rate':>9}  "
          f"{'H+d+1/n':>9}  {'error':>10}")
    for tr in dilution_sweep(target, delta, grid):
        cap = h + delta + 1.0 / tr.n
        print(f"{tr.n:>6}  {tr.ebits:>7}  {tr.cbits:>7}  {tr.rate:9.6f}  "
              f"{cap:9.6f}  {tr.error:10.6f}")

    ebit = Spectrum(np.array([0.5, 0.5]))
    print("\nmaximally entangled target:")
    print(f"{'n':>6}  {'ebits':>7}  {'rate':>6}  {'error':>6}")
    for tr in dilution_sweep(ebit, delta, (1, 8, 64, 512)):
        print(f"{tr.n:>6}  {tr.ebits:>7}  {tr.rate:6.3f}  {tr.error:6.3f}")


if __name__ == "__main__":
    main()
