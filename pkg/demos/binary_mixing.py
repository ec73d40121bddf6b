"""Approximating a biased coin by a small window of a curtailed binomial.

Mixing n independent fair decisions and keeping only outcomes within a
half-width xi of the target bias p0 leaves a distribution whose distance to
the intended two-point mixture is exactly 2(1 - kept mass); the window mass
climbs to 1 as n grows.  A seeded sampler reproduces the curtailed law.
"""

import numpy as np

from entcost import (
    binary_mixing_error,
    curtailed_binomial_pmf,
    curtailed_binomial_sample,
)


def main() -> None:
    p0, xi = 0.3, 0.05
    print(f"target bias p0 = {p0}, window half-width xi = {xi}")
    print(f"\n{'n':>6}  {'mixing error':>13}")
    for n in (10, 50, 100, 250, 652, 1000, 5000, 10000):
        print(f"{n:>6}  {binary_mixing_error(p0, xi, n):13.6f}")

    n = 100
    values, probs = curtailed_binomial_pmf(p0, xi, n)
    draws = curtailed_binomial_sample(p0, xi, n, size=100_000, seed=11)
    empirical = np.array([np.mean(draws == v) for v in values])
    tv = 0.5 * float(np.abs(empirical - probs).sum())
    print(f"\nsampler vs exact law at n = {n} (support size {len(values)}):")
    print(f"{'k':>4}  {'exact':>9}  {'sampled':>9}")
    for v, p, e in zip(values, probs, empirical):
        print(f"{int(v):>4}  {p:9.6f}  {e:9.6f}")
    print(f"total variation over 1e5 draws: {tv:.5f}")


if __name__ == "__main__":
    main()
