"""Scan temperature for the short-time maximum and the plateau of the discord.

    python3 scripts/temperature_scan.py [--distance-nm 6] [--t-max 1.0]

For the equal superposition, prints, per temperature, the first local
maximum of the lower rescaled-discord bound before ``--t-max`` ps (if any)
and the long-time plateau value.
"""
import argparse
import math

import numpy as np

from dqd_discord import BathSpec, SpectralGrid, compute_kernel, pure_product_state, propagate
from dqd_discord.correlations import rescaled_bounds
from dqd_discord.phonon_spectral import spectral_weights, steady_state_kernel


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--distance-nm", type=float, default=6.0)
    parser.add_argument("--t-max", type=float, default=1.0)
    parser.add_argument("--temperatures", type=float, nargs="+",
                        default=[25, 50, 100, 125, 150, 175, 200, 250, 300, 500, 1000])
    args = parser.parse_args()

    grid = SpectralGrid()
    d = args.distance_nm
    weights = spectral_weights(d, grid=grid)
    times = np.linspace(0.0, args.t_max * 1.5, 601)
    rho0 = pure_product_state(1 / math.sqrt(2), 1 / math.sqrt(2))
    print(f"{'T [K]':>7}  {'t_max [ps]':>10}  {'D at max':>9}  {'plateau D':>9}")
    for T in args.temperatures:
        kern = compute_kernel(times, BathSpec(T), d, grid=grid, weights=weights)
        lo = np.array([rescaled_bounds(propagate(rho0, kern, n))[0] for n in range(len(times))])
        peaks = np.flatnonzero((lo[1:-1] > lo[:-2]) & (lo[1:-1] > lo[2:])) + 1
        peaks = peaks[times[peaks] < args.t_max]
        plateau = rescaled_bounds(propagate(rho0, steady_state_kernel(BathSpec(T), d, grid=grid,
                                                                      weights=weights), 0))[0]
        if peaks.size:
            i = peaks[0]
            print(f"{T:7g}  {times[i]:10.3f}  {lo[i]:9.4g}  {plateau:9.4g}")
        else:
            print(f"{T:7g}  {'-':>10}  {'-':>9}  {plateau:9.4g}")


if __name__ == "__main__":
    main()
