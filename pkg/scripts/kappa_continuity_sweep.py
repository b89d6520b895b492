"""How measure integrals and eigenfunctions approach their kappa = 0 values.

For kappa = +-10^-j the script prints the gap in int phi dV and in u_theta on
a fixed (E, r) grid, plus the observed order log(gap_j/gap_{j+1})/log(10).
Both quantities are even in kappa, so the order should come out close to 2.

    python scripts/kappa_continuity_sweep.py --theta 0.7 --jmax 6
"""

import argparse
import math
from dataclasses import dataclass

import numpy as np

from isq_spectral import ExtensionParams, build_measure, eval_u_theta
from isq_spectral.verify import energy_bump


@dataclass(frozen=True)
class ContinuityConfig:
    theta: float = math.pi / 2
    jmin: int = 1
    jmax: int = 5
    energies: tuple[float, ...] = (-1.0, -0.3, 0.1, 1.0, 7.0, 20.0)
    radii: tuple[float, ...] = (0.01, 0.2, 1.0, 3.0, 6.0)


def measure_gap(kappa, cfg, base):
    return abs(build_measure(ExtensionParams(kappa, cfg.theta)).integrate(energy_bump, -4, 6) - base)


def solution_gap(kappa, cfg, base):
    E, r = np.meshgrid(cfg.energies, cfg.radii, indexing="ij")
    return float(np.max(np.abs(eval_u_theta(ExtensionParams(kappa, cfg.theta), E, r).value - base)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", type=float, default=ContinuityConfig.theta)
    ap.add_argument("--jmax", type=int, default=ContinuityConfig.jmax)
    args = ap.parse_args(argv)
    cfg = ContinuityConfig(theta=args.theta, jmax=args.jmax)

    m0 = build_measure(ExtensionParams(0.0, cfg.theta)).integrate(energy_bump, -4, 6)
    E, r = np.meshgrid(cfg.energies, cfg.radii, indexing="ij")
    u0 = eval_u_theta(ExtensionParams(0.0, cfg.theta), E, r).value
    print(f"theta = {cfg.theta:.6f}   int phi dV at kappa = 0: {m0:.15g}")
    print(f"{'kappa':>9} {'measure gap':>12} {'order':>6} {'solution gap':>13} {'order':>6}")
    for sign in (1, -1):
        prev = None
        for j in range(cfg.jmin, cfg.jmax + 1):
            k = sign * 10.0**-j
            gm, gs = measure_gap(k, cfg, m0), solution_gap(k, cfg, u0)
            om = os_ = ""
            if prev is not None:
                om = f"{math.log10(prev[0] / gm):6.2f}" if gm > 0 else "   inf"
                os_ = f"{math.log10(prev[1] / gs):6.2f}" if gs > 0 else "   inf"
            print(f"{k:9.0e} {gm:12.3e} {om:>6} {gs:13.3e} {os_:>6}")
            prev = (gm, gs)


if __name__ == "__main__":
    main()
