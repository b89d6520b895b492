"""Emit spectral-density curves and bound-state data for plotting.

Writes one CSV per kappa with a column per theta (density on a log E grid),
and a CSV of the atom location and weight as theta sweeps through [0, pi).
No plotting library is needed; the files load directly into any plotting tool.

    python scripts/density_data.py --outdir density_out
"""

import argparse
import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from isq_spectral import BoundaryError, ExtensionParams, atom_weight, bound_state_energy, density


@dataclass(frozen=True)
class DensityConfig:
    kappas: tuple[float, ...] = (0.0, 0.25, 0.5, -0.75)
    thetas: tuple[float, ...] = (0.0, 0.5, 1.0, math.pi / 2, 2.2, 2.9)
    e_min: float = 1e-3
    e_max: float = 1e3
    n_energy: int = 241
    n_theta: int = 181


def density_table(kappa: float, cfg: DensityConfig):
    E = np.geomspace(cfg.e_min, cfg.e_max, cfg.n_energy)
    cols = {"E": E}
    for th in cfg.thetas:
        cols[f"theta={th:.4f}"] = density(ExtensionParams(kappa, th), E)
    return cols


def atom_table(kappa: float, cfg: DensityConfig):
    rows = []
    for th in np.linspace(0, math.pi, cfg.n_theta, endpoint=False):
        p = ExtensionParams(kappa, th)
        try:
            e = bound_state_energy(p)
        except BoundaryError:
            continue
        w = atom_weight(p) if e is not None else None
        rows.append((th, math.nan if e is None else e, math.nan if w is None else w))
    return rows


def write_columns(path: Path, cols: dict):
    keys = list(cols)
    with path.open("w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(keys)
        for row in zip(*(cols[k] for k in keys)):
            out.writerow([repr(float(x)) for x in row])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="density_out")
    args = ap.parse_args(argv)
    cfg = DensityConfig()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for k in cfg.kappas:
        write_columns(out / f"density_kappa={k:+.2f}.csv", density_table(k, cfg))
        rows = atom_table(k, cfg)
        write_columns(out / f"atoms_kappa={k:+.2f}.csv",
                      {"theta": [r[0] for r in rows], "energy": [r[1] for r in rows], "weight": [r[2] for r in rows]})
        present = [r for r in rows if not math.isnan(r[1])]
        print(f"kappa={k:+.2f}: atoms for {len(present)}/{len(rows)} theta values -> {out}")


if __name__ == "__main__":
    main()
