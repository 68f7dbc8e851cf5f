"""Cooper-pair box bands against gate charge for three EJ/EC ratios.

    python scripts/cpb_bands.py --out results
"""

import argparse
import math
from pathlib import Path

import numpy as np

from cqedlab.circuits import CpbParams, cpb_bands


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--ratios", type=float, nargs="+", default=[1.0, 10.0, 50.0])
    ap.add_argument("--levels", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=10)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    ng = np.linspace(0, 1, 201)
    for r in args.ratios:
        t = cpb_bands(CpbParams(EC=1.0, EJ=r, Nmax=args.nmax), ng, args.levels)
        # normalize by E01 at the sweet spot
        e01 = t.energies[len(ng) // 2, 1] - t.energies[len(ng) // 2, 0]
        data = np.column_stack([ng, t.energies / e01])
        header = "ng," + ",".join(f"band{k}_over_E01" for k in range(args.levels))
        np.savetxt(out / f"cpb_bands_EJ{r:g}.csv", data, delimiter=",", header=header, comments="", fmt="%.17g")
        w01 = t.energies[:, 1] - t.energies[:, 0]
        print(f"EJ/EC={r:<4g} omega01 spread {(w01.max() - w01.min()) / w01.mean():.3e}  "
              f"sqrt(8EJEC)-EC={math.sqrt(8 * r) - 1:.4f}  omega01(0)={w01[0]:.4f}  "
              f"edge weight {t.edge_population:.1e}")


if __name__ == "__main__":
    main()
