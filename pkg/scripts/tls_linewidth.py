"""Two-level susceptibility for a 780 nm line: absorption width and dispersion.

    python scripts/tls_susceptibility.py --out results
"""

import argparse
import math
from pathlib import Path

import numpy as np

from cqedlab.twolevel import TlsDriveParams, dipole_from_decay, measured_fwhm, tls_linewidths, tls_susceptibility


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--gamma", type=float, default=3.81e7)
    ap.add_argument("--g-ratios", type=float, nargs="+", default=[0.0, 0.5, 1.0, 2.0])
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    gamma = args.gamma
    dipole = dipole_from_decay(gamma, 780e-9)
    x = np.linspace(-10, 10, 2001)
    cols, header = [x], ["delta_over_gamma"]
    for r in args.g_ratios:
        p = TlsDriveParams(gamma, 0.0, r * gamma, density=1e18, dipole=dipole)
        chi = tls_susceptibility(p, x * gamma)
        cols += [chi.real, chi.imag]
        header += [f"re_chi_G{r:g}", f"im_chi_G{r:g}"]
        fw = measured_fwhm(x * gamma, chi.imag)
        print(f"G/gamma={r:<4g} FWHM/gamma measured {fw / gamma:.6f}  "
              f"expected {tls_linewidths(p)[1] / gamma:.6f}  peak Im chi {chi.imag.max():.4e}")
    np.savetxt(out / "tls_susceptibility.csv", np.column_stack(cols), delimiter=",",
               header=",".join(header), comments="", fmt="%.17g")
    print(f"|d| = {dipole:.4e} C m, wrote {out / 'tls_susceptibility.csv'}")


if __name__ == "__main__":
    main()
