"""EIT versus Autler-Townes: closed-form and master-equation probe spectra.

    python scripts/eit_vs_ats.py --out results --jobs 4
"""

import argparse
from pathlib import Path

import numpy as np
from scipy.signal import find_peaks

from cqedlab.lambda3 import LambdaDecays, ProbeControlSpec, eit_chi1, eit_numeric_chi, eit_poles


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--omega-c", type=float, nargs="+", default=[0.2, 5.0], help="in units of Gamma31")
    ap.add_argument("--gamma21", type=float, default=0.001)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    d = LambdaDecays(1.0, 0.0, args.gamma21)
    grid = np.linspace(-5, 5, 401)
    for oc in args.omega_c:
        s = ProbeControlSpec(d.Gamma31 / 100, oc)
        an = eit_chi1(s, d, grid)
        num = eit_numeric_chi(s, d, grid, jobs=args.jobs)
        np.savetxt(out / f"eit_omega_c{oc:g}.csv",
                   np.column_stack([grid, an.real, an.imag, num.real, num.imag]), delimiter=",",
                   header="delta,chi_re,chi_im,chi_numeric_re,chi_numeric_im", comments="", fmt="%.17g")
        dp, dm, regime = eit_poles(oc, d)
        peaks = grid[find_peaks(an.imag)[0]]
        print(f"Omega_c={oc:<4g} regime {regime:<4} poles {dp:.4f}, {dm:.4f}  "
              f"Im chi(0)={an.imag[200]:.3e}  peaks at {np.round(peaks, 3)}  "
              f"max |numeric - closed form| {np.abs(num - an).max():.2e}")


if __name__ == "__main__":
    main()
