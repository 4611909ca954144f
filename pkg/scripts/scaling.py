"""Deviation of the low levels from ``-4R^2/3 + (2n+1) sqrt(8)`` versus R.

    python scripts/scaling.py --g 1e3 1e4 1e5 1e6 1e7 --n-max 3

Prints one CSV row per (g, n): shooting energy, the order-0 deviation and
the deviation left after the second-order perturbative correction, then the
fitted log-log slopes.
"""

import argparse
import csv
import sys

import numpy as np

from ptsextic.perturbation import predicted_spectrum
from ptsextic.potential import Coupling
from ptsextic.shooting import spectrum
from ptsextic.verify import fit_slope


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=float, nargs="+", default=[1e3, 1e4, 1e5, 1e6, 1e7])
    ap.add_argument("--n-max", type=int, default=3)
    a = ap.parse_args(argv)

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["g", "R", "n", "re_e", "im_e", "dev_order0", "dev_rs2"])
    table = {n: [] for n in range(a.n_max)}
    for g in a.g:
        c = Coupling(g)
        levels = spectrum(c, c.R, a.n_max)
        pred = predicted_spectrum(c, a.n_max)
        for st, p in zip(levels, pred):
            d0 = abs(st.energy - p.e_harmonic)
            d2 = abs(st.energy - p.total)
            table[st.n].append((c.R, d0, d2))
            w.writerow([g, f"{c.R:.17g}", st.n, f"{st.energy.real:.17g}", f"{st.energy.imag:.17g}",
                        f"{d0:.6e}", f"{d2:.6e}"])
    if len(a.g) >= 2:
        for n, rows in table.items():
            R, d0, d2 = np.array(rows).T
            print(f"# n={n}: slope order0 {fit_slope(R, d0):.3f}, after RS2 {fit_slope(R, d2):.3f}",
                  file=sys.stderr)


if __name__ == "__main__":
    main()
