"""Spectrum across contour shifts epsilon = f * R.

    python scripts/epsilon_sweep.py --g 1e4 --fractions 0.7 0.8 0.9 1.0 1.2 1.5

For each fraction prints the levels and their deviation from the epsilon = R
values. Towards small f the well hides behind a growing barrier and the
levels become ill-conditioned in double precision; the deviation column
shows where that sets in.
"""

import argparse
import csv
import sys

from ptsextic.errors import ConvergenceError, DuplicateLevelError
from ptsextic.potential import Coupling
from ptsextic.shooting import spectrum


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=float, default=1e4)
    ap.add_argument("--fractions", type=float, nargs="+", default=[0.7, 0.8, 0.9, 1.0, 1.2, 1.5])
    ap.add_argument("--n-max", type=int, default=4)
    a = ap.parse_args(argv)

    c = Coupling(a.g)
    ref = spectrum(c, c.R, a.n_max)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["fraction", "n", "re_e", "im_e", "rel_dev", "steps"])
    for f in a.fractions:
        try:
            levels = spectrum(c, f * c.R, a.n_max)
        except (ConvergenceError, DuplicateLevelError) as exc:
            print(f"# fraction {f}: {exc}", file=sys.stderr)
            continue
        for st, r in zip(levels, ref):
            dev = abs(st.energy - r.energy) / abs(r.energy)
            w.writerow([f, st.n, f"{st.energy.real:.17g}", f"{st.energy.imag:.3e}", f"{dev:.3e}", st.steps])


if __name__ == "__main__":
    main()
