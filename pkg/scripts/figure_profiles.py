"""Write the potential-profile CSVs behind the two contour plots.

    python scripts/figure_profiles.py --outdir results/figures

Produces ``profile_eps_R100.csv`` (epsilon = R/100, values divided by
rho = 1e15, the spike regime) and ``profile_eps_R.csv`` (epsilon = R, the
smooth harmonic-like well) for R = 100. See docs/figures.md for plotting.
"""

import argparse
from pathlib import Path

from ptsextic.cli import main

RUNS = {
    # the spike at s = 0 is a few units wide; a narrow window resolves it
    "profile_eps_R100.csv": ["--epsilon-frac", "0.01", "--rescale", "1e15", "--half-width", "4"],
    "profile_eps_R.csv": ["--epsilon-frac", "1.0"],
}


def run(outdir: Path, R: float, grid_points: int) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, flags in RUNS.items():
        code = main([
            "potential-profile", "--R", str(R), *flags,
            "--grid-points", str(grid_points), "--out", str(outdir / name),
        ])
        if code:
            return code
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=Path("results/figures"))
    ap.add_argument("--R", type=float, default=100.0)
    ap.add_argument("--grid-points", type=int, default=4001)
    a = ap.parse_args()
    raise SystemExit(run(a.outdir, a.R, a.grid_points))
