"""Command-line front end.

Subcommands: ``stationary``, ``taylor``, ``spectrum``, ``verify`` and
``potential-profile``. Reports are JSON
(``{schema_version, command, config, results, passed}``) or CSV; numbers are
written with 17 significant digits.

Exit codes: 0 success, 1 bad input, 2 solver non-convergence,
3 verification failed (the report is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import List, Optional

import numpy as np

from . import __version__
from .contour import Contour
from .errors import (
    ConvergenceError,
    DomainError,
    DuplicateLevelError,
    IntegrationError,
    LUBreakdownError,
    TruncationError,
)
from .fdsolver import fd_spectrum
from .potential import (
    Coupling,
    coefficient_string,
    stationary_points,
    taylor_series,
    v_prime,
    w_of_s,
)
from .shooting import spectrum
from . import verify as vf

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _coupling(args) -> Coupling:
    if args.g is not None and args.R is not None:
        raise InputError("give exactly one of --g and --R")
    if args.g is None and args.R is None:
        raise InputError("one of --g or --R is required")
    return Coupling(args.g) if args.g is not None else Coupling.from_R(args.R)


def _epsilon(args, c: Coupling) -> float:
    if args.epsilon_abs is not None and args.epsilon_frac is not None:
        raise InputError("give at most one of --epsilon-frac and --epsilon-abs")
    if args.epsilon_abs is not None:
        eps = args.epsilon_abs
    else:
        eps = (1.0 if args.epsilon_frac is None else args.epsilon_frac) * c.R
    if not eps > 0:
        raise DomainError(f"epsilon must be > 0 (got {eps}); epsilon <= 0 crosses the cut")
    return eps


def _config(args, c: Optional[Coupling] = None, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func",)}
    if c is not None:
        cfg["g"], cfg["R"] = c.g, c.R
    cfg.update(extra)
    return cfg


def _document(command: str, config: dict, results: list, passed: bool = True) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": results,
        "passed": passed,
    }


def _csv(header: List[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _emit(args, text: str, summary: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)


def _json_text(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_stationary(args) -> int:
    c = _coupling(args)
    pts = stationary_points(c)
    results = []
    for p in pts:
        results.append(
            {
                "m": p.index,
                "re_x": p.location.real,
                "im_x": p.location.imag,
                "abs_v_prime_over_R": abs(v_prime(c, p.location)) / c.R,
                "re_v_second": p.second_derivative.real,
                "im_v_second": p.second_derivative.imag,
            }
        )
    if args.format == "csv":
        text = _csv(
            ["m", "re_x", "im_x", "re_v2", "im_v2"],
            [(r["m"], r["re_x"], r["im_x"], r["re_v_second"], r["im_v_second"]) for r in results],
        )
    else:
        text = _json_text(_document("stationary", _config(args, c), results))
    summary = "\n".join(
        f"R_{r['m']} = {r['re_x']:+.6g} {r['im_x']:+.6g}i   V'' = {r['re_v_second']:.12g}" for r in results
    )
    _emit(args, text, summary)
    return EXIT_OK


def cmd_taylor(args) -> int:
    c = _coupling(args)
    series = taylor_series(c, args.k_max)
    results = [
        {
            "k": k,
            "exact": coefficient_string(k),
            "re_c": series[k].real,
            "im_c": series[k].imag,
        }
        for k in range(series.k_max + 1)
    ]
    if args.format == "csv":
        text = _csv(["k", "exact", "re_c", "im_c"], [(r["k"], r["exact"], r["re_c"], r["im_c"]) for r in results])
    else:
        text = _json_text(_document("taylor", _config(args, c), results))
    summary = "\n".join(
        f"c_{r['k']:<3d} {r['exact']:>16s}   {r['re_c']:+.17g} {r['im_c']:+.17g}i" for r in results
    )
    _emit(args, text, summary)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    c = _coupling(args)
    eps = _epsilon(args, c)
    states = []
    if args.method in ("shooting", "both"):
        states += spectrum(c, eps, args.n_max, steps=args.steps)
    if args.method in ("fd", "both"):
        states += fd_spectrum(c, eps, args.n_max, n_points=args.grid_points)
    results = [
        {
            "n": st.n,
            "re_e": st.energy.real,
            "im_e": st.energy.imag,
            "residual": st.residual,
            "method": st.method,
        }
        for st in states
    ]
    if args.format == "csv":
        text = _csv(
            ["n", "re_e", "im_e", "residual", "method"],
            [(r["n"], r["re_e"], r["im_e"], r["residual"], r["method"]) for r in results],
        )
    else:
        text = _json_text(_document("spectrum", _config(args, c, epsilon=eps), results))
    summary = "\n".join(
        f"{r['method']:>9s} n={r['n']}  E = {r['re_e']:.12f} {r['im_e']:+.3e}i" for r in results
    )
    _emit(args, text, summary)
    return EXIT_OK


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad number list {text!r}") from exc


def cmd_verify(args) -> int:
    if args.format != "json":
        raise InputError("verify reports are JSON only")
    c = _coupling(args)
    claims = vf.CLAIMS if args.claim == "all" else (args.claim,)
    reports = []
    for claim in claims:
        if claim == "epsilon_independence":
            reports.append(vf.epsilon_independence(c, _floats(args.eps_fractions), args.n_max))
        elif claim == "reality":
            reports.append(vf.reality_report(c, args.n_max))
        elif claim == "scaling":
            g_list = _floats(args.g_list) if args.g_list else [c.g, 10 * c.g, 100 * c.g]
            reports.append(vf.scaling_study(g_list, args.level, args.scaling_method, args.order))
        elif claim == "perturbation_match":
            reports.append(vf.perturbation_match(c, args.n_max, args.k_max))
    passed = all(r.passed for r in reports)
    doc = _document("verify", _config(args, c), [r.to_dict() for r in reports], passed)
    summary = "\n".join(
        f"{'PASS' if r.passed else 'FAIL'}  {r.claim}"
        + (f"  slope={r.fitted_slope:.4f}" if r.fitted_slope is not None else "")
        + ("  [" + "; ".join(r.notes) + "]" if r.notes else "")
        for r in reports
    )
    _emit(args, _json_text(doc), summary)
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_potential_profile(args) -> int:
    c = _coupling(args)
    eps = _epsilon(args, c)
    if not args.rescale > 0:
        raise DomainError(f"rescale factor must be > 0 (got {args.rescale})")
    L = args.half_width if args.half_width is not None else c.R
    contour = Contour(eps, L, args.grid_points)
    w = w_of_s(c, eps, contour.s) / args.rescale
    if args.format == "json":
        results = [{"s": s, "re_w": v.real, "im_w": v.imag} for s, v in zip(contour.s, w)]
        text = _json_text(
            _document("potential-profile", _config(args, c, epsilon=eps, half_width=L), results)
        )
    else:
        text = _csv(["s", "re_w", "im_w"], zip(contour.s, w.real, w.imag))
    i = int(np.argmax(np.abs(w.real)))
    summary = (
        f"{contour.n_points} samples, s in [-{L:g}, {L:g}], epsilon={eps:g}, rho={args.rescale:g}; "
        f"max |Re W|/rho = {abs(w.real[i]):.6g} at s={contour.s[i]:.6g}"
    )
    _emit(args, text, summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    grp = common.add_argument_group("coupling (exactly one)")
    grp.add_argument("--g", type=float, help="coupling g")
    grp.add_argument("--R", type=float, help="stationary radius R = 3^(1/8) g^(1/4)")
    common.add_argument("--out", help="write machine-readable output here (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), help="default json (csv for potential-profile)")
    common.add_argument("-v", "--verbose", action="store_true")

    eps = _Parser(add_help=False)
    eps.add_argument("--epsilon-frac", type=float, help="epsilon as a fraction of R (default 1)")
    eps.add_argument("--epsilon-abs", type=float, help="absolute epsilon")

    p = _Parser(prog="ptsextic", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("stationary", parents=[common], help="the eight stationary points")
    s.set_defaults(func=cmd_stationary)

    s = sub.add_parser("taylor", parents=[common], help="series of W about -iR")
    s.add_argument("--k-max", type=int, default=10)
    s.set_defaults(func=cmd_taylor)

    s = sub.add_parser("spectrum", parents=[common, eps], help="low-lying levels")
    s.add_argument("--n-max", type=int, default=6)
    s.add_argument("--method", choices=("shooting", "fd", "both"), default="shooting")
    s.add_argument("--steps", type=int, help="initial RK4 steps per half-line")
    s.add_argument("--grid-points", type=int, default=2001, help="FD grid nodes (odd)")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("verify", parents=[common], help="run verification reports")
    s.add_argument("--claim", choices=vf.CLAIMS + ("all",), default="all")
    s.add_argument("--n-max", type=int, default=4)
    s.add_argument("--k-max", type=int, default=10)
    s.add_argument("--eps-fractions", default="1.0,0.8")
    s.add_argument("--g-list", help="comma-separated ascending couplings for the scaling study")
    s.add_argument("--level", type=int, default=0, help="level index for the scaling study")
    s.add_argument("--scaling-method", choices=("shooting", "fd", "perturbation"), default="shooting")
    s.add_argument("--order", type=int, default=2, choices=(0, 1, 2))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("potential-profile", parents=[common, eps], help="W(s) samples for plotting")
    s.add_argument("--rescale", type=float, default=1.0, help="divide W by this factor")
    s.add_argument("--half-width", type=float, help="s range [-L, L] (default R)")
    s.add_argument("--grid-points", type=int, default=2001)
    s.set_defaults(func=cmd_potential_profile)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.format is None:
        args.format = "csv" if args.command == "potential-profile" else "json"
    try:
        return args.func(args)
    except (InputError, DomainError, TruncationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, DuplicateLevelError, IntegrationError, LUBreakdownError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
