"""Measured checks of the strong-coupling claims.

Each check returns a :class:`VerificationReport` that carries its own
thresholds, so ``passed`` can be recomputed from the serialized per-level
data with :func:`evaluate` alone.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, DuplicateLevelError, IntegrationError
from .fdsolver import fd_spectrum
from .perturbation import harmonic_energy, predicted_spectrum
from .potential import Coupling
from .shooting import EigenState, contour_problem, find_eigenvalue, spectrum

__all__ = [
    "CLAIMS",
    "VerificationReport",
    "evaluate",
    "fit_slope",
    "epsilon_independence",
    "scaling_study",
    "reality_report",
    "reality_from_states",
    "perturbation_match",
]

CLAIMS = ("epsilon_independence", "reality", "scaling", "perturbation_match")

SOLVER_ERRORS = (ConvergenceError, DuplicateLevelError, IntegrationError, DomainError)


@dataclass
class VerificationReport:
    claim: str
    inputs: dict
    per_level: List[dict]
    thresholds: dict
    fitted_slope: Optional[float] = None
    passed: bool = False
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(**d)


def fit_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Unweighted least-squares slope of ``log y`` against ``log x``."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    if len(lx) < 2 or np.ptp(lx) == 0:
        raise DomainError("degenerate abscissa: need at least two distinct couplings")
    return float(np.polyfit(lx, ly, 1)[0])


def evaluate(report: VerificationReport) -> bool:
    """Recompute the pass flag from ``per_level`` and ``thresholds``."""
    rows, th = report.per_level, report.thresholds
    if not rows or any("error" in r for r in rows):
        return False
    if report.claim == "epsilon_independence":
        return all(r["deviation"] <= th["rtol"] * max(1.0, r["abs_energy"]) for r in rows)
    if report.claim == "reality":
        return all(r["ratio"] <= th["max_ratio"] for r in rows)
    if report.claim == "scaling":
        devs = [r["deviation"] for r in rows]
        if any(d <= 0 for d in devs):
            return False
        slope = fit_slope([r["R"] for r in rows], devs)
        decreasing = all(b < a for a, b in zip(devs, devs[1:]))
        return slope <= th["max_slope"] and decreasing
    if report.claim == "perturbation_match":
        return all(
            r["deviation"] <= th["second_order_factor"] * r["abs_second_order"]
            + th["rtol"] * r["abs_energy"]
            for r in rows
        )
    raise DomainError(f"unknown claim {report.claim!r}")


def _finish(report: VerificationReport) -> VerificationReport:
    report.passed = evaluate(report)
    return report


def epsilon_independence(
    c: Coupling, eps_fractions: Iterable[float] = (1.0, 0.8), n_max: int = 4, rtol: float = 1e-6
) -> VerificationReport:
    """Spread of each level over contours ``epsilon = fraction * R``, fractions in (0, 1]."""
    fractions = [float(f) for f in eps_fractions]
    if not fractions:
        raise DomainError("need at least one epsilon fraction")
    for f in fractions:
        if not 0 < f <= 1:
            raise DomainError(f"epsilon fraction must lie in (0, 1] (got {f}); epsilon <= 0 is excluded")
    rows: List[dict] = []
    energies: Dict[int, Dict[float, complex]] = {n: {} for n in range(n_max)}
    for f in fractions:
        problem = contour_problem(c, f * c.R)
        for n in range(n_max):
            try:
                energies[n][f] = find_eigenvalue(problem, problem.seed(n), n=n).energy
            except SOLVER_ERRORS as exc:
                rows.append({"fraction": f, "n": n, "error": f"{type(exc).__name__}: {exc}"})
    for n, by_eps in energies.items():
        if not by_eps:
            continue
        vals = list(by_eps.values())
        rows.append(
            {
                "n": n,
                "energies": {str(f): [e.real, e.imag] for f, e in by_eps.items()},
                "deviation": float(max(abs(a - b) for a in vals for b in vals)),
                "abs_energy": float(max(abs(e) for e in vals)),
            }
        )
    report = VerificationReport(
        claim="epsilon_independence",
        inputs={"g": c.g, "R": c.R, "eps_fractions": fractions, "n_max": n_max},
        per_level=rows,
        thresholds={"rtol": rtol},
    )
    return _finish(report)


def _level_energy(c: Coupling, n: int, method: str) -> complex:
    if method == "shooting":
        return spectrum(c, c.R, n + 1)[n].energy
    if method == "fd":
        return fd_spectrum(c, c.R, n + 1)[n].energy
    raise DomainError(f"unknown method {method!r}")


def scaling_study(
    g_list: Sequence[float], n: int = 0, method: str = "shooting", order: int = 2, max_slope: float = -1.0
) -> VerificationReport:
    """Decay of the closed-formula error with ``R``.

    ``method`` is ``"shooting"`` or ``"fd"`` (deviation from the harmonic
    formula) or ``"perturbation"`` (deviation of the order-``order``
    estimate from the shooting value; order 0 reproduces ``"shooting"``).
    """
    g_list = [float(g) for g in g_list]
    if len(g_list) < 3:
        raise DomainError("scaling study needs at least three couplings")
    if len(set(g_list)) < len(g_list):
        raise DomainError("degenerate abscissa: repeated coupling")
    if any(b <= a for a, b in zip(g_list, g_list[1:])):
        raise DomainError("couplings must be ascending")
    rows = []
    for g in g_list:
        c = Coupling(g)
        row = {"g": g, "R": c.R}
        try:
            if method == "perturbation":
                e_num = _level_energy(c, n, "shooting")
                e_ref = predicted_spectrum(c, n + 1, order=order)[n].total
            else:
                e_num = _level_energy(c, n, method)
                e_ref = harmonic_energy(n, c.R)
            row.update(
                re_e=e_num.real, im_e=e_num.imag,
                reference=[complex(e_ref).real, complex(e_ref).imag],
                deviation=float(abs(e_num - e_ref)),
            )
        except SOLVER_ERRORS as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    ok = [r for r in rows if "error" not in r and r["deviation"] > 0]
    slope = fit_slope([r["R"] for r in ok], [r["deviation"] for r in ok]) if len(ok) >= 2 else None
    report = VerificationReport(
        claim="scaling",
        inputs={"g_list": g_list, "n": n, "method": method, "order": order},
        per_level=rows,
        thresholds={"max_slope": max_slope},
        fitted_slope=slope,
    )
    return _finish(report)


def reality_from_states(
    states: Dict[str, List[EigenState]], inputs: dict, max_ratio: float = 1e-7
) -> VerificationReport:
    rows = []
    for method, levels in states.items():
        for st in levels:
            e = complex(st.energy)
            rows.append(
                {
                    "n": st.n,
                    "method": method,
                    "re_e": e.real,
                    "im_e": e.imag,
                    "ratio": abs(e.imag) / abs(e.real) if e.real else math.inf,
                }
            )
    report = VerificationReport(
        claim="reality", inputs=inputs, per_level=rows, thresholds={"max_ratio": max_ratio}
    )
    return _finish(report)


def reality_report(c: Coupling, n_max: int = 4, max_ratio: float = 1e-7) -> VerificationReport:
    """``|Im E| / |Re E|`` per level from shooting and the FD oracle."""
    inputs = {"g": c.g, "R": c.R, "epsilon": c.R, "n_max": n_max}
    states: Dict[str, List[EigenState]] = {}
    failures = []
    for method, solver in (("shooting", spectrum), ("fd_oracle", fd_spectrum)):
        try:
            states[method] = solver(c, c.R, n_max)
        except SOLVER_ERRORS as exc:
            failures.append({"method": method, "error": f"{type(exc).__name__}: {exc}"})
    report = reality_from_states(states, inputs, max_ratio)
    if failures:
        report.per_level.extend(failures)
        report = _finish(report)
    return report


def perturbation_match(
    c: Coupling,
    n_max: int = 4,
    k_max: int = 10,
    second_order_factor: float = 10.0,
    rtol: float = 1e-6,
    strong_coupling_R: float = 6.0,
) -> VerificationReport:
    """Shooting energies against the second-order perturbative totals."""
    rows = []
    notes = []
    predicted = predicted_spectrum(c, n_max, order=2, k_max=k_max)
    try:
        levels = spectrum(c, c.R, n_max)
    except SOLVER_ERRORS as exc:
        levels = None
        rows.append({"error": f"{type(exc).__name__}: {exc}"})
    if levels is not None:
        for st, p in zip(levels, predicted):
            rows.append(
                {
                    "n": st.n,
                    "re_e": st.energy.real,
                    "im_e": st.energy.imag,
                    "re_rs2": p.total.real,
                    "im_rs2": p.total.imag,
                    "e_harmonic": p.e_harmonic,
                    "deviation": float(abs(st.energy - p.total)),
                    "deviation_order0": float(abs(st.energy - p.e_harmonic)),
                    "abs_second_order": float(abs(p.second_order)),
                    "abs_energy": float(abs(st.energy)),
                }
            )
    report = VerificationReport(
        claim="perturbation_match",
        inputs={"g": c.g, "R": c.R, "n_max": n_max, "k_max": k_max, "strong_coupling_R": strong_coupling_R},
        per_level=rows,
        thresholds={"second_order_factor": second_order_factor, "rtol": rtol},
        notes=notes,
    )
    _finish(report)
    if c.R < strong_coupling_R:
        notes.append(f"outside strong-coupling regime (R={c.R:.4g} < {strong_coupling_R})")
    return report
