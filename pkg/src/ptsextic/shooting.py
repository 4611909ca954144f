"""Two-sided shooting on the contour with matching at the PT-symmetry centre s = 0.

Both ends start from WKB data that decays outward, so each integration runs
in the direction where the wanted solution grows and stays stable. At
``s = 0`` the two log-derivatives are compared. For states with a node near
``s = 0`` (odd levels) the log-derivative has a pole next to the eigenvalue,
so the reciprocal form ``phi/phi'`` is matched instead; both vanish exactly
where the Wronskian of the two branches does.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError, DuplicateLevelError
from .ode import WaveState, integrate, integrate_path, sample_half_grid
from .oscillator import OMEGA
from .perturbation import harmonic_energy
from .potential import Coupling, w_of_s

__all__ = [
    "ContourPotential",
    "Problem",
    "EigenState",
    "Shooter",
    "contour_problem",
    "harmonic_problem",
    "half_width",
    "default_steps",
    "mismatch",
    "find_eigenvalue",
    "solve_levels",
    "spectrum",
]

STEPS_PER_UNIT = 400
END_MARGIN = 25.0
MISMATCH_TOL = 1e-8
REFINE_RTOL = 1e-10
MAX_DOUBLINGS = 5
NOISE_FACTOR = 64.0
STALL_LIMIT = 4
MAX_RESOLUTION = 1e-6
EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class ContourPotential:
    """``W(s) = V(s - i*epsilon)`` as a vectorized callable."""

    coupling: Coupling
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be > 0 (got {self.epsilon})")

    def __call__(self, s):
        return w_of_s(self.coupling, self.epsilon, s)


@dataclass(frozen=True)
class Problem:
    """A one-dimensional eigenproblem ``-phi'' + W phi = E phi`` on the real ``s`` line.

    ``w0`` is ``W`` at the well centre ``s = 0`` and ``curvature`` the
    coefficient of ``s**2`` there; together they set the harmonic turning
    point used to size the domain. ``seed(n)`` gives starting energies.
    """

    potential: Callable
    w0: complex
    seed: Callable[[int], complex]
    curvature: float = 8.0
    name: str = ""

    @property
    def omega(self) -> float:
        return math.sqrt(self.curvature)


def contour_problem(c: Coupling, epsilon: float) -> Problem:
    pot = ContourPotential(c, epsilon)
    return Problem(
        potential=pot,
        w0=complex(pot(0.0)),
        seed=lambda n: harmonic_energy(n, c.R),
        name=f"g={c.g:.6g}, epsilon={epsilon:.6g}",
    )


def harmonic_problem(omega: float = OMEGA) -> Problem:
    """Plain oscillator ``W = omega**2 s**2`` with levels ``(2n+1) omega``."""
    w2 = omega * omega
    return Problem(
        potential=lambda s: w2 * np.asarray(s, dtype=float) ** 2 + 0j,
        w0=0j,
        seed=lambda n: (2 * n + 1) * omega,
        curvature=w2,
        name=f"oscillator omega={omega:.6g}",
    )


def half_width(problem: Problem, E: complex) -> float:
    """Truncation ``L``: harmonic turning point plus a margin, grown until
    ``Re(W(+-L) - E) >= 25``."""
    s_t = math.sqrt(max(0.0, (complex(E).real - problem.w0.real) / problem.curvature))
    L = s_t + max(4.0, 8.0 / math.sqrt(problem.omega))
    for _ in range(200):
        ends = np.asarray(problem.potential(np.array([-L, L])))
        if np.all((ends - E).real >= END_MARGIN):
            return L
        L *= 1.1
    raise DomainError(f"could not find a classically forbidden end region for E={E}")


def default_steps(L: float) -> int:
    return int(math.ceil(STEPS_PER_UNIT * L))


def _decaying_start(w_end: complex, E: complex, side: int) -> WaveState:
    # side=-1: left end, solution ~ exp(+kappa s); side=+1: right end, ~ exp(-kappa s)
    kappa = cmath.sqrt(complex(w_end) - complex(E))
    return WaveState(1.0 + 0j, -side * kappa)


class Shooter:
    """Matching function for one problem at fixed ``L`` and step count.

    The potential samples are cached, so evaluating at many energies costs
    only the integration.
    """

    def __init__(self, problem: Problem, L: float, steps: int):
        if steps < 1:
            raise DomainError(f"steps must be >= 1 (got {steps})")
        if not L > 0:
            raise DomainError(f"L must be > 0 (got {L})")
        self.problem = problem
        self.L = float(L)
        self.steps = int(steps)
        self._w_left = sample_half_grid(problem.potential, -self.L, 0.0, self.steps)
        self._w_right = sample_half_grid(problem.potential, self.L, 0.0, self.steps)

    def states(self, E: complex) -> Tuple[WaveState, WaveState]:
        left0 = _decaying_start(self._w_left[0], E, -1)
        right0 = _decaying_start(self._w_right[0], E, +1)
        left = integrate(None, E, -self.L, 0.0, self.steps, left0, w_half=self._w_left)
        right = integrate(None, E, self.L, 0.0, self.steps, right0, w_half=self._w_right)
        return left, right

    def choose_form(self, E: complex) -> str:
        left, right = self.states(E)
        return _auto_form(left, right, self.problem.omega)

    def mismatch(self, E: complex, form: str = "auto") -> complex:
        return self.evaluate(E, form)[0]

    def evaluate(self, E: complex, form: str = "auto") -> Tuple[complex, float]:
        """Matching value and the magnitude of its two terms (rounding scale)."""
        left, right = self.states(E)
        if form == "auto":
            form = _auto_form(left, right, self.problem.omega)
        if form == "log":
            if abs(left.phi) < 1e-250 or abs(right.phi) < 1e-250:
                raise DomainError("node at matching point; use form='inverse'")
            a, b = left.dphi / left.phi, right.dphi / right.phi
        elif form == "inverse":
            if abs(left.dphi) < 1e-250 or abs(right.dphi) < 1e-250:
                raise DomainError("stationary point at matching point; use form='log'")
            a, b = right.phi / right.dphi, left.phi / left.dphi
        else:
            raise DomainError(f"unknown matching form {form!r}")
        return a - b, abs(a) + abs(b)

    def wave_function(self, E: complex, form: str, max_samples: int = 401):
        """Joined ``(s, phi)`` samples normalized to unit peak modulus."""
        left0 = _decaying_start(self._w_left[0], E, -1)
        right0 = _decaying_start(self._w_right[0], E, +1)
        lp = integrate_path(None, E, -self.L, 0.0, self.steps, left0, w_half=self._w_left)
        rp = integrate_path(None, E, self.L, 0.0, self.steps, right0, w_half=self._w_right)
        # rescale the right branch so it continues the left one at s = 0
        if form == "log":
            ratio = lp.phi[-1] / rp.phi[-1]
        else:
            ratio = lp.dphi[-1] / rp.dphi[-1]
        shift = lp.log_scale[-1] - rp.log_scale[-1]
        s = np.concatenate([lp.s, rp.s[-2::-1]])
        phi = np.concatenate([lp.phi, ratio * rp.phi[-2::-1]])
        logs = np.concatenate([lp.log_scale, rp.log_scale[-2::-1] + shift])
        with np.errstate(divide="ignore"):
            logmod = np.log(np.abs(phi)) + logs
        peak = np.max(logmod)
        values = phi * np.exp(logs - peak)
        stride = max(1, (len(s) - 1) // (max_samples - 1))
        idx = np.arange(0, len(s), stride)
        if idx[-1] != len(s) - 1:
            idx = np.append(idx, len(s) - 1)
        return [(float(s[i]), complex(values[i])) for i in idx]


def _auto_form(left: WaveState, right: WaveState, omega: float) -> str:
    # |lambda_L lambda_R| compared with omega, both scale-free
    num = abs(left.dphi * right.dphi)
    den = abs(left.phi * right.phi)
    return "log" if num <= omega * den else "inverse"


def mismatch(
    problem: Problem, E: complex, L: float | None = None, steps: int | None = None, form: str = "auto"
) -> complex:
    """Difference of the left and right log-derivatives at ``s = 0``.

    With ``form="auto"`` the reciprocal ``phi/phi'`` is matched instead when
    the branches are near a node at the centre.
    """
    if L is None:
        L = half_width(problem, E)
    if steps is None:
        steps = default_steps(L)
    return Shooter(problem, L, steps).mismatch(E, form)


@dataclass
class EigenState:
    n: int
    energy: complex
    residual: float
    method: str = "shooting"
    samples: Optional[List[Tuple[float, complex]]] = None
    half_width: float = float("nan")
    steps: int = 0
    iterations: int = 0
    form: str = ""
    extras: dict = field(default_factory=dict)


def _secant(f, E0: complex, tol: float, max_iter: int):
    """Complex secant on ``f``, which returns the value and its rounding scale.

    Converged once ``|f| <= 1e-8`` and the step is below ``tol`` relative.
    On ill-conditioned contours the iterates end up wandering in the
    rounding noise of ``f`` before that; once ``|f|`` has stopped improving
    for a few iterations the best iterate is returned. Returns
    ``(E, |f(E)|, iterations, resolution)`` with ``resolution`` the
    attainable accuracy estimate ``eps * scale / |slope|``.
    """
    E0 = complex(E0)
    E1 = E0 + 1e-5 * max(1.0, abs(E0))
    (f0, _), (f1, sc1) = f(E0), f(E1)
    best = (E1, abs(f1), sc1) if abs(f1) < abs(f0) else (E0, abs(f0), sc1)
    slope = float("inf")
    stale = 0
    for it in range(1, max_iter + 1):
        denom = f1 - f0
        if denom == 0:
            break
        slope = abs(denom / (E1 - E0))
        E2 = E1 - f1 * (E1 - E0) / denom
        if not cmath.isfinite(E2):
            raise ConvergenceError("secant produced a non-finite iterate", best=best[0], residual=best[1])
        f2, sc2 = f(E2)
        if abs(f2) < best[1]:
            best = (E2, abs(f2), sc2)
            stale = 0
        else:
            stale += 1
        if abs(f2) <= MISMATCH_TOL and abs(E2 - E1) <= tol * max(1.0, abs(E2)):
            return E2, abs(f2), it, EPS * sc2 / slope
        if stale >= STALL_LIMIT and best[1] <= MISMATCH_TOL:
            return best[0], best[1], it, EPS * best[2] / slope
        E0, f0, E1, f1 = E1, f1, E2, f2
    if best[1] <= MISMATCH_TOL and best[1] <= NOISE_FACTOR * EPS * best[2]:
        return best[0], best[1], max_iter, EPS * best[2] / slope
    raise ConvergenceError(
        f"secant did not converge in {max_iter} iterations", best=best[0], residual=best[1]
    )


def find_eigenvalue(
    problem: Problem,
    E_guess: complex,
    tol: float = 1e-12,
    *,
    n: int = -1,
    L: float | None = None,
    steps: int | None = None,
    max_iter: int = 60,
    refine: bool = True,
    with_samples: bool = False,
) -> EigenState:
    """Root of the matching function near ``E_guess``.

    The matching form is fixed at the guess so the secant sees one analytic
    function. With ``refine`` the step count is doubled until the eigenvalue
    moves by less than ``1e-10`` relative (or below the attainable accuracy).

    Raises :class:`ConvergenceError` when refinement does not settle or when
    the attainable accuracy on this contour is worse than ``1e-6`` relative,
    in which case the root found is rounding noise, not an eigenvalue.
    """
    E_guess = complex(E_guess)
    if L is None:
        L = half_width(problem, E_guess)
    if steps is None:
        steps = default_steps(L)
    shooter = Shooter(problem, L, steps)
    form = shooter.choose_form(E_guess)
    E, res, its, resolution = _secant(lambda e: shooter.evaluate(e, form), E_guess, tol, max_iter)
    total_its = its
    history = [E]
    if refine:
        for _ in range(MAX_DOUBLINGS):
            shooter = Shooter(problem, L, shooter.steps * 2)
            E_new, res, its, resolution = _secant(
                lambda e: shooter.evaluate(e, form), E, tol, max_iter
            )
            total_its += its
            history.append(E_new)
            moved = abs(E_new - E)
            E = E_new
            if moved < max(REFINE_RTOL * max(1.0, abs(E)), 10 * resolution):
                break
        else:
            raise ConvergenceError(
                f"step refinement did not settle (last move {moved:.3g})", best=E, residual=res
            )
    if resolution > MAX_RESOLUTION * max(1.0, abs(E)):
        raise ConvergenceError(
            f"ill-conditioned contour: attainable accuracy {resolution:.3g} near E={E:.6g}",
            best=E,
            residual=res,
        )
    state = EigenState(
        n=n,
        energy=E,
        residual=res,
        method="shooting",
        half_width=L,
        steps=shooter.steps,
        iterations=total_its,
        form=form,
        extras={"refinement_history": history, "resolution": resolution},
    )
    if with_samples:
        state.samples = shooter.wave_function(E, form)
    return state


def solve_levels(
    problem: Problem,
    n_max: int,
    tol: float = 1e-12,
    with_samples: bool = False,
    dedup_rtol: float = 1e-6,
    steps: int | None = None,
) -> List[EigenState]:
    """Levels ``n = 0..n_max-1`` seeded from ``problem.seed``; sorted, no duplicates."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1 (got {n_max})")
    found: List[EigenState] = []
    for n in range(n_max):
        try:
            st = find_eigenvalue(
                problem, problem.seed(n), tol, n=n, steps=steps, with_samples=with_samples
            )
        except ConvergenceError as exc:
            raise ConvergenceError(f"level {n}: {exc}", best=exc.best, residual=exc.residual) from exc
        for other in found:
            if abs(st.energy - other.energy) <= dedup_rtol * max(1.0, abs(st.energy)):
                raise DuplicateLevelError(
                    f"level {n} converged onto level {other.n} (E={st.energy})", level=n
                )
        found.append(st)
    found.sort(key=lambda st: st.energy.real)
    for k, st in enumerate(found):
        st.n = k
    return found


def spectrum(
    c: Coupling,
    epsilon: float,
    n_max: int = 6,
    tol: float = 1e-12,
    with_samples: bool = False,
    steps: int | None = None,
) -> List[EigenState]:
    """Low-lying levels on the line ``x = s - i*epsilon``, seeded by the harmonic formula."""
    return solve_levels(contour_problem(c, epsilon), n_max, tol, with_samples, steps=steps)
