"""Fixed-step RK4 for phi'' = (W(s) - E) phi with overflow-safe rescaling.

The potential is sampled once on the half-step grid and handed to a compiled
kernel, so repeated integrations at different energies (secant iteration)
only pay for the arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numba
import numpy as np

from .errors import DomainError, IntegrationError

__all__ = ["WaveState", "Path", "integrate", "integrate_path", "wronskian", "sample_half_grid"]

RESCALE_HIGH = 1e8
RESCALE_LOW = 1e-8


@dataclass(frozen=True)
class WaveState:
    """``(phi, dphi)`` at one point; the true amplitude is ``phi * exp(log_scale)``."""

    phi: complex
    dphi: complex
    log_scale: float = 0.0

    def __post_init__(self):
        if self.phi == 0 and self.dphi == 0:
            raise DomainError("wave state (phi, dphi) must not vanish identically")

    @property
    def log_derivative(self) -> complex:
        return self.dphi / self.phi

    def amplitude(self) -> complex:
        return self.phi * math.exp(self.log_scale)


@dataclass(frozen=True)
class Path:
    """Trajectory of an integration, one entry per grid node."""

    s: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    log_scale: np.ndarray

    @property
    def final(self) -> WaveState:
        return WaveState(complex(self.phi[-1]), complex(self.dphi[-1]), float(self.log_scale[-1]))


@numba.njit(cache=True)
def _rk4(w_half, energy, h, phi, dphi, log_scale, record):
    n = (w_half.shape[0] - 1) // 2
    size = n + 1 if record else 1
    tphi = np.empty(size, dtype=np.complex128)
    tdphi = np.empty(size, dtype=np.complex128)
    tls = np.empty(size, dtype=np.float64)
    if record:
        tphi[0] = phi
        tdphi[0] = dphi
        tls[0] = log_scale
    half = 0.5 * h
    sixth = h / 6.0
    cphi = 0j
    cdphi = 0j
    for j in range(n):
        q0 = w_half[2 * j] - energy
        q1 = w_half[2 * j + 1] - energy
        q2 = w_half[2 * j + 2] - energy
        k1p = dphi
        k1d = q0 * phi
        k2p = dphi + half * k1d
        k2d = q1 * (phi + half * k1p)
        k3p = dphi + half * k2d
        k3d = q1 * (phi + half * k2p)
        k4p = dphi + h * k3d
        k4d = q2 * (phi + h * k3p)
        # compensated (Kahan) update of the state
        y = sixth * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) - cphi
        t = phi + y
        cphi = (t - phi) - y
        phi = t
        y = sixth * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) - cdphi
        t = dphi + y
        cdphi = (t - dphi) - y
        dphi = t
        m = max(abs(phi), abs(dphi))
        if not np.isfinite(m) or m == 0.0:
            return phi, dphi, log_scale, j, tphi, tdphi, tls
        if m > RESCALE_HIGH or m < RESCALE_LOW:
            phi = phi / m
            dphi = dphi / m
            cphi = cphi / m
            cdphi = cdphi / m
            log_scale += math.log(m)
        if record:
            tphi[j + 1] = phi
            tdphi[j + 1] = dphi
            tls[j + 1] = log_scale
    return phi, dphi, log_scale, -1, tphi, tdphi, tls


def sample_half_grid(potential: Callable, s_from: float, s_to: float, steps: int) -> np.ndarray:
    """``W`` at the ``2*steps + 1`` nodes and midpoints between ``s_from`` and ``s_to``."""
    if steps < 1:
        raise DomainError(f"steps must be >= 1 (got {steps})")
    j = np.arange(2 * steps + 1)
    s = s_from + (s_to - s_from) * (j / (2 * steps))
    s[-1] = s_to
    return np.asarray(potential(s), dtype=np.complex128)


def _run(w_half, E, s_from, s_to, steps, initial, record):
    if steps < 1:
        raise DomainError(f"steps must be >= 1 (got {steps})")
    if not np.all(np.isfinite(w_half)):
        bad = int(np.argmin(np.isfinite(w_half)))
        s_bad = s_from + (s_to - s_from) * bad / (2 * steps)
        raise IntegrationError(f"potential is not finite at s = {s_bad:.6g}", s=s_bad)
    h = (s_to - s_from) / steps
    phi, dphi, ls, fail, tphi, tdphi, tls = _rk4(
        w_half, complex(E), h, complex(initial.phi), complex(initial.dphi),
        float(initial.log_scale), record,
    )
    if fail >= 0:
        s_bad = s_from + h * (fail + 1)
        raise IntegrationError(f"wave function became non-finite at s = {s_bad:.6g}", s=s_bad)
    return phi, dphi, ls, tphi, tdphi, tls, h


def integrate(
    potential: Callable,
    E: complex,
    s_from: float,
    s_to: float,
    steps: int,
    initial: WaveState,
    w_half: np.ndarray | None = None,
) -> WaveState:
    """Advance ``initial`` from ``s_from`` to ``s_to`` in ``steps`` RK4 steps.

    ``potential`` maps an array of real ``s`` to complex ``W(s)``. A
    precomputed ``w_half`` (see :func:`sample_half_grid`) skips resampling.
    """
    if w_half is None:
        w_half = sample_half_grid(potential, s_from, s_to, steps)
    phi, dphi, ls, *_ = _run(w_half, E, s_from, s_to, steps, initial, False)
    return WaveState(complex(phi), complex(dphi), float(ls))


def integrate_path(
    potential: Callable,
    E: complex,
    s_from: float,
    s_to: float,
    steps: int,
    initial: WaveState,
    w_half: np.ndarray | None = None,
) -> Path:
    if w_half is None:
        w_half = sample_half_grid(potential, s_from, s_to, steps)
    *_, tphi, tdphi, tls, h = _run(w_half, E, s_from, s_to, steps, initial, True)
    s = s_from + h * np.arange(steps + 1)
    s[-1] = s_to
    return Path(s, tphi, tdphi, tls)


def wronskian(a: WaveState, b: WaveState) -> complex:
    return (a.phi * b.dphi - a.dphi * b.phi) * math.exp(a.log_scale + b.log_scale)
