"""Harmonic energies and Rayleigh-Schroedinger corrections about the well at -iR.

The unperturbed problem is ``-d^2/ds^2 + c_0 + 8 s^2``; every higher Taylor
term ``c_k s^k`` (k >= 3) is treated as the perturbation. The perturbation is
complex symmetric, so the second-order sum squares the amplitudes without
complex conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .errors import DomainError, TruncationError
from .oscillator import OMEGA, HOBasis, ho_energy, position_power_matrix
from .potential import Coupling, TaylorSeries, taylor_series

__all__ = [
    "PerturbedEnergy",
    "harmonic_energy",
    "rs_corrections",
    "predicted_spectrum",
    "basis_for",
]

BASIS_PADDING = 16


@dataclass(frozen=True)
class PerturbedEnergy:
    n: int
    e_harmonic: float
    first_order: complex
    second_order: complex
    total: complex
    k_max: int
    basis_dim: int
    order: int = 2

    @property
    def correction(self) -> complex:
        return self.total - self.e_harmonic


def harmonic_energy(n: int, R: float) -> float:
    """``-4 R**2 / 3 + (2n+1) sqrt(8)``."""
    if n < 0:
        raise DomainError(f"level index must be >= 0 (got {n})")
    if not R > 0:
        raise DomainError(f"R must be > 0 (got {R})")
    return -4.0 * R * R / 3.0 + ho_energy(n, OMEGA)


def basis_for(n: int, k_max: int) -> HOBasis:
    return HOBasis(OMEGA, n + k_max + BASIS_PADDING)


def _perturbation_matrix(series: TaylorSeries, basis: HOBasis, k_max: int) -> np.ndarray:
    v = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for k in range(3, k_max + 1):
        v += series[k] * position_power_matrix(k, basis)
    return v


def rs_corrections(
    n: int,
    series: TaylorSeries,
    basis: HOBasis | None = None,
    k_max: int | None = None,
    order: int = 2,
) -> PerturbedEnergy:
    """First- and second-order shifts of level ``n`` from the terms ``k = 3..k_max``."""
    if k_max is None:
        k_max = series.k_max
    if basis is None:
        basis = basis_for(n, k_max)
    if k_max < 3:
        raise DomainError(f"k_max must be >= 3 (got {k_max})")
    if k_max > series.k_max:
        raise DomainError(f"series holds terms up to k={series.k_max}, asked for {k_max}")
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2 (got {order})")
    if basis.dimension < n + k_max + BASIS_PADDING:
        raise TruncationError(
            f"basis dimension {basis.dimension} < n + k_max + {BASIS_PADDING} = "
            f"{n + k_max + BASIS_PADDING}; matrix elements would be truncated"
        )
    if abs(basis.omega - OMEGA) > 1e-15:
        raise DomainError("the well curvature fixes omega = sqrt(8)")

    e0 = harmonic_energy(n, series.R)
    first = 0j
    second = 0j
    if order >= 1:
        v = _perturbation_matrix(series, basis, k_max)
        first = complex(v[n, n])
        if order == 2:
            amp = np.delete(v[:, n], n)
            gaps = np.delete(ho_energy(n) - basis.energies(), n)
            second = complex(np.sum(amp * amp / gaps))
    return PerturbedEnergy(
        n=n,
        e_harmonic=e0,
        first_order=first,
        second_order=second,
        total=e0 + first + second,
        k_max=k_max,
        basis_dim=basis.dimension,
        order=order,
    )


def predicted_spectrum(
    c: Coupling, n_max: int, order: int = 2, k_max: int = 10
) -> List[PerturbedEnergy]:
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1 (got {n_max})")
    series = taylor_series(c, max(k_max, 3))
    return [rs_corrections(n, series, k_max=k_max, order=order) for n in range(n_max)]
