"""Reference oscillator -d^2/ds^2 + omega^2 s^2 in its number basis.

With this normalization (no factors of 1/2) level ``n`` sits at
``(2n + 1) omega`` and the position operator is
``s = (a + a^dagger) / sqrt(2 omega)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["OMEGA", "HOBasis", "ho_energy", "position_matrix", "position_power_matrix"]

OMEGA = math.sqrt(8.0)


@dataclass(frozen=True)
class HOBasis:
    omega: float = OMEGA
    dimension: int = 32

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"omega must be > 0 (got {self.omega})")
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise DomainError(f"dimension must be a positive integer (got {self.dimension})")

    def energies(self) -> np.ndarray:
        return (2 * np.arange(self.dimension) + 1) * self.omega


def ho_energy(n: int, omega: float = OMEGA) -> float:
    if n < 0:
        raise DomainError(f"level index must be >= 0 (got {n})")
    return (2 * n + 1) * omega


def position_matrix(basis: HOBasis) -> np.ndarray:
    """Tridiagonal ``<m|s|n>`` with off-diagonal ``sqrt(n/(2 omega))``."""
    n = np.arange(1, basis.dimension)
    off = np.sqrt(n / (2.0 * basis.omega))
    return np.diag(off, 1) + np.diag(off, -1)


def position_power_matrix(k: int, basis: HOBasis) -> np.ndarray:
    """``<m|s^k|n>`` in the truncated basis, built by repeated multiplication.

    Only entries with ``m, n <= dimension - k`` are free of truncation error.
    The result is exactly symmetric and exactly zero where ``m + n + k`` is odd.
    """
    if k < 1:
        raise DomainError(f"power must be >= 1 (got {k})")
    x = position_matrix(basis)
    m = x
    for _ in range(k - 1):
        m = m @ x
    m = np.triu(m) + np.triu(m, 1).T
    idx = np.arange(basis.dimension)
    m[(idx[:, None] + idx[None, :] + k) % 2 == 1] = 0.0
    return m
