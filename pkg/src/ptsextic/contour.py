"""Straight integration line x(s) = s - i*epsilon below the singular origin."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError

__all__ = ["Contour", "map_to_x", "grid"]


@dataclass(frozen=True)
class Contour:
    """Uniform symmetric discretization of ``s in [-half_width, half_width]``.

    Parameters
    ----------
    epsilon : float
        Distance of the line below the real axis. Must be positive, the
        line would otherwise touch the origin or the cut above it.
    half_width : float
        Truncation ``L`` of the real parameter ``s``.
    n_points : int
        Number of grid nodes, odd so that ``s = 0`` is a node.
    """

    epsilon: float
    half_width: float
    n_points: int = 2001

    def __post_init__(self):
        if not np.isfinite(self.epsilon) or self.epsilon <= 0:
            raise DomainError(
                f"epsilon must be > 0 (got {self.epsilon}); "
                "a non-positive shift crosses the cut or the singularity"
            )
        if not np.isfinite(self.half_width) or self.half_width <= 0:
            raise DomainError(f"half_width must be > 0 (got {self.half_width})")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise DomainError(f"n_points must be an integer >= 3 (got {self.n_points})")
        if self.n_points % 2 == 0:
            raise DomainError(f"n_points must be odd so s=0 is a node (got {self.n_points})")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n_points - 1)

    @cached_property
    def s(self) -> np.ndarray:
        return grid(self)

    @property
    def x(self) -> np.ndarray:
        return map_to_x(self, self.s)

    def refined(self) -> "Contour":
        """Same line and width with the spacing halved."""
        return Contour(self.epsilon, self.half_width, 2 * self.n_points - 1)


def map_to_x(contour: Contour, s):
    """Complex coordinate ``s - i*epsilon`` (scalar or array)."""
    if np.ndim(s) == 0:
        return complex(float(s), -contour.epsilon)
    s = np.asarray(s, dtype=float)
    return s - 1j * contour.epsilon


def grid(contour: Contour) -> np.ndarray:
    # mirror the positive half so s_j + s_{n-1-j} == 0 bit-exactly
    half = (contour.n_points - 1) // 2
    pos = contour.half_width * (np.arange(1, half + 1) / half)
    return np.concatenate([-pos[::-1], [0.0], pos])
