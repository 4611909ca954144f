"""Spectrum of the PT-regularized singular oscillator ``V(x) = x**2 + g**2/x**6``
on the shifted contour ``x = s - i*epsilon``."""

__version__ = "0.1.0"

from .contour import Contour, grid, map_to_x
from .errors import (
    ConvergenceError,
    DomainError,
    DuplicateLevelError,
    IntegrationError,
    LUBreakdownError,
    TruncationError,
)
from .fdsolver import fd_spectrum, shift_invert_eigen
from .oscillator import OMEGA, HOBasis, position_matrix, position_power_matrix
from .perturbation import PerturbedEnergy, harmonic_energy, predicted_spectrum, rs_corrections
from .potential import (
    Coupling,
    TaylorSeries,
    coefficient_string,
    stationary_points,
    stokes_dominance,
    taylor_series,
    v_of_x,
    w_of_s,
)
from .shooting import EigenState, find_eigenvalue, spectrum
from .verify import (
    VerificationReport,
    epsilon_independence,
    perturbation_match,
    reality_report,
    scaling_study,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "DuplicateLevelError",
    "IntegrationError",
    "LUBreakdownError",
    "TruncationError",
    "Coupling",
    "TaylorSeries",
    "coefficient_string",
    "stationary_points",
    "stokes_dominance",
    "taylor_series",
    "v_of_x",
    "w_of_s",
    "VerificationReport",
    "epsilon_independence",
    "perturbation_match",
    "reality_report",
    "scaling_study",
    "Contour",
    "grid",
    "map_to_x",
    "fd_spectrum",
    "shift_invert_eigen",
    "OMEGA",
    "HOBasis",
    "position_matrix",
    "position_power_matrix",
    "PerturbedEnergy",
    "harmonic_energy",
    "predicted_spectrum",
    "rs_corrections",
    "EigenState",
    "find_eigenvalue",
    "spectrum",
]
