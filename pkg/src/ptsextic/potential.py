"""The singular oscillator V(x) = x**2 + g**2 / x**6 and its local structure.

The coupling enters either as ``g`` or through the stationary radius
``R = 3**(1/8) * g**(1/4)``, in terms of which ``V(x) = x**2 + R**8 / (3 x**6)``.
Along the line ``x = s - iR`` the potential is expanded about the stationary
point ``-iR``; its coefficients follow from the binomial series of
``(1 + i s / R)**-6``::

    c_0 = -4 R**2 / 3,  c_1 = 0,  c_2 = 8,
    c_k = -(1/3) (-i)**k C(k+5, 5) R**(2-k)    (k >= 3)
"""

from __future__ import annotations

import decimal
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np

from .errors import DomainError

__all__ = [
    "SINGULARITY_EXPONENT",
    "Coupling",
    "StationaryPoint",
    "TaylorSeries",
    "Dominance",
    "v_of_x",
    "w_of_s",
    "v_prime",
    "v_second",
    "stationary_points",
    "taylor_series",
    "stokes_dominance",
    "coefficient_string",
    "coefficient_fraction",
]

# V ~ g^2 x^(-2-gamma) near the origin; this module is specific to gamma = 4.
SINGULARITY_EXPONENT = 4

_HP = decimal.Context(prec=40)


@dataclass(frozen=True)
class Coupling:
    """Coupling strength ``g`` together with the derived radius ``R``.

    Build with ``Coupling(g)`` or ``Coupling.from_R(R)``. ``R`` is computed
    once in 40-digit decimal arithmetic and rounded, since ``R**8 = 3 g**2``
    amplifies any rounding in ``R`` eightfold.
    """

    g: float
    R: float = None

    def __post_init__(self):
        g = float(self.g)
        if not math.isfinite(g) or g <= 0:
            raise DomainError(f"coupling g must be positive and finite (got {self.g})")
        object.__setattr__(self, "g", g)
        if self.R is None:
            object.__setattr__(self, "R", _radius_from_g(g))

    @classmethod
    def from_R(cls, R: float) -> "Coupling":
        R = float(R)
        if not math.isfinite(R) or R <= 0:
            raise DomainError(f"radius R must be positive and finite (got {R})")
        return cls(g=_g_from_radius(R), R=R)

    @property
    def g2(self) -> float:
        return self.g * self.g


def _radius_from_g(g: float) -> float:
    d = _HP.multiply(decimal.Decimal(3), _HP.multiply(decimal.Decimal(g), decimal.Decimal(g)))
    return float(_HP.power(d, decimal.Decimal(1) / decimal.Decimal(8)))


def _g_from_radius(R: float) -> float:
    r4 = _HP.power(decimal.Decimal(R), 4)
    return float(_HP.divide(r4, _HP.sqrt(decimal.Decimal(3))))


def _check_nonzero(x):
    if np.any(np.asarray(x) == 0):
        raise DomainError("singular origin: V is undefined at x = 0")


def v_of_x(c: Coupling, x):
    """``x**2 + g**2 / x**6`` for complex scalar or array ``x != 0``."""
    _check_nonzero(x)
    if np.ndim(x) == 0:
        x = complex(x)
        x2 = x * x
        return x2 + c.g2 / (x2 * x2 * x2)
    x = np.asarray(x, dtype=complex)
    x2 = x * x
    return x2 + c.g2 / (x2 * x2 * x2)


def w_of_s(c: Coupling, epsilon: float, s):
    """Potential along the contour, ``V(s - i*epsilon)`` for real ``s``."""
    if not epsilon > 0:
        raise DomainError(f"epsilon must be > 0 (got {epsilon})")
    if np.ndim(s) == 0:
        return v_of_x(c, complex(float(s), -epsilon))
    return v_of_x(c, np.asarray(s, dtype=float) - 1j * epsilon)


def v_prime(c: Coupling, x):
    """First derivative ``2x - 6 g**2 / x**7``."""
    _check_nonzero(x)
    x = complex(x) if np.ndim(x) == 0 else np.asarray(x, dtype=complex)
    return 2 * x - 6 * c.g2 / x**7


def v_second(c: Coupling, x):
    """Second derivative ``2 + 42 g**2 / x**8``."""
    _check_nonzero(x)
    x = complex(x) if np.ndim(x) == 0 else np.asarray(x, dtype=complex)
    return 2 + 42 * c.g2 / x**8


@dataclass(frozen=True)
class StationaryPoint:
    index: int
    location: complex
    second_derivative: complex

    @property
    def angle(self) -> float:
        return math.pi * (self.index - 1) / 4


# exact unit roots e^{i pi (m-1)/4}, m = 1..8
_ROOTS = [
    complex(1, 0), complex(math.sqrt(0.5), math.sqrt(0.5)), complex(0, 1),
    complex(-math.sqrt(0.5), math.sqrt(0.5)), complex(-1, 0),
    complex(-math.sqrt(0.5), -math.sqrt(0.5)), complex(0, -1),
    complex(math.sqrt(0.5), -math.sqrt(0.5)),
]


def stationary_points(c: Coupling) -> List[StationaryPoint]:
    """The eight roots of ``V'(x) = 0``, ``R_m = R exp(i pi (m-1)/4)``."""
    points = []
    for m, unit in enumerate(_ROOTS, start=1):
        loc = c.R * unit
        points.append(StationaryPoint(m, loc, v_second(c, loc)))
    return points


# powers of -i, indexed by k mod 4
_MINUS_I_POW = (1 + 0j, -1j, -1 + 0j, 1j)


@dataclass(frozen=True)
class TaylorSeries:
    """Expansion ``W(s) = sum_k c_k s**k`` about ``s = 0`` on the line ``epsilon = R``."""

    R: float
    coefficients: tuple

    @property
    def k_max(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k):
        return self.coefficients[k]

    def __call__(self, s):
        """Evaluate the truncated polynomial (Horner)."""
        s = np.asarray(s, dtype=complex) if np.ndim(s) else complex(s)
        acc = 0j
        for ck in reversed(self.coefficients):
            acc = acc * s + ck
        return acc

    def term(self, k: int, s):
        return self.coefficients[k] * s**k

    def exact_form(self, k: int) -> str:
        return coefficient_string(k)


def _real_magnitudes(R: float, k_max: int) -> List[float]:
    """Signed real factors a_k with c_k = (-i)^k a_k for k >= 3, by recurrence."""
    mags = [-(56.0 / 3.0) / R]  # -(1/3) C(8,5) R^(-1)
    for k in range(3, k_max):
        mags.append(mags[-1] * (k + 6) / ((k + 1) * R))
    return mags


def taylor_series(c: Coupling, k_max: int = 10) -> TaylorSeries:
    """Coefficients ``c_0..c_{k_max}`` of ``W(s)`` at ``epsilon = R``.

    For ``k >= 3`` the magnitudes come from ``c_{k+1} = c_k (-i)(k+6)/((k+1)R)``
    seeded at ``k = 3``; the phase ``(-i)**k`` is attached afterwards so odd
    coefficients are exactly imaginary and even ones exactly real.
    """
    if k_max < 2:
        raise DomainError(f"k_max must be >= 2 (got {k_max})")
    R = c.R
    coeffs = [complex(-4.0 * R * R / 3.0, 0.0), 0j, complex(8.0, 0.0)]
    for k, a in enumerate(_real_magnitudes(R, k_max), start=3):
        phase = _MINUS_I_POW[k % 4]
        coeffs.append(complex(a * phase.real, a * phase.imag))
    return TaylorSeries(R, tuple(coeffs[: k_max + 1]))


def coefficient_fraction(k: int):
    """``(rational, i_power, R_power)`` with ``c_k = rational * i**i_power * R**R_power``."""
    if k == 0:
        return Fraction(-4, 3), 0, 2
    if k == 1:
        return Fraction(0), 0, 0
    if k == 2:
        return Fraction(8), 0, 0
    # (-i)^k = i^k * (-1)^k
    value = Fraction(-math.comb(k + 5, 5), 3) * (-1) ** k
    i_pow = k % 4
    if i_pow >= 2:
        value, i_pow = -value, i_pow - 2
    return value, i_pow, 2 - k


def coefficient_string(k: int) -> str:
    """Exact closed form, e.g. ``-56i/(3R)`` or ``+1001/R^8``."""
    value, i_pow, r_pow = coefficient_fraction(k)
    if value == 0:
        return "0"
    sign = "-" if value < 0 else "+"
    num, den = abs(value.numerator), value.denominator
    unit = "i" if i_pow else ""
    if r_pow == 0:
        body = f"{num}{unit}" + (f"/{den}" if den != 1 else "")
    elif r_pow > 0:
        rp = "R" if r_pow == 1 else f"R^{r_pow}"
        body = f"{num}{unit}{rp}" + (f"/{den}" if den != 1 else "")
    else:
        rp = "R" if r_pow == -1 else f"R^{-r_pow}"
        body = f"{num}{unit}/" + (f"({den}{rp})" if den != 1 else rp)
    return sign + body


class Dominance(str, enum.Enum):
    PLUS = "plus_dominant"
    MINUS = "minus_dominant"
    BOUNDARY = "boundary"


def stokes_dominance(x: complex, g: float, rtol: float = 1e-12) -> Dominance:
    """Which of ``exp(+-g/(2x**2))`` dominates near the origin at ``x``.

    Decided by the sign of ``Re(g/x**2)``; values within ``rtol`` of the
    modulus count as the wedge boundary.
    """
    x = complex(x)
    if x == 0:
        raise DomainError("singular origin: no Stokes sector at x = 0")
    z = g / (x * x)
    if abs(z.real) <= rtol * abs(z):
        return Dominance.BOUNDARY
    return Dominance.PLUS if z.real > 0 else Dominance.MINUS
