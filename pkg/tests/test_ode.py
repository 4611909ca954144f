import math

import numpy as np
import pytest

from ptsextic.errors import DomainError, IntegrationError
from ptsextic.ode import WaveState, integrate, integrate_path, wronskian
from ptsextic.oscillator import OMEGA
from ptsextic.potential import Coupling
from ptsextic.shooting import ContourPotential


def zero(s):
    return np.zeros_like(np.asarray(s, dtype=float)) + 0j


def harmonic(s):
    return OMEGA**2 * np.asarray(s, dtype=float) ** 2 + 0j


def value(st):
    return st.phi * math.exp(st.log_scale)


def test_exponential_oracle():
    st = integrate(zero, -1.0, 0.0, 1.0, 200, WaveState(1, 1))
    assert value(st) == pytest.approx(math.e, rel=1e-8)


def test_gaussian_oracle():
    st = integrate(harmonic, OMEGA, 0.0, 2.0, 2000, WaveState(1, 0))
    assert value(st) == pytest.approx(math.exp(-OMEGA * 2.0**2 / 2), rel=1e-6)


@pytest.mark.parametrize(
    "pot, E, s_to, init, exact, n",
    [
        (zero, -1.0, 1.0, WaveState(1, 1), math.e, 8),
        (harmonic, OMEGA, 1.0, WaveState(1, 0), math.exp(-OMEGA / 2), 40),
    ],
)
def test_fourth_order(pot, E, s_to, init, exact, n):
    e1 = abs(value(integrate(pot, E, 0.0, s_to, n, init)) - exact)
    e2 = abs(value(integrate(pot, E, 0.0, s_to, 2 * n, init)) - exact)
    assert 12 <= e1 / e2 <= 20


def test_reversible_on_free_equation():
    init = WaveState(0.3 - 0.2j, 1.1 + 0.5j)
    fwd = integrate(zero, 2.0 + 0.5j, 0.0, 3.0, 3000, init)
    back = integrate(zero, 2.0 + 0.5j, 3.0, 0.0, 3000, fwd)
    assert value(back) == pytest.approx(init.phi, rel=1e-10)
    assert back.dphi * math.exp(back.log_scale) == pytest.approx(init.dphi, rel=1e-10)


def test_rescaling_tracks_growth():
    st = integrate(zero, -1.0, 0.0, 100.0, 20000, WaveState(1, 1))
    assert 1e-8 <= abs(st.phi) <= 1e8
    assert st.log_scale + math.log(abs(st.phi)) == pytest.approx(100.0, rel=1e-8)


def test_path_matches_endpoint():
    p = integrate_path(zero, -1.0, 0.0, 1.0, 100, WaveState(1, 1))
    assert p.s[0] == 0.0 and p.s[-1] == 1.0
    assert np.allclose(p.phi * np.exp(p.log_scale), np.exp(p.s), rtol=1e-8)
    assert p.final.phi == integrate(zero, -1.0, 0.0, 1.0, 100, WaveState(1, 1)).phi


def test_wronskian_examples():
    assert wronskian(WaveState(1, 0), WaveState(0, 1)) == 1
    a = WaveState(0.3 + 1j, -2j, 4.0)
    assert wronskian(a, a) == 0


def test_wronskian_conserved_in_well():
    c = Coupling(1e4)
    pot = ContourPotential(c, c.R)
    E = -172.6496
    # converged shooting runs end at >= 800 steps per unit after refinement;
    # |s| <= 2 covers the allowed region plus about one decay length
    steps = 800 * 4
    a0, b0 = WaveState(1, 0), WaveState(0, 1)
    a = integrate(pot, E, -2.0, 2.0, steps, a0)
    b = integrate(pot, E, -2.0, 2.0, steps, b0)
    w0 = wronskian(a0, b0)
    assert abs(wronskian(a, b) - w0) <= 1e-8 * abs(w0)


def test_wronskian_drift_relative_to_norms_full_contour():
    # across the whole domain the pair separates exponentially; the drift
    # is bounded relative to the product of the solution sizes
    c = Coupling(1e4)
    pot = ContourPotential(c, c.R)
    E = -172.6496
    L = 8.0
    steps = 800 * 16
    a0, b0 = WaveState(1, 0), WaveState(0, 1)
    a = integrate(pot, E, -L, L, steps, a0)
    b = integrate(pot, E, -L, L, steps, b0)
    norms = math.hypot(abs(a.phi), abs(a.dphi)) * math.hypot(abs(b.phi), abs(b.dphi))
    norms *= math.exp(a.log_scale + b.log_scale)
    assert abs(wronskian(a, b) - wronskian(a0, b0)) <= 1e-8 * norms


def test_errors():
    with pytest.raises(DomainError):
        WaveState(0, 0)
    with pytest.raises(DomainError):
        integrate(zero, 0.0, 0.0, 1.0, 0, WaveState(1, 0))
    with pytest.raises(IntegrationError):
        integrate(lambda s: np.full(len(s), np.nan + 0j), 0.0, -1.0, 1.0, 10, WaveState(1, 0))
