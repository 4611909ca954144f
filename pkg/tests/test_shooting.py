import math

import pytest
from hypothesis import given, settings, strategies as st

from ptsextic.errors import ConvergenceError, DuplicateLevelError
from ptsextic.oscillator import OMEGA
from ptsextic.perturbation import harmonic_energy
from ptsextic.potential import Coupling
from ptsextic.shooting import (
    Problem,
    Shooter,
    contour_problem,
    default_steps,
    find_eigenvalue,
    half_width,
    harmonic_problem,
    mismatch,
    solve_levels,
    spectrum,
)

G4 = Coupling(1e4)


@pytest.fixture(scope="module")
def levels_g4():
    return spectrum(G4, G4.R, 4)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_harmonic_mismatch_vanishes(n):
    assert abs(mismatch(harmonic_problem(), (2 * n + 1) * OMEGA)) <= 1e-7


def test_harmonic_ground_state():
    st_ = find_eigenvalue(harmonic_problem(), 2.9)
    assert st_.energy == pytest.approx(math.sqrt(8), abs=1e-9)


def test_harmonic_spectrum():
    for st_ in solve_levels(harmonic_problem(), 3):
        assert abs(st_.energy - (2 * st_.n + 1) * OMEGA) <= 1e-8


def test_harmonic_wave_function_is_gaussian():
    st_ = find_eigenvalue(harmonic_problem(), 2.9, with_samples=True)
    for s, phi in st_.samples:
        assert abs(phi - math.exp(-OMEGA * s * s / 2)) <= 1e-6


def test_ground_state_g4(levels_g4):
    E0 = levels_g4[0].energy
    guess = harmonic_energy(0, G4.R)
    assert abs(E0 - guess) <= 1.0
    assert abs(E0.imag) <= 1e-8 * abs(E0.real)


def test_spacings_g4(levels_g4):
    E = [st_.energy.real for st_ in levels_g4]
    for a, b in zip(E, E[1:]):
        assert abs((b - a) - 2 * OMEGA) <= 0.05 * 2 * OMEGA


def test_refinement_stable(levels_g4):
    # doubling the starting step count changes nothing beyond 1e-9
    again = spectrum(G4, G4.R, 4, steps=2 * default_steps(levels_g4[-1].half_width))
    for a, b in zip(levels_g4, again):
        assert abs(a.energy - b.energy) <= 1e-9 * abs(a.energy)


def test_epsilon_independence_g4(levels_g4):
    other = spectrum(G4, 0.8 * G4.R, 4)
    for a, b in zip(levels_g4, other):
        assert abs(a.energy - b.energy) <= 1e-6 * abs(a.energy)


@settings(max_examples=25, deadline=None)
@given(
    re=st.floats(-180.0, -140.0),
    im=st.floats(-3.0, 3.0),
)
def test_mismatch_pt_conjugation(re, im):
    prob = contour_problem(G4, G4.R)
    sh = Shooter(prob, 7.0, 2800)
    E = complex(re, im)
    for form in ("log", "inverse"):
        a = sh.mismatch(E, form)
        b = sh.mismatch(E.conjugate(), form)
        assert abs(b - a.conjugate()) <= 1e-10 * max(1.0, abs(a))


def test_real_guess_stays_real(levels_g4):
    assert all(st_.energy.imag == 0.0 for st_ in levels_g4)


def test_midpoint_guess_never_returns_non_root():
    prob = harmonic_problem()
    mid = 2 * OMEGA
    try:
        st_ = find_eigenvalue(prob, mid)
    except ConvergenceError:
        return
    assert min(abs(st_.energy - OMEGA), abs(st_.energy - 3 * OMEGA)) <= 1e-8
    assert abs(mismatch(prob, st_.energy, form=st_.form)) <= 1e-7


def test_duplicate_levels_detected():
    base = harmonic_problem()
    prob = Problem(base.potential, base.w0, seed=lambda n: 2.9, curvature=base.curvature)
    with pytest.raises(DuplicateLevelError):
        solve_levels(prob, 2)


def test_half_width_ends_forbidden():
    prob = contour_problem(G4, G4.R)
    E = harmonic_energy(5, G4.R)
    L = half_width(prob, E)
    ends = prob.potential([-L, L])
    assert all((w - E).real >= 25 for w in ends)


def test_wave_function_pt_symmetric(levels_g4):
    st_ = find_eigenvalue(contour_problem(G4, G4.R), levels_g4[1].energy, with_samples=True)
    samples = dict(st_.samples)
    s_vals = [s for s in samples if s > 0 and -s in samples]
    assert s_vals
    # PT: phi(-s) = conj(phi(s)) up to one constant phase
    ref = max(s_vals, key=lambda s: abs(samples[s]))
    phase = samples[-ref] / samples[ref].conjugate()
    assert abs(abs(phase) - 1) <= 1e-6
    for s in s_vals:
        assert abs(samples[-s] - phase * samples[s].conjugate()) <= 1e-6


@pytest.mark.parametrize("fraction", [0.7, 1.5])
def test_ill_conditioned_contour_reported(fraction):
    # these shifts put the well behind a barrier too large for double precision
    with pytest.raises(ConvergenceError, match="ill-conditioned"):
        spectrum(G4, fraction * G4.R, 1)
