import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ptsextic.errors import DomainError
from ptsextic.oscillator import OMEGA, HOBasis, ho_energy, position_matrix, position_power_matrix


def test_energies():
    assert ho_energy(0) == pytest.approx(2.8284271247461903, rel=1e-15)
    assert ho_energy(3, 1.0) == 7
    assert ho_energy(1) == pytest.approx(3 * math.sqrt(8), rel=1e-15)
    assert np.allclose(HOBasis(dimension=5).energies(), [(2 * n + 1) * OMEGA for n in range(5)])


@given(k=st.integers(1, 12), dim=st.integers(13, 40))
def test_parity_and_symmetry(k, dim):
    M = position_power_matrix(k, HOBasis(dimension=dim))
    assert np.array_equal(M, M.T)
    m, n = np.indices(M.shape)
    assert np.all(M[(m + n + k) % 2 == 1] == 0)


@pytest.mark.parametrize("k", [1, 2, 3, 6, 10])
def test_truncation_stability(k):
    N = 30
    a = position_power_matrix(k, HOBasis(dimension=N))
    b = position_power_matrix(k, HOBasis(dimension=N + 10))
    sl = slice(0, N - k + 1)
    ref = b[sl, sl]
    nz = ref != 0
    assert np.all(np.abs(a[sl, sl][nz] - ref[nz]) <= 1e-13 * np.abs(ref[nz]))
    assert np.all(a[sl, sl][~nz] == 0)


def test_power_zero_rejected():
    with pytest.raises(DomainError):
        position_power_matrix(0, HOBasis(dimension=8))


def test_k2_diagonal():
    M = position_power_matrix(2, HOBasis(dimension=40))
    n = np.arange(30)
    assert np.allclose(np.diag(M)[:30], (2 * n + 1) / (2 * OMEGA), rtol=1e-13, atol=0)


def test_k4_diagonal_oracle():
    # <n|s^4|n> = 3(2n^2 + 2n + 1) / (4 w^2)
    M = position_power_matrix(4, HOBasis(dimension=40))
    n = np.arange(30)
    assert np.allclose(np.diag(M)[:30], 3 * (2 * n**2 + 2 * n + 1) / (4 * OMEGA**2), rtol=1e-13, atol=0)


def test_position_matrix_against_grid_quadrature():
    # independent check: Hermite functions on a grid
    w = OMEGA
    s = np.linspace(-6, 6, 4001)
    xi = math.sqrt(w) * s
    psi = [np.pi**-0.25 * w**0.25 * np.exp(-xi**2 / 2)]
    psi.append(math.sqrt(2) * xi * psi[0])
    for n in range(2, 8):
        psi.append(math.sqrt(2 / n) * xi * psi[n - 1] - math.sqrt((n - 1) / n) * psi[n - 2])
    X = position_matrix(HOBasis(dimension=8))
    ds = s[1] - s[0]
    for m in range(7):
        for n in range(7):
            q = np.sum(psi[m] * s * psi[n]) * ds
            assert q == pytest.approx(X[m, n], abs=1e-10)
