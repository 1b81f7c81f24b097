import numpy as np
import pytest

from cwom import Grid1D


@pytest.fixture
def grid64():
    return Grid1D(64, 0.1)


@pytest.fixture
def grid256():
    return Grid1D(256, 0.05)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def random_band_limited(grid, rng, kfrac=0.25, amplitude=1.0):
    """Random complex field supported only on |k| < kfrac * (pi/dx)."""
    n = grid.n_points
    spec = np.zeros(n, dtype=np.complex128)
    kmax = kfrac * np.pi / grid.dx
    mask = np.abs(grid.k_axis) < kmax
    spec[mask] = rng.normal(size=mask.sum()) + 1j * rng.normal(size=mask.sum())
    return amplitude * np.fft.ifft(spec) * np.sqrt(n)
