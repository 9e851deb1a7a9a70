"""Phase-space transform: oracle match, isometry, inversion, covariance."""

import numpy as np
import pytest

from gaborlab import (
    NearOrthogonalPairError,
    SampleGrid,
    Signal,
    WindowSpec,
    inner,
    sample_window,
    stft,
    stft_energy,
    stft_invert,
    tf_shift,
)

from conftest import random_signal

GRID = SampleGrid(256, 1 / 16)


@pytest.fixture(scope="module")
def g():
    return sample_window(WindowSpec("gaussian"), GRID).unit()


@pytest.fixture(scope="module")
def f(g):
    rng = np.random.default_rng(3)
    return random_signal(GRID, rng)


def test_values_match_direct_inner_products(f, g):
    # oracle: V[n, k] = <f, M_{xi_k} T_{x_n} g> via the shift operators
    V = stft(f, g)
    x, xi = GRID.x(), GRID.xi()
    for n in (0, 17, 128, 255):
        for k in (0, 40, 128, 230):
            direct = inner(f, tf_shift(g, (x[n], xi[k])))
            assert V.values[n, k] == pytest.approx(direct, abs=1e-12)


def test_peak_is_window_energy(g):
    V = stft(g, g)
    assert V.values[GRID.origin, GRID.origin].real == pytest.approx(1.0, abs=1e-12)


def test_zero_signal(g):
    z = Signal(GRID, np.zeros(GRID.L))
    assert np.all(stft(z, g).values == 0.0)
    assert stft_energy(stft(z, g)) == 0.0


def test_gaussian_ambiguity_law():
    g0 = sample_window(WindowSpec("gaussian"), GRID)  # e^{-pi x^2}, norm 2^{-1/4}
    V = stft(g0, g0)
    X = GRID.x()[:, None]
    XI = GRID.xi()[None, :]
    ref = (1 / np.sqrt(2)) * np.exp(-np.pi * (X**2 + XI**2) / 2)
    assert np.max(np.abs(np.abs(V.values) - ref)) < 1e-8


def test_isometry(f, g):
    V = stft(f, g)
    assert abs(stft_energy(V) - f.norm**2) / f.norm**2 < 1e-6
    # direct double-sum oracle: cell area times |V|^2 summed entrywise
    total = V.cell_area * np.sum(np.abs(V.values) ** 2)
    assert total == pytest.approx(f.norm**2, rel=1e-10)


def test_isometry_default_grid(unit_gaussian):
    V = stft(unit_gaussian, unit_gaussian)
    assert abs(stft_energy(V) - 1.0) < 1e-8


def test_inversion_same_window(f, g):
    V = stft(f, g)
    rec = stft_invert(V, g, g)
    err = Signal(GRID, rec.values - f.values).norm / f.norm
    assert err < 1e-6


def test_inversion_sech_pair():
    grid = SampleGrid(2048, 1 / 32)
    g = sample_window(WindowSpec("gaussian"), grid).unit()
    h = sample_window(WindowSpec("sech"), grid)
    rng = np.random.default_rng(5)
    f = random_signal(grid, rng)
    rec = stft_invert(stft(f, g), g, h)
    assert Signal(grid, rec.values - f.values).norm / f.norm < 1e-5


def test_inversion_zero(g):
    z = Signal(GRID, np.zeros(GRID.L))
    rec = stft_invert(stft(z, g), g, g)
    assert rec.norm == 0.0


def test_near_orthogonal_pair_rejected(f, g):
    V = stft(f, g)
    odd = Signal(GRID, GRID.x() * g.values)  # odd function: <g, odd> = 0
    with pytest.raises(NearOrthogonalPairError):
        stft_invert(V, g, odd)


def test_covariance_on_lattice_points(f, g):
    # shifting f by a whole number of phase-space cells shifts |V| circularly
    n_shift, k_shift = 24, 40
    a = n_shift * GRID.delta
    b = k_shift / GRID.T
    V0 = stft(f, g)
    V1 = stft(tf_shift(f, (a, b)), g)
    rolled = np.roll(np.roll(np.abs(V0.values), n_shift, axis=0), k_shift, axis=1)
    assert np.max(np.abs(np.abs(V1.values) - rolled)) < 1e-8


def test_indicator_window_inversion_relaxed():
    # discontinuous windows reconstruct too (exact synthesis), looser contract
    grid = SampleGrid(256, 1 / 16)
    g = sample_window(WindowSpec("indicator", 1.0), grid).unit()
    rng = np.random.default_rng(9)
    f = random_signal(grid, rng)
    rec = stft_invert(stft(f, g), g, g)
    assert Signal(grid, rec.values - f.values).norm / f.norm < 1e-3
