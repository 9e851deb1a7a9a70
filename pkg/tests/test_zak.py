"""Zak transform: unitarity, quasi-periodicity, tightness symbol."""

import numpy as np
import pytest

from gaborlab import (
    Lattice,
    SampleGrid,
    Signal,
    WindowSpec,
    canonical_tight,
    frame_bounds,
    sample_window,
    translate,
    zak,
    zak_tightness,
)

from conftest import random_signal


def test_unitarity(grid, rng):
    f = random_signal(grid, rng)
    for K in (8, 64, 256):
        Z = zak(f, K)
        assert abs(Z.energy() - f.norm**2) < 1e-12 * f.norm**2


def test_invalid_factor(grid, rng):
    with pytest.raises(ValueError):
        zak(random_signal(grid, rng), 30)


def test_delta_row_flat_modulus(grid):
    v = np.zeros(grid.L)
    v[0] = 1.0
    Z = zak(Signal(grid, v), 64).values
    assert np.ptp(np.abs(Z[0, :])) == 0.0
    assert np.max(np.abs(Z[1:, :])) == 0.0


def test_quasi_periodicity(grid, rng):
    # translating by K samples multiplies Zak row n by e^{2 pi i k / M}
    K = 64
    f = random_signal(grid, rng)
    Z = zak(f, K)
    Zs = zak(translate(f, K * grid.delta), K)
    phase = np.exp(2j * np.pi * np.arange(Z.M) / Z.M)
    assert np.max(np.abs(Zs.values - phase[None, :] * Z.values)) < 1e-12


def test_tightness_symbol_equals_spectrum(grid, gaussian):
    # the symbol's extremes are exactly the frame bounds of the (1, 1/2) system
    lat = Lattice(32, 16, grid)
    rep = frame_bounds(gaussian, lat)
    sym = zak_tightness(gaussian)
    assert sym.symbol_min == pytest.approx(rep.A, rel=1e-10)
    assert sym.symbol_max == pytest.approx(rep.B, rel=1e-10)
    assert not sym.is_tight
    assert sym.flatness > 0.01


def test_tight_window_is_flat(grid, gaussian):
    gt = canonical_tight(gaussian, Lattice(32, 16, grid))
    sym = zak_tightness(gt)
    assert sym.flatness < 1e-8
    assert sym.is_tight


def test_indicator_symbol_constant(grid):
    g = sample_window(WindowSpec("indicator", 1.0), grid)
    sym = zak_tightness(g)
    assert sym.symbol_min == pytest.approx(2.0, abs=1e-12)
    assert sym.symbol_max == pytest.approx(2.0, abs=1e-12)


def test_scaling_homogeneity(grid, gaussian):
    sym = zak_tightness(gaussian)
    sym2 = zak_tightness(Signal(grid, 2.0 * gaussian.values))
    assert sym2.symbol_min == pytest.approx(4 * sym.symbol_min, rel=1e-12)
    assert sym2.symbol_max == pytest.approx(4 * sym.symbol_max, rel=1e-12)
    assert sym2.flatness == pytest.approx(sym.flatness, rel=1e-9)


def test_unrepresentable_lattice():
    grid = SampleGrid(100, 1 / 10)  # T = 10, T/2 = 5: a = 10 fine, b = 5 divides 100
    g = Signal(grid, np.exp(-np.pi * grid.x() ** 2))
    zak_tightness(g)  # representable
    bad = SampleGrid(64, 0.1)  # 1/delta = 10 but T/2 = 3.2 not integral
    with pytest.raises(ValueError):
        zak_tightness(Signal(bad, np.zeros(64)))
