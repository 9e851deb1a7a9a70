"""Discrete Zak transform and the Zak-domain tightness criterion.

zak(f, K) computes Z[n, k] = sum_m f[(n + m K) mod L] e^{2 pi i m k / M}
with M = L/K, a unitary map (up to the stated weight) from C^L onto the
K x M Zak grid.  A half-critical lattice (time step 1/delta samples,
frequency step T/2 bins) has a frame operator that is pointwise
multiplication in the Zak domain; its symbol combines |Zg|^2 with the
half-quasiperiod shift in the FIRST (time) slot.  Flatness of the symbol is
equivalent to tightness and the flat value is the frame bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Signal
from .lattices import Lattice

__all__ = ["ZakMatrix", "zak", "ZakTightnessReport", "zak_tightness"]


@dataclass(frozen=True)
class ZakMatrix:
    """Zak coefficients Z[n, k], n = 0..K-1, k = 0..M-1, with L = K * M."""

    values: np.ndarray = field(repr=False)
    K: int
    grid_delta: float

    @property
    def M(self) -> int:
        return self.values.shape[1]

    def energy(self) -> float:
        """(1/M) sum |Z|^2 * delta; equals ||f||^2 (unitarity)."""
        return float(self.grid_delta / self.M * np.sum(np.abs(self.values) ** 2))


def zak(f: Signal, K: int) -> ZakMatrix:
    """Discrete Zak transform with time factor K (K must divide L)."""
    L = f.grid.L
    if not (1 <= K <= L and L % K == 0):
        raise ValueError(f"K={K} must divide L={L}")
    M = L // K
    arr = f.values.reshape(M, K)  # arr[m, n] = f[n + m K]
    Z = (M * np.fft.ifft(arr, axis=0)).T  # Z[n, k]
    return ZakMatrix(values=Z, K=K, grid_delta=f.grid.delta)


@dataclass(frozen=True)
class ZakTightnessReport:
    """Symbol statistics of the half-critical frame operator."""

    symbol_min: float
    symbol_max: float
    K: int

    @property
    def flatness(self) -> float:
        """max/min - 1; zero for exactly tight systems."""
        if self.symbol_min <= 0:
            return np.inf
        return self.symbol_max / self.symbol_min - 1.0

    @property
    def is_tight(self) -> bool:
        return self.flatness < 1e-8


def zak_tightness(g: Signal) -> ZakTightnessReport:
    """Tightness test for the (alpha, beta) = (1, 1/2) lattice via the Zak symbol.

    Requires a = 1/delta to be an integer dividing L and b = T/2 to be an
    integer dividing L.  The frame operator of that lattice acts in the
    K = L/b Zak domain as multiplication by

        m(n, k) = delta * (L/b) * (|Zg[n,k]|^2 + |Zg[(n - a) mod K, k]|^2),

    so the system is tight exactly when m is flat, with frame bound m.
    """
    grid = g.grid
    a_f = 1.0 / grid.delta
    b_f = grid.T / 2.0
    if abs(a_f - round(a_f)) > 1e-9 or abs(b_f - round(b_f)) > 1e-9:
        raise ValueError(
            f"lattice (1, 1/2) is not representable: needs 1/delta and T/2 "
            f"integral, got {a_f} and {b_f}"
        )
    a, b = int(round(a_f)), int(round(b_f))
    L = grid.L
    if L % a != 0 or L % b != 0:
        raise ValueError("lattice (1, 1/2) steps do not divide L")
    K = L // b  # equals 2 a
    Z = zak(g, K).values
    mag2 = np.abs(Z) ** 2
    symbol = grid.delta * (L // b) * (mag2 + np.roll(mag2, a, axis=0))
    return ZakTightnessReport(
        symbol_min=float(symbol.min()), symbol_max=float(symbol.max()), K=K
    )
