"""Short-time Fourier transform over the full discrete phase space.

The phase-space grid is the full L x L torus: time shifts at every grid
point x_n and frequencies at every dual point xi_k.  With the cell weight
delta * (1/T) the discrete analysis map is exactly isometric and the
weak-sense inversion formula reconstructs exactly, so the continuum
identities hold at machine precision rather than discretization accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import GridMismatchError, SampleGrid, Signal, inner

__all__ = ["PhaseSpaceField", "stft", "stft_energy", "stft_invert", "NearOrthogonalPairError"]


class NearOrthogonalPairError(ValueError):
    """<g, h> is too small for the 1/<g,h> inversion weight."""


@dataclass(frozen=True)
class PhaseSpaceField:
    """STFT samples V[n, k] = <f, M_{xi_k} T_{x_n} g> on the L x L torus."""

    grid: SampleGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        L = self.grid.L
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (L, L):
            raise ValueError(f"values must be ({L}, {L}), got {v.shape}")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def cell_area(self) -> float:
        """Phase-space cell delta * (1/T) = 1/L."""
        return self.grid.delta / self.grid.T


def _rolled_window_matrix(g: np.ndarray) -> np.ndarray:
    """Matrix W[n, j] = g[(j - (n - L/2)) mod L], row n shifted to x_n."""
    L = g.shape[0]
    j0 = L // 2
    idx = (np.arange(L)[None, :] - (np.arange(L)[:, None] - j0)) % L
    return g[idx]


def _fourier_rows(U: np.ndarray, grid: SampleGrid) -> np.ndarray:
    """Apply the centered unitary DFT of core.fourier along each row."""
    L = grid.L
    j0 = grid.origin
    F = np.fft.fft(U, axis=1)
    sign = np.where((np.arange(L) - j0) % 2 == 0, 1.0, -1.0)
    return grid.delta * sign[None, :] * np.roll(F, j0, axis=1)


def _inverse_fourier_rows(V: np.ndarray, grid: SampleGrid) -> np.ndarray:
    """Rows -> sum_k V[n,k] exp(+2 pi i x_j xi_k), without any 1/T weight."""
    L = grid.L
    j0 = grid.origin
    sign_k = np.where(np.arange(L) % 2 == 0, 1.0, -1.0)
    u = np.fft.ifft(V * sign_k[None, :], axis=1)
    sign_j = np.where((np.arange(L) - j0) % 2 == 0, 1.0, -1.0)
    # core.inverse_fourier carries 1/T; here we return the bare sum, i.e. T x it
    return L * sign_j[None, :] * u


def stft(f: Signal, g: Signal) -> PhaseSpaceField:
    """Full phase-space STFT, one FFT per time shift (O(L^2 log L))."""
    if f.grid != g.grid:
        raise GridMismatchError("f and g must share a grid")
    U = f.values[None, :] * np.conj(_rolled_window_matrix(g.values))
    return PhaseSpaceField(f.grid, _fourier_rows(U, f.grid))


def stft_energy(V: PhaseSpaceField) -> float:
    """Double Riemann sum of |V|^2 with the phase-space cell weight.

    For a unit-norm window this equals ||f||^2 exactly (discrete isometry).
    """
    return float(V.cell_area * np.sum(np.abs(V.values) ** 2))


def stft_invert(V: PhaseSpaceField, g: Signal, h: Signal, min_overlap: float = 1e-10) -> Signal:
    """Weak-sense inversion: (1/<h,g>) * sum V[n,k] M_{xi_k} T_{x_n} h.

    Any h with <g, h> != 0 works; the synthesis weight is the conjugate
    pairing <h, g>, which makes the discrete reconstruction exact.  Pairs
    with |<g,h>| below ``min_overlap`` are rejected because the 1/<g,h>
    factor blows up.
    """
    if g.grid != V.grid or h.grid != V.grid:
        raise GridMismatchError("window grids must match the field grid")
    c = inner(h, g)
    if abs(c) < min_overlap:
        raise NearOrthogonalPairError(
            f"|<g,h>| = {abs(c):.3e} is below {min_overlap:g}; the 1/<g,h> "
            "weight in the inversion formula diverges for near-orthogonal pairs"
        )
    grid = V.grid
    L = grid.L
    j0 = grid.origin
    # A[n, j] = sum_k V[n,k] e^{2 pi i xi_k x_j}
    A = _inverse_fourier_rows(V.values, grid)
    # r[j] = sum_n A[n, j] h[(j - (n - j0)) mod L]: shifted diagonal of a
    # circular convolution along the n axis
    Ahat = np.fft.fft(A, axis=0)
    hhat = np.fft.fft(h.values)
    C = np.fft.ifft(Ahat * hhat[:, None], axis=0)
    cols = np.arange(L)
    r = C[(cols + j0) % L, cols]
    cell = grid.delta / grid.T
    return Signal(grid, (cell / c) * r)
