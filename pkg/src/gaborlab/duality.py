"""Compactly supported dual windows via the finite slice systems.

Everything here works on the real line (no periodization): windows are
piecewise-evaluable or finely sampled compact signals, and duality is tested
through the bi-infinite sum condition

    sum_k conj(g(x - n/beta - k alpha)) h(x - k alpha) = beta * delta_{n,0}

restricted to the finitely many rows n where supports overlap.  For B-spline
windows the dual supported in [-(2m-1) alpha/2, (2m-1) alpha/2] is obtained
by solving a (2m-1) x (2m-1) linear system per point of a fine grid in
[-alpha/2, alpha/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .windows import WindowSpec, bspline_support, bspline_values, support_interval, window_values

__all__ = [
    "CompactSignal",
    "RegionLabel",
    "SingularSliceError",
    "BeyondProvenRegionsError",
    "compact_window",
    "janssen_residual",
    "required_slice_order",
    "bspline_compact_dual",
    "classify_point_g2",
    "region_expects_frame",
]


class SingularSliceError(ValueError):
    """Some slice matrix G_m(x) is numerically singular."""


class BeyondProvenRegionsError(ValueError):
    """The support rule needs m > 3, outside the proven subregions."""


@dataclass(frozen=True)
class CompactSignal:
    """Samples of a compactly supported function on a fine uniform grid.

    ``samples[i]`` sits at x = x_lo + i * step; the function is zero outside
    [x_lo, x_hi].  ``evaluator`` (optional) evaluates the underlying closed
    form at arbitrary points; solver outputs carry samples only.
    """

    x_lo: float
    x_hi: float
    step: float
    samples: np.ndarray = field(repr=False)
    provenance: str = ""
    evaluator: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        if not (self.x_lo < self.x_hi):
            raise ValueError("x_lo must be below x_hi")
        s = np.asarray(self.samples)
        s = s.copy()
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)

    def positions(self) -> np.ndarray:
        return self.x_lo + self.step * np.arange(len(self.samples))

    def eval_at(self, x: np.ndarray) -> np.ndarray:
        """Evaluate at arbitrary points: closed form if available, else
        exact sample lookup (points must sit on the sample grid)."""
        x = np.asarray(x, dtype=float)
        if self.evaluator is not None:
            out = np.asarray(self.evaluator(x), dtype=self.samples.dtype)
            out = np.where((x >= self.x_lo) & (x <= self.x_hi), out, 0.0)
            return out
        pos = (x - self.x_lo) / self.step
        idx = np.rint(pos).astype(int)
        off_grid = np.abs(pos - idx) > 1e-8
        if np.any(off_grid & (x >= self.x_lo) & (x < self.x_hi)):
            raise ValueError(
                "sample-only compact signal evaluated off its grid; "
                "supply an evaluator or align the query points"
            )
        inside = (idx >= 0) & (idx < len(self.samples))
        out = np.zeros_like(x, dtype=self.samples.dtype)
        out[inside] = self.samples[idx[inside]]
        return out


def compact_window(spec: WindowSpec, step: float = 1.0 / 256.0) -> CompactSignal:
    """Compact window family as a CompactSignal with exact evaluator."""
    supp = support_interval(spec)
    if supp is None:
        raise ValueError(f"{spec.label()} is not compactly supported")
    lo, hi = supp
    n = int(round((hi - lo) / step))
    x = lo + step * np.arange(n)
    return CompactSignal(
        x_lo=lo,
        x_hi=hi,
        step=step,
        samples=window_values(spec, x),
        provenance=spec.label(),
        evaluator=lambda t: window_values(spec, t),
    )


def _fold_grid(h: CompactSignal, alpha: float, n_x: int) -> np.ndarray:
    """X grid in [0, alpha) aligned with h's samples when possible."""
    if h.evaluator is not None:
        return alpha * (np.arange(n_x) + 0.5) / n_x
    # residues of h's sample positions modulo alpha (uniform by construction)
    offs = math.fmod(h.x_lo, alpha)
    if offs < 0:
        offs += alpha
    n = int(round(alpha / h.step))
    base = offs + h.step * np.arange(n)
    return np.sort(np.mod(base, alpha))


def janssen_residual(
    g: CompactSignal,
    h: CompactSignal,
    alpha: float,
    beta: float,
    n_x: int | None = None,
) -> float:
    """Max deviation of the duality sum from beta * delta_{n,0}.

    The maximum runs over all rows n where the supports can overlap and over
    a fine x grid in [0, alpha) (h's own sample residues when h has no
    closed-form evaluator, so all lookups are exact).
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    if g.evaluator is None:
        raise ValueError("g must carry an evaluator (window closed form)")
    x = _fold_grid(h, alpha, n_x or 1024)
    k_lo = int(math.floor((x.min() - h.x_hi) / alpha)) - 1
    k_hi = int(math.ceil((x.max() - h.x_lo) / alpha)) + 1
    shift_lo = h.x_lo - g.x_hi
    shift_hi = h.x_hi - g.x_lo
    n_lo = int(math.floor(beta * shift_lo)) - 1
    n_hi = int(math.ceil(beta * shift_hi)) + 1
    worst = 0.0
    for n in range(n_lo, n_hi + 1):
        acc = np.zeros_like(x, dtype=complex)
        for k in range(k_lo, k_hi + 1):
            hv = h.eval_at(x - k * alpha)
            if not np.any(hv):
                continue
            gv = g.eval_at(x - n / beta - k * alpha)
            acc += np.conj(gv) * hv
        target = beta if n == 0 else 0.0
        worst = max(worst, float(np.max(np.abs(acc - target))))
    return worst


def required_slice_order(N: int, alpha: float, beta: float) -> int:
    """Smallest m so the truncated (2m-1)-row system captures every active row.

    Rows |n| >= m vanish automatically exactly when
    m / beta >= N/2 + (2m-1) alpha / 2, i.e. m >= beta (N - alpha) / (2 (1 - alpha beta)).
    """
    if not (0 < alpha * beta < 1):
        raise ValueError("need 0 < alpha*beta < 1")
    val = beta * (N - alpha) / (2.0 * (1.0 - alpha * beta))
    return max(1, int(math.ceil(val - 1e-12)))


def bspline_compact_dual(
    N: int,
    alpha: float,
    beta: float,
    m: int | str = "auto",
    n_x: int = 1024,
    cond_limit: float = 1e10,
) -> CompactSignal:
    """Compactly supported dual of the order-N B-spline at (alpha, beta).

    For each x on a fine grid in [-alpha/2, alpha/2) the (2m-1) x (2m-1)
    matrix with entries g_N(x + k alpha - l / beta) is solved against
    beta * e_0, yielding the stacked dual values h(x + k alpha).  With
    m = "auto" the support-counting rule picks m; values above 3 are
    rejected as beyond the proven subregions.  Explicit m below the support
    rule is rejected because the omitted rows would break duality.
    """
    if N < 2:
        raise ValueError("need N >= 2 (the order-1 spline has its trivial dual)")
    if not (0 < alpha * beta < 1):
        raise ValueError(f"need 0 < alpha*beta < 1, got {alpha * beta:g}")
    m_req = required_slice_order(N, alpha, beta)
    if m == "auto":
        if m_req > 3:
            raise BeyondProvenRegionsError(
                f"support rule needs m={m_req} > 3 at (alpha, beta)=({alpha:g}, {beta:g}); "
                "only m <= 3 slice systems are solved"
            )
        m_use = m_req
    else:
        m_use = int(m)
        if m_use < m_req:
            raise ValueError(
                f"m={m_use} omits active duality rows (support rule needs m >= {m_req})"
            )
    q = 2 * m_use - 1
    x = -alpha / 2.0 + alpha * np.arange(n_x) / n_x
    offs = np.arange(1 - m_use, m_use)  # shared by rows l and columns k
    # G[i, l, k] = g_N(x_i + k alpha - l / beta)
    args = x[:, None, None] + offs[None, None, :] * alpha - offs[None, :, None] / beta
    G = bspline_values(N, args.reshape(-1)).reshape(n_x, q, q)
    conds = np.linalg.cond(G)
    bad = np.where(~(conds < cond_limit))[0]
    if bad.size:
        i = int(bad[0])
        raise SingularSliceError(
            f"slice matrix at x={x[i]:.6g} is singular or ill-conditioned "
            f"(cond={conds[i]:.3g}) for m={m_use}"
        )
    rhs = np.zeros(q)
    rhs[m_use - 1] = beta
    H = np.linalg.solve(G, np.broadcast_to(rhs, (n_x, q))[..., None])[..., 0]
    # h(x_i + k alpha) = H[i, k]; columns k concatenate into one fine grid
    samples = H.T.reshape(-1)
    x_lo = -q * alpha / 2.0
    return CompactSignal(
        x_lo=x_lo,
        x_hi=q * alpha / 2.0,
        step=alpha / n_x,
        samples=samples,
        provenance=f"dual of bspline:{N} at alpha={alpha:g} beta={beta:g} (m={m_use})",
    )


class RegionLabel(str, Enum):
    """Known frame-set regions for the order-2 B-spline window."""

    NOT_FRAME_DENSITY = "not_frame_density"
    NOT_FRAME_RED_LINE = "not_frame_red_line"
    PAINLESS = "painless"
    REGION_B = "region_b"
    REGION_C = "region_c"
    REGION_D = "region_d"
    REGION_E = "region_e"
    REGION_F = "region_f"
    REGION_G = "region_g"
    UNKNOWN = "unknown"


def classify_point_g2(alpha: float, beta: float) -> RegionLabel:
    """Classify (alpha, beta) against the known g_2 frame-set regions.

    Order: integer-beta obstruction lines first, then the necessary density
    conditions, then the known frame regions by their inequality ranges;
    points matching none are labeled unknown.  The obstruction-line
    test accepts alpha * beta = 1 (both labels mean "not a frame" there).
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    near_int = abs(beta - round(beta)) < 1e-9 and round(beta) >= 2
    if near_int and alpha * beta <= 1.0 + 1e-12 and alpha < 2.0:
        return RegionLabel.NOT_FRAME_RED_LINE
    if alpha * beta >= 1.0 or alpha >= 2.0:
        return RegionLabel.NOT_FRAME_DENSITY
    if 1.0 <= alpha < 2.0 and beta < 1.0 / alpha:
        return RegionLabel.REGION_B
    if beta <= 0.5:
        return RegionLabel.PAINLESS
    if beta <= 2.0 / (2.0 + alpha):
        return RegionLabel.REGION_C
    if beta <= 4.0 / (2.0 + 3.0 * alpha):
        return RegionLabel.REGION_D
    if alpha < 0.5 and beta <= 2.0 / (1.0 + alpha):
        return RegionLabel.REGION_E
    if 0.5 <= alpha <= 0.8 and beta <= 6.0 / (2.0 + 5.0 * alpha) and beta > 1.0:
        return RegionLabel.REGION_F
    if 2.0 / 3.0 <= alpha <= 1.0 and beta < 1.0:
        return RegionLabel.REGION_G
    return RegionLabel.UNKNOWN


_FRAME_REGIONS = {
    RegionLabel.PAINLESS,
    RegionLabel.REGION_B,
    RegionLabel.REGION_C,
    RegionLabel.REGION_D,
    RegionLabel.REGION_E,
    RegionLabel.REGION_F,
    RegionLabel.REGION_G,
}


def region_expects_frame(label: RegionLabel) -> bool | None:
    """True/False when the label decides frame membership, None for unknown."""
    if label in _FRAME_REGIONS:
        return True
    if label in (RegionLabel.NOT_FRAME_DENSITY, RegionLabel.NOT_FRAME_RED_LINE):
        return False
    return None
