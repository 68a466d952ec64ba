"""Momentum-space evolution on a uniform (xi, eta) grid.

Sample ``(j, l)`` sits at ``xi_j = -pi + 2 pi j / M``, ``eta_l = -pi + 2 pi l / M``.
For a state at time n the transform is a trigonometric polynomial of degree
at most n in each variable, so the M-point sums are exact once M >= 2n + 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coins import Coin, build_walk_operators, coin_squared
from .linalg import mat_power
from .position import LatticeState, step


class GridError(ValueError):
    pass


def grid_points(M: int) -> np.ndarray:
    return -np.pi + 2 * np.pi * np.arange(M) / M


def default_grid_size(n: int) -> int:
    return 2 * n + 2


def build_u_kxi(coin: Coin, xi, eta) -> np.ndarray:
    """U(xi, eta) = e^{-i xi} P + e^{i xi} Q + e^{-i eta} R + e^{i eta} S.

    ``xi`` and ``eta`` may be arrays of equal shape; the result then has shape
    ``xi.shape + (4, 4)``.
    """
    ops = build_walk_operators(coin)
    xi = np.asarray(xi, dtype=float)[..., None, None]
    eta = np.asarray(eta, dtype=float)[..., None, None]
    return (
        np.exp(-1j * xi) * ops.pL
        + np.exp(1j * xi) * ops.qR
        + np.exp(-1j * eta) * ops.rD
        + np.exp(1j * eta) * ops.sU
    )


def build_u_kxi_diag(coin: Coin, xi: float, eta: float) -> np.ndarray:
    """Same matrix via Diag(e^{-i xi}, e^{i xi}, e^{-i eta}, e^{i eta}) . (U (x) U)."""
    phases = np.exp(1j * np.array([-xi, xi, -eta, eta]))
    return phases[:, None] * coin_squared(coin)


@dataclass(frozen=True, eq=False)
class FourierGrid:
    size: int
    time: int
    samples: np.ndarray  # (M, M, 4)

    @property
    def xi(self) -> np.ndarray:
        return grid_points(self.size)

    @property
    def eta(self) -> np.ndarray:
        return grid_points(self.size)

    def parseval_norm(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) / self.size**2)

    def rows(self):
        """Debug dump rows ``{j, l, xi, eta, re, im}``."""
        pts = grid_points(self.size)
        for j in range(self.size):
            for l in range(self.size):
                v = self.samples[j, l]
                yield {
                    "j": j,
                    "l": l,
                    "xi": float(pts[j]),
                    "eta": float(pts[l]),
                    "re": [float(z) for z in v.real],
                    "im": [float(z) for z in v.imag],
                }


def _phase_matrix(M: int, n: int, sign: int) -> np.ndarray:
    """``E[j, x + n] = exp(sign * i * theta_j * x)`` for x in [-n, n]."""
    xs = np.arange(-n, n + 1)
    return np.exp(sign * 1j * np.outer(grid_points(M), xs))


def transform(state: LatticeState, M: int) -> FourierGrid:
    n = state.time
    if M < 2 * n + 1:
        raise GridError(f"grid under-resolves support: M={M} < 2n+1={2 * n + 1}")
    E = _phase_matrix(M, n, +1)
    samples = np.einsum("jx,xyc,ly->jlc", E, state.amps, E, optimize=True)
    return FourierGrid(M, n, samples)


def evolve_fourier(grid: FourierGrid, coin: Coin, steps: int) -> FourierGrid:
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    if steps == 0:
        return grid
    pts = grid_points(grid.size)
    XI, ETA = np.meshgrid(pts, pts, indexing="ij")
    U = mat_power(build_u_kxi(coin, XI, ETA), steps)
    samples = np.einsum("jlab,jlb->jla", U, grid.samples)
    return FourierGrid(grid.size, grid.time + steps, samples)


def invert(grid: FourierGrid) -> LatticeState:
    n, M = grid.time, grid.size
    if M < 2 * n + 1:
        raise GridError(f"grid under-resolves support: M={M} < 2n+1={2 * n + 1}")
    E = _phase_matrix(M, n, -1)
    amps = np.einsum("jx,jlc,ly->xyc", E, grid.samples, E, optimize=True) / M**2
    return LatticeState(n, amps)


def lemma1_residual(state: LatticeState, coin: Coin, M: int) -> float:
    """max |transform(step(s)) - U(xi, eta) transform(s)| over the grid."""
    after = transform(step(state, build_walk_operators(coin)), M)
    before = transform(state, M)
    predicted = evolve_fourier(before, coin, 1)
    return float(np.max(np.abs(after.samples - predicted.samples)))
