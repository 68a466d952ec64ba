"""Position-space evolution of the walker on Z^2."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coins import WalkOperators, uniform_stream

NORM_TOL = 1e-9


class StateError(ValueError):
    """Invalid initial state or lattice state."""


@dataclass(frozen=True)
class Qubit4:
    """Initial chirality state alpha|L> + beta|R> + gamma|D> + lam|U>."""

    alpha: complex
    beta: complex
    gamma: complex
    lam: complex

    def __post_init__(self):
        norm = sum(abs(complex(z)) ** 2 for z in self.as_array())
        if abs(norm - 1) > NORM_TOL:
            raise StateError(f"initial state must have unit norm, got |phi|^2 = {norm:.17g}")

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma, self.lam], dtype=np.complex128)

    @classmethod
    def from_reals(cls, values) -> "Qubit4":
        """From 8 reals ``re0, im0, re1, im1, ...``."""
        vals = [float(v) for v in values]
        if len(vals) != 8:
            raise StateError(f"initial state needs 8 reals (4 re/im pairs), got {len(vals)}")
        return cls(*(complex(vals[2 * i], vals[2 * i + 1]) for i in range(4)))


def as_qubit(phi) -> Qubit4:
    if isinstance(phi, Qubit4):
        return phi
    return Qubit4(*phi)


@dataclass(frozen=True, eq=False)
class LatticeState:
    """Amplitudes Psi_n(x, y) stored densely as ``amps[x + n, y + n, chirality]``."""

    time: int
    amps: np.ndarray

    def __post_init__(self):
        side = 2 * self.time + 1
        if self.amps.shape != (side, side, 4):
            raise StateError(f"amplitude array must be {(side, side, 4)}, got {self.amps.shape}")

    @property
    def radius(self) -> int:
        return self.time

    def amplitude(self, x: int, y: int) -> np.ndarray:
        n = self.time
        if abs(x) > n or abs(y) > n:
            return np.zeros(4, dtype=np.complex128)
        return self.amps[x + n, y + n].copy()

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def items(self):
        """Yield ``((x, y), amplitude)`` for every site with a nonzero amplitude, sorted."""
        n = self.time
        nz = np.argwhere(np.any(self.amps != 0, axis=2))
        for i, j in nz:
            yield (int(i) - n, int(j) - n), self.amps[i, j].copy()

    def padded(self, time: int) -> np.ndarray:
        """Amplitudes embedded in the larger box of a later time."""
        if time < self.time:
            raise ValueError("cannot shrink a lattice state")
        pad = time - self.time
        return np.pad(self.amps, ((pad, pad), (pad, pad), (0, 0)))


@dataclass(frozen=True)
class Distribution:
    time: int
    probs: dict = field(default_factory=dict)

    def total(self) -> float:
        return float(sum(self.probs.values()))

    def get(self, x: int, y: int) -> float:
        return self.probs.get((x, y), 0.0)


def init_state(phi) -> LatticeState:
    q = as_qubit(phi)
    return LatticeState(0, q.as_array().reshape(1, 1, 4))


def step(state: LatticeState, ops: WalkOperators) -> LatticeState:
    """One step of Psi(x,y) <- Q Psi(x-1,y) + P Psi(x+1,y) + S Psi(x,y-1) + R Psi(x,y+1)."""
    n = state.time
    old = state.padded(n + 1)
    new = np.zeros_like(old)
    new[1:, :] += old[:-1, :] @ ops.qR.T
    new[:-1, :] += old[1:, :] @ ops.pL.T
    new[:, 1:] += old[:, :-1] @ ops.sU.T
    new[:, :-1] += old[:, 1:] @ ops.rD.T
    return LatticeState(n + 1, new)


def evolve(state: LatticeState, ops: WalkOperators, n: int) -> LatticeState:
    if n < 0:
        raise ValueError(f"number of steps must be non-negative, got {n}")
    for _ in range(n):
        state = step(state, ops)
    return state


def distribution(state: LatticeState) -> Distribution:
    """P(X_n = x, Y_n = y); sites with exactly zero amplitude are omitted."""
    n = state.time
    p = np.sum(np.abs(state.amps) ** 2, axis=2)
    probs = {}
    for i, j in np.argwhere(p > 0):
        probs[(int(i) - n, int(j) - n)] = float(p[i, j])
    return Distribution(n, probs)


def moments(dist: Distribution, kx: int, ky: int) -> float:
    if kx < 0 or ky < 0:
        raise ValueError("moment orders must be non-negative")
    return float(sum((x**kx) * (y**ky) * p for (x, y), p in dist.probs.items()))


def max_amplitude_difference(a: LatticeState, b: LatticeState) -> float:
    t = max(a.time, b.time)
    return float(np.max(np.abs(a.padded(t) - b.padded(t))))


def distribution_difference(a: Distribution, b: Distribution) -> float:
    keys = set(a.probs) | set(b.probs)
    return max((abs(a.get(*k) - b.get(*k)) for k in keys), default=0.0)


def qubit_symmetric() -> Qubit4:
    """(1/2, i/2, i/2, -1/2)."""
    return Qubit4(0.5, 0.5j, 0.5j, -0.5)


def qubit_random(seed: int) -> Qubit4:
    """Normalised state from 8 SplitMix64 draws mapped to [-1, 1)."""
    draws = uniform_stream(seed)
    vals = [2 * next(draws) - 1 for _ in range(8)]
    z = np.array([complex(vals[2 * i], vals[2 * i + 1]) for i in range(4)])
    z = z / np.linalg.norm(z)
    return Qubit4(*(complex(v) for v in z))
