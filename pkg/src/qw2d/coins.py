"""Coins in U(2) and the four shift-coin operators of the square-lattice walk.

A coin is parametrised by ``(a, b, delta)``; the second row is derived as
``c = -delta * conj(b)`` and ``d = delta * conj(a)`` so the unitarity
constraints hold by construction.

Chirality basis order is (L, R, D, U). The 4x4 operators are tensor products
of the 1D factors ``p1 = [[a, b], [0, 0]]`` and ``q1 = [[0, 0], [c, d]]``::

    P(-1,0) = p1 (x) p1      Q(1,0) = p1 (x) q1
    R(0,-1) = q1 (x) p1      S(0,1)  = q1 (x) q1

Seeded coins
------------
``coin_random(seed)`` draws four doubles from a SplitMix64 stream started at
``seed mod 2**64``. Each 64-bit output ``z`` becomes ``(z >> 11) * 2**-53``
in [0, 1). With draws ``u0..u3``::

    theta = u0 * pi / 2,  phi1 = 2 pi u1,  phi2 = 2 pi u2,  delta = 2 pi u3
    a = cos(theta) e^{i phi1},  b = sin(theta) e^{i phi2},  Delta = e^{i delta}

The recipe is fixed so other implementations can regenerate the same coins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import tensor_product

COIN_TOL = 1e-12
INPUT_TOL = 1e-9

_MASK64 = (1 << 64) - 1


class CoinError(ValueError):
    """A coin or weight set violates its defining constraints."""


@dataclass(frozen=True)
class Coin:
    a: complex
    b: complex
    c: complex
    d: complex
    delta: complex
    label: str = "custom"

    def __post_init__(self):
        a, b, c, d, delta = self.a, self.b, self.c, self.d, self.delta
        checks = {
            "|a|^2+|b|^2=1": abs(abs(a) ** 2 + abs(b) ** 2 - 1),
            "|c|^2+|d|^2=1": abs(abs(c) ** 2 + abs(d) ** 2 - 1),
            "a*conj(c)+b*conj(d)=0": abs(a * c.conjugate() + b * d.conjugate()),
            "c=-delta*conj(b)": abs(c + delta * b.conjugate()),
            "d=delta*conj(a)": abs(d - delta * a.conjugate()),
            "|delta|=1": abs(abs(delta) - 1),
        }
        for name, err in checks.items():
            if err > COIN_TOL:
                raise CoinError(f"coin violates {name} (error {err:.3g})")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    @property
    def p1(self) -> np.ndarray:
        return np.array([[self.a, self.b], [0, 0]], dtype=np.complex128)

    @property
    def q1(self) -> np.ndarray:
        return np.array([[0, 0], [self.c, self.d]], dtype=np.complex128)

    def to_json(self) -> dict:
        return {
            "a": [self.a.real, self.a.imag],
            "b": [self.b.real, self.b.imag],
            "delta": [self.delta.real, self.delta.imag],
        }


def make_coin(a: complex, b: complex, delta: complex, label: str = "custom") -> Coin:
    """Build a coin from its first row and determinant.

    Inputs within 1e-9 of the constraint surface are accepted and projected
    onto it, so the stored coin satisfies the invariants to 1e-12.
    """
    a, b, delta = complex(a), complex(b), complex(delta)
    norm_err = abs(abs(a) ** 2 + abs(b) ** 2 - 1)
    if norm_err > INPUT_TOL:
        raise CoinError(f"|a|^2+|b|^2 must equal 1 (off by {norm_err:.3g})")
    det_err = abs(abs(delta) - 1)
    if det_err > INPUT_TOL:
        raise CoinError(f"|delta| must equal 1 (off by {det_err:.3g})")
    if norm_err > COIN_TOL:
        scale = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
        a, b = a / scale, b / scale
    if det_err > COIN_TOL:
        delta = delta / abs(delta)
    c = -delta * b.conjugate()
    d = delta * a.conjugate()
    return Coin(a, b, c, d, delta, label)


def coin_hadamard() -> Coin:
    s = 1 / math.sqrt(2)
    return make_coin(s, s, -1, label="hadamard")


def coin_identity() -> Coin:
    return make_coin(1, 0, 1, label="identity")


def splitmix64(seed: int):
    """Infinite SplitMix64 stream of unsigned 64-bit integers."""
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def uniform_stream(seed: int):
    for z in splitmix64(seed):
        yield (z >> 11) * 2.0**-53


def coin_random(seed: int) -> Coin:
    draws = uniform_stream(seed)
    theta = next(draws) * math.pi / 2
    phi1 = next(draws) * 2 * math.pi
    phi2 = next(draws) * 2 * math.pi
    dphase = next(draws) * 2 * math.pi
    a = math.cos(theta) * complex(math.cos(phi1), math.sin(phi1))
    b = math.sin(theta) * complex(math.cos(phi2), math.sin(phi2))
    delta = complex(math.cos(dphase), math.sin(dphase))
    return make_coin(a, b, delta, label=f"seed:{seed}")


@dataclass(frozen=True, eq=False)
class WalkOperators:
    p1: np.ndarray
    q1: np.ndarray
    pL: np.ndarray
    qR: np.ndarray
    rD: np.ndarray
    sU: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.pL + self.qR + self.rD + self.sU

    def as_tuple(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.pL, self.qR, self.rD, self.sU


def build_walk_operators(coin: Coin) -> WalkOperators:
    p1, q1 = coin.p1, coin.q1
    return WalkOperators(
        p1=p1,
        q1=q1,
        pL=tensor_product(p1, p1),
        qR=tensor_product(p1, q1),
        rD=tensor_product(q1, p1),
        sU=tensor_product(q1, q1),
    )


def coin_squared(coin: Coin) -> np.ndarray:
    """U (x) U."""
    return tensor_product(coin.matrix, coin.matrix)


@dataclass(frozen=True)
class ClassicalWeights:
    """Step probabilities of the classical walk replacing P, Q, R, S."""

    p: float
    q: float
    r: float
    s: float

    def __post_init__(self):
        vals = (self.p, self.q, self.r, self.s)
        if any(not (0.0 <= v <= 1.0) for v in vals):
            raise CoinError(f"weights must lie in [0, 1], got {vals}")
        if abs(sum(vals) - 1.0) > COIN_TOL:
            raise CoinError(f"weights must sum to 1, got {sum(vals)!r}")
