"""Test functions f: Z^2 -> C used as witnesses for the identities.

Every ``eval`` is vectorised: it accepts integer scalars or broadcastable
integer arrays and returns complex values of the broadcast shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class LatticeFunction:
    name: str
    eval: Callable

    def __call__(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = np.asarray(self.eval(x, y), dtype=np.complex128)
        return np.broadcast_to(out, np.broadcast_shapes(x.shape, y.shape))


# Frequencies for the plane-wave witnesses, with the labels used in their names.
PLANE_WAVE_FREQS = (("0", 0.0), ("pi/5", math.pi / 5), ("pi/3", math.pi / 3), ("2", 2.0))


def plane_wave(xi: float, eta: float, name: str | None = None) -> LatticeFunction:
    """exp(i xi x + i eta y)."""
    name = name or f"exp_{xi!r}_{eta!r}"
    return LatticeFunction(name, lambda x, y: np.exp(1j * (xi * x + eta * y)))


def abs_first() -> LatticeFunction:
    return LatticeFunction("abs_x", lambda x, y: np.abs(x) + 0 * y)


def abs_second() -> LatticeFunction:
    return LatticeFunction("abs_y", lambda x, y: 0 * x + np.abs(y))


def function_registry() -> list[LatticeFunction]:
    """The fixed witness family: 10 polynomial/absolute-value entries and 16 plane waves."""
    fs = [
        LatticeFunction("x", lambda x, y: x + 0 * y),
        LatticeFunction("y", lambda x, y: 0 * x + y),
        LatticeFunction("x_plus_y", lambda x, y: x + y),
        LatticeFunction("x_sq", lambda x, y: x * x + 0 * y),
        LatticeFunction("y_sq", lambda x, y: 0 * x + y * y),
        LatticeFunction("xy", lambda x, y: x * y),
        abs_first(),
        abs_second(),
        LatticeFunction("abs_x_plus_abs_y", lambda x, y: np.abs(x) + np.abs(y)),
    ]
    for xl, xi in PLANE_WAVE_FREQS:
        for el, eta in PLANE_WAVE_FREQS:
            fs.append(plane_wave(xi, eta, f"exp_{xl}_{el}"))
    fs.append(LatticeFunction("one", lambda x, y: np.ones(np.broadcast_shapes(np.shape(x), np.shape(y)))))
    return fs


def registry_by_name() -> dict[str, LatticeFunction]:
    return {f.name: f for f in function_registry()}


def get_function(name: str) -> LatticeFunction:
    reg = registry_by_name()
    try:
        return reg[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; registry: {', '.join(reg)}") from None
