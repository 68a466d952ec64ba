"""Discrete Ito, Tanaka and Fourier-expansion identities on path pairs.

Conventions used throughout:

* A path pair (k, k') carries positions ``w(m, m') = (w1(m), w2(m'))``. An
  m-increment moves only the first coordinate, an m'-increment only the second.
* In ``f(w + 1)`` and ``f(w - 1)`` the unit step is taken along the active
  coordinate (the one whose index is being advanced).
* ``sgn(0) = 0``.

Single-pair checks evaluate the formulas with plain integers. The sweep
kernels (``local_terms``, ``telescoped_terms`` and friends) evaluate them on
every pair of a full enumeration at once, with arrays indexed
``[k, k', m, m']``.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .coins import ClassicalWeights, Coin, coin_squared
from .fourier import build_u_kxi
from .functions import LatticeFunction, plane_wave
from .linalg import mat_power, tensor_product
from .paths import (
    PathPair,
    all_increments,
    all_positions,
    all_weights_1d,
    check_pair_guard,
    pair_sum,
)
from .reports import (
    COUNTEREXAMPLE_TOL,
    OPERATOR_TOL,
    SCALAR_TOL,
    IdentityReport,
    residual_of,
)


class Axis(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"


def _unit(axis) -> tuple[int, int]:
    return (1, 0) if Axis(axis) is Axis.FIRST else (0, 1)


def ito_terms(f: LatticeFunction, x, y, increment, axis):
    """First- and second-difference terms of the one-step decomposition at (x, y)."""
    ex, ey = _unit(axis)
    up = f(x + ex, y + ey)
    down = f(x - ex, y - ey)
    drift = 0.5 * (up - down) * increment
    second = 0.5 * (up - 2 * f(x, y) + down)
    return drift, second


def _need_local(n: int, n2: int, m: int, m2: int) -> None:
    if not (0 <= m < n and 0 <= m2 < n2):
        raise ValueError(f"need 0 <= m < n and 0 <= m' < n' (got m={m}, m'={m2}, n={n}, n'={n2})")


# Scalar Ito identity: single pair ------------------------------------------


def check_prop2_local(f: LatticeFunction, pair: PathPair, m: int, m2: int, axis) -> IdentityReport:
    _need_local(pair.n, pair.n2, m, m2)
    axis = Axis(axis)
    x, y = pair.w(m, m2)
    if axis is Axis.FIRST:
        moved = (pair.first.w(m + 1), y)
        inc = moved[0] - x
    else:
        moved = (x, pair.second.w(m2 + 1))
        inc = moved[1] - y
    lhs = complex(f(*moved) - f(x, y))
    drift, second = ito_terms(f, x, y, inc, axis)
    rhs = complex(drift + second)
    return IdentityReport(
        "prop2-local",
        {"function": f.name, "n": pair.n, "n2": pair.n2, "k": pair.first.index,
         "k2": pair.second.index, "m": m, "m2": m2, "axis": axis.value},
        abs(lhs - rhs), SCALAR_TOL, lhs=lhs, rhs=rhs,
    )


def check_prop2_telescoped(f: LatticeFunction, pair: PathPair, axis) -> IdentityReport:
    axis = Axis(axis)
    n, n2 = pair.n, pair.n2
    end = pair.w(n, n2)
    rhs = 0j
    if axis is Axis.FIRST:
        lhs = complex(f(*end) - f(pair.first.w(0), end[1]))
        for m in range(n):
            drift, second = ito_terms(f, pair.first.w(m), end[1], pair.first.v(m + 1), axis)
            rhs += complex(drift + second)
    else:
        lhs = complex(f(*end) - f(end[0], pair.second.w(0)))
        for m2 in range(n2):
            drift, second = ito_terms(f, end[0], pair.second.w(m2), pair.second.v(m2 + 1), axis)
            rhs += complex(drift + second)
    return IdentityReport(
        "prop2-telescoped",
        {"function": f.name, "n": n, "n2": n2, "k": pair.first.index,
         "k2": pair.second.index, "axis": axis.value},
        abs(lhs - rhs), SCALAR_TOL, lhs=lhs, rhs=rhs,
    )


# Sweep kernels ----------------------------------------------------------------


def local_terms(f: LatticeFunction, n: int, n2: int, axis):
    """``(lhs, rhs)`` of the local identity, each shaped ``(2^n, 2^n', n, n')``."""
    axis = Axis(axis)
    P1 = all_positions(n)[:, None, :, None]
    P2 = all_positions(n2)[None, :, None, :]
    X, Y = P1[:, :, :n, :], P2[:, :, :, :n2]
    if axis is Axis.FIRST:
        nxt = P1[:, :, 1:, :]
        lhs = f(nxt, Y) - f(X, Y)
        inc = nxt - X
    else:
        nxt = P2[:, :, :, 1:]
        lhs = f(X, nxt) - f(X, Y)
        inc = nxt - Y
    drift, second = ito_terms(f, X, Y, inc, axis)
    shape = (1 << n, 1 << n2, n, n2)
    return np.broadcast_to(lhs, shape), np.broadcast_to(drift + second, shape)


def telescoped_terms(f: LatticeFunction, n: int, n2: int, axis):
    """``(lhs, rhs)`` of the telescoped identity, each shaped ``(2^n, 2^n')``.

    The active index runs over 0..n-1 while the other stays at its terminal value.
    """
    axis = Axis(axis)
    P1 = all_positions(n)[:, None, :]
    P2 = all_positions(n2)[None, :, :]
    x_end, y_end = P1[..., n], P2[..., n2]
    if axis is Axis.FIRST:
        lhs = f(x_end, y_end) - f(P1[..., 0], y_end)
        X, Y, inc = P1[..., :n], y_end[..., None], np.diff(P1, axis=-1)
    else:
        lhs = f(x_end, y_end) - f(x_end, P2[..., 0])
        X, Y, inc = x_end[..., None], P2[..., :n2], np.diff(P2, axis=-1)
    drift, second = ito_terms(f, X, Y, inc, axis)
    shape = (1 << n, 1 << n2)
    return np.broadcast_to(lhs, shape), np.broadcast_to(np.sum(drift + second, axis=-1), shape)


def _mm_first(a: np.ndarray) -> np.ndarray:
    """(K, K2, n, n2) -> (n, n2, K, K2)."""
    return np.moveaxis(a, (2, 3), (0, 1))


def prop2_residual(f: LatticeFunction, n: int, n2: int, axis, part: str) -> float:
    """Max scalar residual over every pair (and every valid (m, m') for part a)."""
    if part == "a":
        if n == 0 or n2 == 0:
            return 0.0
        lhs, rhs = local_terms(f, n, n2, axis)
    else:
        lhs, rhs = telescoped_terms(f, n, n2, axis)
    return float(np.max(np.abs(lhs - rhs), initial=0.0))


# Operator-weighted Ito identity -----------------------------------------------


def thm3_operators(f: LatticeFunction, coin: Coin, n: int, n2: int, axis, summed: bool):
    """Operator-weighted sums of both sides.

    Part a returns stacks shaped ``(n, n', 4, 4)`` indexed by (m, m'); part b
    (``summed=True``) returns single 4x4 matrices.
    """
    check_pair_guard(n, n2)
    W1, W2 = all_weights_1d(coin, n), all_weights_1d(coin, n2)
    if summed:
        lhs, rhs = telescoped_terms(f, n, n2, axis)
    else:
        lhs, rhs = local_terms(f, n, n2, axis)
        lhs, rhs = _mm_first(lhs), _mm_first(rhs)
    return pair_sum(lhs, W1, W2), pair_sum(rhs, W1, W2)


def check_thm3(f: LatticeFunction, coin: Coin, n: int, n2: int, m: int | None = None,
               m2: int | None = None, axis=Axis.FIRST, summed: bool = False) -> IdentityReport:
    params = {"coin": coin.label, "function": f.name, "n": n, "n2": n2,
              "axis": Axis(axis).value, "part": "b" if summed else "a"}
    if summed:
        L, R = thm3_operators(f, coin, n, n2, axis, True)
    else:
        _need_local(n, n2, m, m2)
        L, R = thm3_operators(f, coin, n, n2, axis, False)
        L, R = L[m, m2], R[m, m2]
        params.update(m=m, m2=m2)
    return IdentityReport("thm3", params, residual_of(L, R), OPERATOR_TOL, lhs=L, rhs=R)


def thm3_residual(f: LatticeFunction, coin: Coin, n: int, n2: int, axis, part: str) -> float:
    if part == "a" and (n == 0 or n2 == 0):
        return 0.0
    L, R = thm3_operators(f, coin, n, n2, axis, part == "b")
    return residual_of(L, R)


# Tanaka -------------------------------------------------------------------------


def tanaka_terms(position, increment):
    """Per-path Tanaka terms at one step: ``(lhs, literal_lhs, rhs)``.

    lhs = |w + dw| - |w|, literal_lhs = |w + dw|, rhs = sgn(w) dw + 1{w = 0}.
    """
    position = np.asarray(position)
    nxt = position + increment
    lhs = np.abs(nxt) - np.abs(position)
    rhs = np.sign(position) * increment + (position == 0)
    return lhs, np.abs(nxt), rhs


def tanaka_operators(coin: Coin, n: int, n2: int, axis):
    """Operator sums ``(lhs, literal_lhs, rhs)``, each shaped ``(n, n', 4, 4)``."""
    check_pair_guard(n, n2)
    axis = Axis(axis)
    K, K2 = 1 << n, 1 << n2
    if axis is Axis.FIRST:
        P = all_positions(n)
        pos = P[:, :n][:, None, :, None]
        inc = np.diff(P, axis=1)[:, None, :, None]
    else:
        P = all_positions(n2)
        pos = P[:, :n2][None, :, None, :]
        inc = np.diff(P, axis=1)[None, :, None, :]
    shape = (K, K2, n, n2)
    W1, W2 = all_weights_1d(coin, n), all_weights_1d(coin, n2)
    return tuple(
        pair_sum(_mm_first(np.broadcast_to(t, shape)), W1, W2) for t in tanaka_terms(pos, inc)
    )


def check_tanaka(coin: Coin, n: int, n2: int, m: int, m2: int, axis=Axis.FIRST,
                 literal: bool = False) -> IdentityReport:
    _need_local(n, n2, m, m2)
    lhs, lit, rhs = (t[m, m2] for t in tanaka_operators(coin, n, n2, axis))
    L = lit if literal else lhs
    return IdentityReport(
        "tanaka-literal" if literal else "tanaka",
        {"coin": coin.label, "n": n, "n2": n2, "m": m, "m2": m2, "axis": Axis(axis).value},
        residual_of(L, rhs), OPERATOR_TOL, report_only=literal, lhs=L, rhs=rhs,
    )


# Fourier expansion of U(xi, eta)^n -------------------------------------------------


def path_integral_sigma(f: LatticeFunction, coin: Coin, n: int, n2: int) -> np.ndarray:
    """Sum over pairs of f(w1(n), w2(n')) times the pair's operator weight."""
    check_pair_guard(n, n2)
    ends1 = all_positions(n)[:, n][:, None]
    ends2 = all_positions(n2)[:, n2][None, :]
    return pair_sum(f(ends1, ends2), all_weights_1d(coin, n), all_weights_1d(coin, n2))


def phase_coin(coin: Coin, theta: float) -> np.ndarray:
    """Diag(e^{-i theta}, e^{i theta}) U."""
    return np.exp(1j * np.array([-theta, theta]))[:, None] * coin.matrix


def cor5_literal_operators(coin: Coin, n: int, xi: float, eta: float, axis=Axis.FIRST):
    """Both sides of the printed expansion with n' = n.

    The phase at (m, m') is exp(i xi w1(m) + i eta w2(m')) and the increment
    is the one of the active axis.
    """
    check_pair_guard(n, n)
    axis = Axis(axis)
    lhs = mat_power(build_u_kxi(coin, xi, eta), n)
    base = mat_power(coin_squared(coin), n)
    if n == 0:
        return lhs, base
    P1 = all_positions(n)[:, None, :, None]
    P2 = all_positions(n)[None, :, None, :]
    X, Y = P1[:, :, :n, :], P2[:, :, :, :n]
    phase = np.exp(1j * (xi * X + eta * Y))
    inc = (P1[:, :, 1:, :] - X) if axis is Axis.FIRST else (P2[:, :, :, 1:] - Y)
    shape = (1 << n, 1 << n, n, n)
    drift_sum = np.sum(np.broadcast_to(phase * inc, shape), axis=(2, 3))
    plain_sum = np.sum(np.broadcast_to(phase, shape), axis=(2, 3))
    W = all_weights_1d(coin, n)
    rhs = (
        base
        + 1j * math.sin(xi + eta) * pair_sum(drift_sum, W, W)
        + (math.cos(xi + eta) - 1) * pair_sum(plain_sum, W, W)
    )
    return lhs, rhs


def check_cor5(coin: Coin, n: int, xi: float, eta: float, variant: str = "tensor",
               axis=Axis.FIRST) -> IdentityReport:
    params = {"coin": coin.label, "n": n, "n2": n, "xi": xi, "eta": eta, "variant": variant}
    if variant == "tensor":
        lhs = path_integral_sigma(plane_wave(xi, eta), coin, n, n)
        rhs = tensor_product(mat_power(phase_coin(coin, xi), n), mat_power(phase_coin(coin, eta), n))
        return IdentityReport("cor5-tensor", params, residual_of(lhs, rhs), OPERATOR_TOL,
                              lhs=lhs, rhs=rhs)
    if variant == "literal":
        lhs, rhs = cor5_literal_operators(coin, n, xi, eta, axis)
        params["axis"] = Axis(axis).value
        return IdentityReport("cor5-literal", params, residual_of(lhs, rhs), OPERATOR_TOL,
                              report_only=True, lhs=lhs, rhs=rhs)
    raise ValueError(f"unknown variant {variant!r}; expected 'tensor' or 'literal'")


# Two-index increment formula -------------------------------------------------


def _conj6_sides(f: LatticeFunction, X, Xn, Xp, Y, Yn, Yp):
    """LHS and RHS with X = w1(m), Xn = w1(m+1), Xp = w1(m-1) and likewise for Y."""
    lhs = f(Xn, Yn) - f(X, Y)
    vertical = 0.5 * (f(X, Yn + 1) - f(X, Yp - 1)) * (Yn - Y)
    horizontal = 0.5 * (f(Xn + 1, Y) - f(Xp - 1, Y)) * (Xn - X)
    curvature = 0.5 * (f(X, Yn + 1) + f(X, Yp - 1) - 4 * f(X, Y) + f(Xn + 1, Y) - f(Xp - 1, Y))
    return lhs, vertical + horizontal + curvature


def _need_conj6(n: int, n2: int, m: int, m2: int) -> None:
    if not (1 <= m < n and 1 <= m2 < n2):
        raise ValueError(f"need 1 <= m < n and 1 <= m' < n' (got m={m}, m'={m2}, n={n}, n'={n2})")


def check_conjecture6(f: LatticeFunction, pair: PathPair, m: int, m2: int) -> IdentityReport:
    _need_conj6(pair.n, pair.n2, m, m2)
    w1, w2 = pair.first.w, pair.second.w
    lhs, rhs = _conj6_sides(f, w1(m), w1(m + 1), w1(m - 1), w2(m2), w2(m2 + 1), w2(m2 - 1))
    lhs, rhs = complex(lhs), complex(rhs)
    res = abs(lhs - rhs)
    params = {"function": f.name, "n": pair.n, "n2": pair.n2, "k": pair.first.index,
              "k2": pair.second.index, "m": m, "m2": m2}
    cex = [{"params": {"k": pair.first.index, "k2": pair.second.index, "m": m, "m2": m2},
            "residual": res}] if res > COUNTEREXAMPLE_TOL else []
    return IdentityReport("conjecture6", params, res, COUNTEREXAMPLE_TOL, report_only=True,
                          lhs=lhs, rhs=rhs, counterexamples=cex)


def conjecture6_residuals(f: LatticeFunction, n: int, n2: int) -> np.ndarray:
    """Residuals shaped ``(2^n, 2^n', n-1, n'-1)``, axis 2 is m-1 and axis 3 is m'-1."""
    check_pair_guard(n, n2)
    if n < 2 or n2 < 2:
        return np.zeros((1 << n, 1 << n2, 0, 0))
    P1 = all_positions(n)[:, None, :, None]
    P2 = all_positions(n2)[None, :, None, :]
    lhs, rhs = _conj6_sides(
        f,
        P1[:, :, 1:n, :], P1[:, :, 2:, :], P1[:, :, : n - 1, :],
        P2[:, :, :, 1:n2], P2[:, :, :, 2:], P2[:, :, :, : n2 - 1],
    )
    return np.broadcast_to(np.abs(lhs - rhs), (1 << n, 1 << n2, n - 1, n2 - 1))


def conjecture6_sweep(f: LatticeFunction, n: int, n2: int) -> IdentityReport:
    """Every pair and every valid (m, m'); counterexamples sorted by (k, k', m, m')."""
    res = conjecture6_residuals(f, n, n2)
    cex = [
        {"params": {"k": int(k), "k2": int(k2), "m": int(i) + 1, "m2": int(j) + 1},
         "residual": float(res[k, k2, i, j])}
        for k, k2, i, j in np.argwhere(res > COUNTEREXAMPLE_TOL)
    ]
    return IdentityReport(
        "conjecture6", {"function": f.name, "n": n, "n2": n2},
        float(np.max(res, initial=0.0)), COUNTEREXAMPLE_TOL, report_only=True,
        counterexamples=cex,
    )


# Classical reduction ----------------------------------------------------------------


def classical_measure(weights: ClassicalWeights, n: int, n2: int) -> np.ndarray:
    """Probability of each pair (k, k') when P, Q, R, S become p, q, r, s.

    Joint steps j <= min(n, n') carry p, q, r, s for increment pairs
    (-,-), (-,+), (+,-), (+,+). Surplus steps of the longer path carry the
    marginal (p+q, r+s) for the first path or (p+r, q+s) for the second,
    mirroring ``U^n (x) U^n' = (U (x) U)^n' (U^(n-n') (x) I)``.
    """
    check_pair_guard(n, n2)
    joint = np.array([[weights.p, weights.q], [weights.r, weights.s]])
    marg1 = joint.sum(axis=1)
    marg2 = joint.sum(axis=0)
    b1 = (all_increments(n) + 1) // 2
    b2 = (all_increments(n2) + 1) // 2
    mu = np.ones((1 << n, 1 << n2))
    common = min(n, n2)
    for j in range(common):
        mu = mu * joint[b1[:, j][:, None], b2[:, j][None, :]]
    for j in range(common, n):
        mu = mu * marg1[b1[:, j]][:, None]
    for j in range(common, n2):
        mu = mu * marg2[b2[:, j]][None, :]
    return mu


def check_classical_reduction(weights: ClassicalWeights, f: LatticeFunction, n: int,
                              n2: int) -> IdentityReport:
    """Scalar Ito identities (both parts, both axes) under the classical path measure.

    The residual is the worst of those identities and of |total measure - 1|.
    """
    mu = classical_measure(weights, n, n2)
    worst = abs(float(mu.sum()) - 1.0)
    for axis in Axis:
        if n and n2:
            lhs, rhs = local_terms(f, n, n2, axis)
            diff = np.einsum("abij,ab->ij", lhs - rhs, mu)
            worst = max(worst, float(np.max(np.abs(diff))))
        lhs, rhs = telescoped_terms(f, n, n2, axis)
        worst = max(worst, abs(complex(np.sum((lhs - rhs) * mu))))
    return IdentityReport(
        "classical-reduction",
        {"weights": [weights.p, weights.q, weights.r, weights.s], "function": f.name,
         "n": n, "n2": n2},
        worst, SCALAR_TOL,
    )


def classical_endpoint_law(weights: ClassicalWeights, n: int, n2: int) -> dict:
    mu = classical_measure(weights, n, n2)
    e1 = all_positions(n)[:, n]
    e2 = all_positions(n2)[:, n2]
    law: dict = {}
    for k, k2 in zip(*np.nonzero(mu)):
        key = (int(e1[k]), int(e2[k2]))
        law[key] = law.get(key, 0.0) + float(mu[k, k2])
    return law


def binomial_product_law(n: int, n2: int) -> dict:
    """Law of two independent simple symmetric walks after n and n' steps."""
    law = {}
    for a in range(n + 1):
        for b in range(n2 + 1):
            law[(2 * a - n, 2 * b - n2)] = math.comb(n, a) * math.comb(n2, b) / 2 ** (n + n2)
    return law


def check_classical_binomial(n: int, n2: int) -> IdentityReport:
    law = classical_endpoint_law(ClassicalWeights(0.25, 0.25, 0.25, 0.25), n, n2)
    ref = binomial_product_law(n, n2)
    res = max(abs(law.get(key, 0.0) - ref.get(key, 0.0)) for key in set(law) | set(ref))
    return IdentityReport("classical-binomial", {"n": n, "n2": n2}, res, SCALAR_TOL)
