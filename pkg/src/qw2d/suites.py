"""Parameter sweeps behind ``qw2d verify``.

Each suite returns a list of reports in a fixed order. A sweep report covers
a block of parameters; its residual is the maximum over the indices that the
block aggregates (path pairs, and (m, m') where applicable).
"""

from __future__ import annotations

import math

from .coins import ClassicalWeights, Coin, build_walk_operators
from .fourier import default_grid_size, evolve_fourier, invert, lemma1_residual, transform
from .functions import function_registry
from .ito import (
    Axis,
    check_classical_binomial,
    check_classical_reduction,
    check_cor5,
    prop2_residual,
    tanaka_operators,
    thm3_residual,
)
from .paths import prob_from_xi, xi_bruteforce, xi_recursive
from .position import (
    distribution,
    distribution_difference,
    evolve,
    init_state,
    max_amplitude_difference,
    qubit_symmetric,
)
from .reports import OPERATOR_TOL, SCALAR_TOL, IdentityReport, residual_of

PROP2_MAX_N = 6
THM3_MAX_N = 5
COR5_MAX_N = 6
LEMMA1_MAX_N = 20
INVERSION_MAX_N = 30
XI_MAX_N = 8
CLASSICAL_MAX_N = 5

LEMMA1_TOL = 1e-12
INVERSION_TOL = 1e-10
XI_PROB_TOL = 1e-11

COR5_ANGLES = (-math.pi / 2, -math.pi / 5, 0.0, math.pi / 3, 2.0)
BIASED_WEIGHTS = ClassicalWeights(0.4, 0.3, 0.2, 0.1)

SUITES = ("prop2", "thm3", "tanaka", "cor5", "lemma1", "xi-oracle", "classical")


def _cap(default: int, n_max: int | None) -> int:
    return default if n_max is None else min(default, n_max)


def suite_prop2(n_max: int | None = None) -> list[IdentityReport]:
    top = _cap(PROP2_MAX_N, n_max)
    out = []
    for f in function_registry():
        for n in range(top + 1):
            for n2 in range(top + 1):
                for part in ("a", "b"):
                    if part == "a" and (n == 0 or n2 == 0):
                        continue
                    for axis in Axis:
                        out.append(IdentityReport(
                            "prop2",
                            {"function": f.name, "n": n, "n2": n2, "axis": axis.value, "part": part},
                            prop2_residual(f, n, n2, axis, part), SCALAR_TOL,
                        ))
    return out


def suite_thm3(coin: Coin, n_max: int | None = None) -> list[IdentityReport]:
    top = _cap(THM3_MAX_N, n_max)
    out = []
    for f in function_registry():
        for n in range(top + 1):
            for n2 in range(top + 1):
                for part in ("a", "b"):
                    if part == "a" and (n == 0 or n2 == 0):
                        continue
                    for axis in Axis:
                        out.append(IdentityReport(
                            "thm3",
                            {"coin": coin.label, "function": f.name, "n": n, "n2": n2,
                             "axis": axis.value, "part": part},
                            thm3_residual(f, coin, n, n2, axis, part), OPERATOR_TOL,
                        ))
    return out


def suite_tanaka(coin: Coin, n_max: int | None = None) -> list[IdentityReport]:
    top = _cap(THM3_MAX_N, n_max)
    out = []
    for n in range(1, top + 1):
        for n2 in range(1, top + 1):
            for axis in Axis:
                lhs, literal, rhs = tanaka_operators(coin, n, n2, axis)
                params = {"coin": coin.label, "n": n, "n2": n2, "axis": axis.value}
                out.append(IdentityReport("tanaka", params, residual_of(lhs, rhs), OPERATOR_TOL))
                out.append(IdentityReport("tanaka-literal", dict(params), residual_of(literal, rhs),
                                          OPERATOR_TOL, report_only=True))
    return out


def suite_cor5(coin: Coin, n_max: int | None = None) -> list[IdentityReport]:
    top = _cap(COR5_MAX_N, n_max)
    out = []
    for n in range(top + 1):
        for xi in COR5_ANGLES:
            for eta in COR5_ANGLES:
                out.append(check_cor5(coin, n, xi, eta, "tensor"))
                for axis in Axis:
                    out.append(check_cor5(coin, n, xi, eta, "literal", axis))
    return out


def suite_lemma1(coin: Coin, phi=None, n_max: int | None = None) -> list[IdentityReport]:
    """One-step momentum-space residuals and Fourier-inversion vs position evolution."""
    phi = phi or qubit_symmetric()
    ops = build_walk_operators(coin)
    start = init_state(phi)
    out = []
    state = start
    for n in range(1, _cap(LEMMA1_MAX_N, n_max) + 1):
        out.append(IdentityReport(
            "lemma1", {"coin": coin.label, "n": n, "M": default_grid_size(n)},
            lemma1_residual(state, coin, default_grid_size(n)), LEMMA1_TOL,
        ))
        state = evolve(state, ops, 1)
    state = start
    for n in range(_cap(INVERSION_MAX_N, n_max) + 1):
        M = default_grid_size(n)
        via_fourier = invert(evolve_fourier(transform(start, M), coin, n))
        out.append(IdentityReport(
            "fourier-inversion", {"coin": coin.label, "n": n, "M": M},
            max_amplitude_difference(via_fourier, state), INVERSION_TOL,
        ))
        state = evolve(state, ops, 1)
    return out


def suite_xi(coin: Coin, phi=None, n_max: int | None = None) -> list[IdentityReport]:
    phi = phi or qubit_symmetric()
    ops = build_walk_operators(coin)
    out = []
    state = init_state(phi)
    for n in range(_cap(XI_MAX_N, n_max) + 1):
        rec, brute = xi_recursive(coin, n), xi_bruteforce(coin, n)
        res = max(residual_of(rec.entries[key], brute.entries[key]) for key in rec.entries)
        out.append(IdentityReport("xi-oracle", {"coin": coin.label, "n": n}, res, SCALAR_TOL))
        res = distribution_difference(prob_from_xi(rec, phi), distribution(state))
        out.append(IdentityReport("xi-probability", {"coin": coin.label, "n": n}, res, XI_PROB_TOL))
        state = evolve(state, ops, 1)
    return out


def suite_classical(n_max: int | None = None) -> list[IdentityReport]:
    top = _cap(CLASSICAL_MAX_N, n_max)
    out = []
    for n in range(top + 1):
        for n2 in range(top + 1):
            out.append(check_classical_binomial(n, n2))
    for f in function_registry():
        for n in range(top + 1):
            for n2 in range(top + 1):
                out.append(check_classical_reduction(BIASED_WEIGHTS, f, n, n2))
    return out


def run_suite(name: str, coin: Coin, phi=None, n_max: int | None = None) -> list[IdentityReport]:
    if name == "all":
        out = []
        for sub in SUITES:
            out.extend(run_suite(sub, coin, phi, n_max))
        return out
    if name == "prop2":
        return suite_prop2(n_max)
    if name == "thm3":
        return suite_thm3(coin, n_max)
    if name == "tanaka":
        return suite_tanaka(coin, n_max)
    if name == "cor5":
        return suite_cor5(coin, n_max)
    if name == "lemma1":
        return suite_lemma1(coin, phi, n_max)
    if name == "xi-oracle":
        return suite_xi(coin, phi, n_max)
    if name == "classical":
        return suite_classical(n_max)
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or 'all'")
