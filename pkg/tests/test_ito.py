import itertools
import math

import numpy as np
import pytest

from conftest import assert_close
from qw2d.coins import ClassicalWeights, CoinError, coin_hadamard, coin_identity, coin_random
from qw2d.functions import function_registry, get_function, plane_wave
from qw2d.ito import (
    Axis,
    binomial_product_law,
    check_classical_binomial,
    check_classical_reduction,
    check_conjecture6,
    check_cor5,
    check_prop2_local,
    check_prop2_telescoped,
    check_tanaka,
    check_thm3,
    classical_endpoint_law,
    classical_measure,
    conjecture6_residuals,
    conjecture6_sweep,
    cor5_literal_operators,
    local_terms,
    path_integral_sigma,
    tanaka_terms,
    telescoped_terms,
    thm3_operators,
)
from qw2d.linalg import mat_power, tensor_product
from qw2d.paths import GuardError, path_pair, weight_2d

X = get_function("x")
X_SQ = get_function("x_sq")
ONE = get_function("one")


class TestRegistry:
    def test_size_and_names(self):
        reg = function_registry()
        assert len(reg) == 26
        assert len({f.name for f in reg}) == 26
        assert sum(f.name.startswith("exp_") for f in reg) == 16

    def test_values(self):
        assert get_function("abs_x")(-3, 7) == 3
        assert get_function("xy")(2, -5) == -10
        assert get_function("exp_0_0")(4, 9) == 1
        assert abs(get_function("exp_pi/3_2")(1, 1) - np.exp(1j * (math.pi / 3 + 2))) < 1e-15

    def test_broadcast(self):
        out = X_SQ(np.arange(3)[:, None], np.zeros((1, 4), dtype=int))
        assert out.shape == (3, 4) and out.dtype == np.complex128

    def test_unknown(self):
        with pytest.raises(KeyError, match="registry"):
            get_function("nope")


class TestScalarIto:
    def test_square_one_step(self):
        # f = x^2 at x = 0 stepping to 1: lhs 1, drift 0, second 1
        pair = path_pair(1, 1, 1, 0)
        r = check_prop2_local(X_SQ, pair, 0, 0, Axis.FIRST)
        assert r.lhs == 1 and r.rhs == 1 and r.verdict == "pass"

    def test_constant_function(self):
        r = check_prop2_telescoped(ONE, path_pair(4, 9, 3, 2), Axis.SECOND)
        assert r.lhs == 0 and r.rhs == 0

    def test_linear_telescopes(self):
        f = get_function("x_plus_y")
        pair = path_pair(5, 0b10110, 4, 0b0011)
        r = check_prop2_telescoped(f, pair, Axis.FIRST)
        assert r.lhs == pytest.approx(pair.first.w(5))
        assert r.residual == 0

    def test_index_range(self):
        with pytest.raises(ValueError):
            check_prop2_local(X, path_pair(2, 0, 2, 0), 2, 0, Axis.FIRST)

    @pytest.mark.parametrize("axis", list(Axis))
    @pytest.mark.parametrize("name", ["x_sq", "xy", "abs_x_plus_abs_y", "exp_2_pi/5"])
    def test_kernels_match_scalar_checks(self, axis, name):
        f = get_function(name)
        n, n2 = 3, 2
        lhs, rhs = local_terms(f, n, n2, axis)
        tl, tr = telescoped_terms(f, n, n2, axis)
        for k, k2 in itertools.product(range(8), range(4)):
            pair = path_pair(n, k, n2, k2)
            for m, m2 in itertools.product(range(n), range(n2)):
                r = check_prop2_local(f, pair, m, m2, axis)
                assert lhs[k, k2, m, m2] == pytest.approx(r.lhs, abs=1e-15)
                assert rhs[k, k2, m, m2] == pytest.approx(r.rhs, abs=1e-15)
            r = check_prop2_telescoped(f, pair, axis)
            assert tl[k, k2] == pytest.approx(r.lhs, abs=1e-14)
            assert tr[k, k2] == pytest.approx(r.rhs, abs=1e-14)


class TestOperatorIto:
    def test_linear_single_step(self, hadamard):
        r = check_thm3(X, hadamard, 1, 1, 0, 0, Axis.FIRST)
        assert r.residual < 1e-13

    def test_matches_explicit_pair_loop(self):
        coin, f = coin_random(8), get_function("xy")
        n, n2 = 2, 3
        L, R = thm3_operators(f, coin, n, n2, Axis.SECOND, summed=True)
        lhs_loop = np.zeros((4, 4), dtype=complex)
        for k, k2 in itertools.product(range(4), range(8)):
            r = check_prop2_telescoped(f, path_pair(n, k, n2, k2), Axis.SECOND)
            lhs_loop += r.lhs * weight_2d(coin, path_pair(n, k, n2, k2))
        assert_close(L, lhs_loop, 1e-13)
        assert_close(L, R, 1e-13)

    @pytest.mark.parametrize("summed", [False, True])
    def test_random_coin(self, summed):
        r = check_thm3(get_function("exp_pi/5_pi/3"), coin_random(5), 3, 2, 1, 1, Axis.SECOND, summed)
        assert r.verdict == "pass"


class TestTanaka:
    def test_leaving_origin(self):
        lhs, literal, rhs = tanaka_terms(0, -1)
        assert (lhs, literal, rhs) == (1, 1, 1)

    def test_towards_origin(self):
        lhs, literal, rhs = tanaka_terms(2, -1)
        assert (lhs, rhs) == (-1, -1)
        assert literal == 1

    @pytest.mark.parametrize("pos,inc", list(itertools.product(range(-4, 5), (-1, 1))))
    def test_all_local_cases(self, pos, inc):
        lhs, _, rhs = tanaka_terms(pos, inc)
        assert lhs == rhs

    @pytest.mark.parametrize("axis", list(Axis))
    def test_corrected_form(self, random_coin, axis):
        for m, m2 in itertools.product(range(3), range(2)):
            assert check_tanaka(random_coin, 3, 2, m, m2, axis).verdict == "pass"

    def test_literal_is_report_only(self, hadamard):
        r = check_tanaka(hadamard, 2, 2, 1, 1, literal=True)
        assert r.verdict == "report-only"
        assert r.residual > 0.1


class TestSigma:
    @pytest.mark.parametrize("n,n2", [(0, 0), (2, 3), (4, 4)])
    def test_constant(self, n, n2):
        c = coin_random(7)
        expected = tensor_product(mat_power(c.matrix, n), mat_power(c.matrix, n2))
        assert_close(path_integral_sigma(ONE, c, n, n2), expected, 1e-13)

    def test_identity_coin_x(self):
        # only the all-left and all-right one-step paths survive: p1 (x) . and q1 (x) .
        sigma = path_integral_sigma(X, coin_identity(), 2, 2)
        assert_close(sigma, np.diag([-2, -2, 2, 2]), 0)

    def test_brute_force(self):
        c, f = coin_random(12), get_function("abs_x_plus_abs_y")
        total = np.zeros((4, 4), dtype=complex)
        for k, k2 in itertools.product(range(8), range(4)):
            pair = path_pair(3, k, 2, k2)
            total += complex(f(*pair.w(3, 2))) * weight_2d(c, pair)
        assert_close(path_integral_sigma(f, c, 3, 2), total, 1e-14)

    def test_guard(self, hadamard):
        with pytest.raises(GuardError):
            path_integral_sigma(X, hadamard, 13, 12)


class TestFourierExpansion:
    def test_tensor_variant_is_plane_wave_sigma(self):
        c = coin_random(3)
        r = check_cor5(c, 4, 0.7, -1.1)
        assert_close(r.lhs, path_integral_sigma(plane_wave(0.7, -1.1), c, 4, 4), 0)
        assert r.verdict == "pass"

    @pytest.mark.parametrize("n", range(5))
    def test_literal_zero_at_origin(self, n):
        lhs, rhs = cor5_literal_operators(coin_random(n), n, 0.0, 0.0)
        assert_close(lhs, rhs, 1e-12)

    def test_literal_report_only(self, hadamard):
        r = check_cor5(hadamard, 3, math.pi / 3, math.pi / 5, "literal")
        assert r.verdict == "report-only"
        assert math.isfinite(r.residual)

    def test_bad_variant(self, hadamard):
        with pytest.raises(ValueError):
            check_cor5(hadamard, 1, 0, 0, "other")


class TestTwoIndexFormula:
    def test_constant_function_residual(self):
        r = check_conjecture6(ONE, path_pair(3, 2, 3, 5), 1, 1)
        assert r.residual == pytest.approx(1.0)
        assert r.verdict == "report-only"
        assert len(r.counterexamples) == 1

    def test_index_range(self):
        with pytest.raises(ValueError):
            check_conjecture6(X, path_pair(3, 0, 3, 0), 0, 1)

    def test_vectorised_matches_scalar(self):
        f = get_function("x_sq")
        res = conjecture6_residuals(f, 3, 4)
        for k, k2 in itertools.product(range(8), range(16)):
            for m, m2 in itertools.product(range(1, 3), range(1, 4)):
                r = check_conjecture6(f, path_pair(3, k, 4, k2), m, m2)
                assert res[k, k2, m - 1, m2 - 1] == pytest.approx(r.residual, abs=1e-15)

    def test_short_paths_empty(self):
        r = conjecture6_sweep(X, 1, 4)
        assert r.residual == 0 and r.counterexamples == []

    def test_sweep_sorted_and_deterministic(self):
        a = conjecture6_sweep(X_SQ, 4, 4)
        b = conjecture6_sweep(X_SQ, 4, 4)
        assert a.to_json() == b.to_json()
        keys = [tuple(c["params"][s] for s in ("k", "k2", "m", "m2")) for c in a.counterexamples]
        assert keys == sorted(keys)
        assert all(c["residual"] > 1e-9 for c in a.counterexamples)


class TestClassical:
    def test_weights_validated(self):
        with pytest.raises(CoinError):
            ClassicalWeights(0.5, 0.5, 0.5, -0.5)
        with pytest.raises(CoinError):
            ClassicalWeights(0.3, 0.3, 0.3, 0.3)

    def test_all_left(self):
        law = classical_endpoint_law(ClassicalWeights(1, 0, 0, 0), 3, 3)
        assert law == {(-3, -3): 1.0}

    def test_all_left_unequal_lengths(self):
        law = classical_endpoint_law(ClassicalWeights(1, 0, 0, 0), 2, 4)
        assert law == {(-2, -4): 1.0}

    @pytest.mark.parametrize("n,n2", [(0, 0), (1, 3), (4, 2), (5, 5)])
    def test_measure_normalised(self, n, n2):
        mu = classical_measure(ClassicalWeights(0.4, 0.3, 0.2, 0.1), n, n2)
        assert abs(mu.sum() - 1) < 1e-12 and (mu >= 0).all()

    def test_binomial_law(self):
        ref = binomial_product_law(2, 1)
        assert ref[(0, 1)] == 0.25 and ref[(2, -1)] == 0.125
        assert check_classical_binomial(4, 3).residual < 1e-12

    @pytest.mark.parametrize("name", ["x_sq", "xy", "abs_y", "exp_2_2"])
    def test_biased_reduction(self, name):
        r = check_classical_reduction(ClassicalWeights(0.4, 0.3, 0.2, 0.1), get_function(name), 3, 4)
        assert r.verdict == "pass"
