import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import S, assert_close
from qw2d.coins import build_walk_operators, coin_hadamard, coin_random, coin_squared
from qw2d.fourier import build_u_kxi
from qw2d.linalg import (
    DimensionError,
    adjoint,
    as_cmat,
    frobenius_distance,
    identity,
    is_unitary,
    mat_mul,
    mat_power,
    tensor_product,
)

seeds = st.integers(min_value=0, max_value=2**63)
angles = st.floats(min_value=-math.pi, max_value=math.pi)


def naive_product(a, b):
    n = len(a)
    return np.array([[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)])


def random_unitary4(seed):
    c1, c2 = coin_random(seed), coin_random(seed + 1)
    return tensor_product(c1.matrix, c2.matrix)


class TestMatMul:
    def test_identity_left(self):
        m = random_unitary4(3)
        assert_close(mat_mul(identity(4), m), m, 0)

    def test_p_times_q_hadamard(self):
        ops = build_walk_operators(coin_hadamard())
        got = mat_mul(ops.pL, ops.qR)
        assert_close(got, naive_product(ops.pL.tolist(), ops.qR.tolist()), 1e-15)
        # only row 1 survives: (ab) * row 2 of Q
        expected = np.zeros((4, 4))
        expected[0] = [0.25, -0.25, 0.25, -0.25]
        assert_close(got, expected, 1e-15)

    def test_unitary_inverse_is_adjoint(self):
        m = random_unitary4(11)
        assert frobenius_distance(mat_mul(m, adjoint(m)), identity(4)) < 1e-14

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            mat_mul(identity(2), identity(4))

    def test_rejects_other_sizes(self):
        with pytest.raises(DimensionError):
            as_cmat(np.eye(3))

    def test_rejects_nan(self):
        m = identity(2)
        m[0, 0] = np.nan
        with pytest.raises(ValueError):
            as_cmat(m)

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_associative(self, seed):
        a, b, c = (random_unitary4(seed + 3 * i) for i in range(3))
        assert frobenius_distance(mat_mul(mat_mul(a, b), c), mat_mul(a, mat_mul(b, c))) < 1e-13


class TestTensor:
    def test_identity(self):
        assert_close(tensor_product(identity(2), identity(2)), identity(4), 0)

    def test_block_order(self):
        a = np.array([[1, 2], [3, 4]])
        b = np.array([[0, 5], [6, 7]])
        assert_close(tensor_product(a, b), np.kron(a, b), 0)

    def test_p1_p1_is_left_operator(self):
        c = coin_random(5)
        m = tensor_product(c.p1, c.p1)
        expected = np.zeros((4, 4), dtype=complex)
        expected[0] = [c.a**2, c.a * c.b, c.a * c.b, c.b**2]
        assert_close(m, expected, 1e-15)

    def test_q1_p1_is_down_operator(self):
        c = coin_random(6)
        m = tensor_product(c.q1, c.p1)
        expected = np.zeros((4, 4), dtype=complex)
        expected[2] = [c.a * c.c, c.b * c.c, c.a * c.d, c.b * c.d]
        assert_close(m, expected, 1e-15)

    def test_wrong_dims(self):
        with pytest.raises(DimensionError):
            tensor_product(identity(4), identity(2))

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_mixed_product(self, seed):
        a, b, c, d = (coin_random(seed + i).matrix for i in range(4))
        lhs = tensor_product(a, b) @ tensor_product(c, d)
        rhs = tensor_product(a @ c, b @ d)
        assert frobenius_distance(lhs, rhs) < 1e-13


class TestAdjointPower:
    def test_adjoint_identity(self):
        assert_close(adjoint(identity(4)), identity(4), 0)

    def test_involution(self):
        m = random_unitary4(8) + 0.5j * identity(4)
        assert_close(adjoint(adjoint(m)), m, 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_coin_unitary(self, seed):
        u = coin_random(seed).matrix
        assert frobenius_distance(adjoint(u) @ u, identity(2)) < 1e-14

    def test_power_zero_and_one(self):
        m = random_unitary4(1)
        assert_close(mat_power(m, 0), identity(4), 0)
        assert_close(mat_power(m, 1), m, 0)

    def test_power_negative(self):
        with pytest.raises(ValueError):
            mat_power(identity(2), -1)

    def test_power_five_sequential(self):
        u = build_u_kxi(coin_random(4), 0.7, -1.9)
        seq = u @ u @ u @ u @ u
        assert frobenius_distance(mat_power(u, 5), seq) < 1e-13

    @pytest.mark.parametrize("n", range(17))
    def test_power_matches_naive(self, n):
        u = build_u_kxi(coin_random(9), 2.1, 0.4)
        naive = identity(4)
        for _ in range(n):
            naive = naive @ u
        assert frobenius_distance(mat_power(u, n), naive) < 1e-12

    def test_power_of_stack(self):
        stack = np.stack([random_unitary4(s) for s in range(3)])
        got = mat_power(stack, 3)
        for i in range(3):
            assert_close(got[i], stack[i] @ stack[i] @ stack[i], 1e-14)


class TestDistanceUnitary:
    def test_zero_distance(self):
        m = random_unitary4(2)
        assert frobenius_distance(m, m) == 0

    def test_identity_vs_zero(self):
        assert frobenius_distance(identity(2), np.zeros((2, 2))) == pytest.approx(math.sqrt(2), abs=1e-15)

    def test_symmetric(self):
        a, b = random_unitary4(1), random_unitary4(2)
        assert frobenius_distance(a, b) == frobenius_distance(b, a)

    def test_decomposition_hadamard(self):
        c = coin_hadamard()
        ops = build_walk_operators(c)
        assert frobenius_distance(coin_squared(c), ops.pL + ops.qR + ops.rD + ops.sU) < 1e-14

    def test_is_unitary(self):
        assert is_unitary(identity(4), 1e-12)
        assert not is_unitary(2 * identity(2), 1e-12)

    def test_tol_must_be_positive(self):
        with pytest.raises(ValueError):
            is_unitary(identity(2), 0)

    @settings(max_examples=100, deadline=None)
    @given(angles, angles)
    def test_u_kxi_unitary(self, xi, eta):
        assert is_unitary(build_u_kxi(coin_hadamard(), xi, eta), 1e-12)
