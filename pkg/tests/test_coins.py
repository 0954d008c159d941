import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkzeta import coins as cn
from walkzeta.coins import ShiftKind
from walkzeta.errors import BadSize, DimensionMismatch, NotReal, NotReducible, NotTracePreserving
from walkzeta.linalg import SIGMA

R2 = np.sqrt(2)


def test_qw_coin():
    assert np.abs(cn.qw_coin(np.pi / 4).matrix - np.array([[1, 1], [1, -1]]) / R2).max() < 1e-15
    assert np.array_equal(cn.qw_coin(0).matrix, [[1, 0], [0, -1]])
    assert cn.unitarity_defect(cn.qw_coin(0.3).matrix) < 1e-12
    assert cn.hadamard_coin() == cn.qw_coin(np.pi / 4)


def test_crw_and_rw_coins():
    assert np.abs(cn.crw_coin(np.pi / 4).matrix - 0.5).max() < 1e-15
    assert np.abs(cn.crw_coin(np.pi / 2).matrix - [[0, 1], [1, 0]]).max() < 1e-15
    assert np.abs(cn.rw_coin(0.7).matrix.sum(axis=0) - 1).max() < 1e-12
    for coin in (cn.crw_coin(1.1), cn.rw_coin(0.4)):
        m = coin.matrix.real
        assert m.min() >= 0 and np.abs(m.sum(axis=0) - 1).max() < 1e-12


def test_stochastic_validation():
    with pytest.raises(ValueError):
        cn.Coin(np.array([[0.5, 0.5], [0.6, 0.5]]), model=cn.Model.CRW)
    with pytest.raises(ValueError):
        cn.Coin(np.array([[1, 1], [1, 1]]), model=cn.Model.QW)


def test_grover_matrix():
    assert np.abs(cn.grover_matrix(3).matrix - np.array([[-1, 2, 2], [2, -1, 2], [2, 2, -1]]) / 3).max() < 1e-15
    g4 = np.array([[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]]) / 2
    assert np.abs(cn.grover_matrix(4).matrix - g4).max() < 1e-15
    assert np.array_equal(cn.grover_matrix(2).matrix, SIGMA)
    assert cn.grover_matrix(3).has_stay
    with pytest.raises(BadSize):
        cn.grover_matrix(1)


def test_fourier_matrix():
    f4 = np.array([[1, 1, 1, 1], [1, 1j, -1, -1j], [1, -1, 1, -1], [1, -1j, -1, 1j]]) / 2
    assert np.abs(cn.fourier_matrix(4).matrix - f4).max() < 1e-15
    assert np.abs(cn.fourier_matrix(2).matrix - cn.hadamard_coin().matrix).max() < 1e-15
    assert cn.unitarity_defect(cn.fourier_matrix(6).matrix) < 1e-12


@pytest.mark.parametrize("n", range(2, 9))
def test_grover_and_fourier_unitary(n):
    assert cn.unitarity_defect(cn.grover_matrix(n).matrix) < 1e-10
    assert cn.unitarity_defect(cn.fourier_matrix(n).matrix) < 1e-10


def test_positive_support():
    assert np.array_equal(cn.positive_support_grover(4).matrix, 1 - np.eye(4))
    assert np.array_equal(cn.positive_support(np.eye(2)), np.eye(2))
    assert np.array_equal(cn.positive_support(-np.ones((3, 3))), np.zeros((3, 3)))
    with pytest.raises(NotReal):
        cn.positive_support(np.array([[1j, 0], [0, 1]]))


def test_flip_flop_1d():
    a = np.array([[1, 2], [3, 4]], dtype=complex)
    f = cn.flip_flop(cn.Coin(a))
    assert f.shift_kind is ShiftKind.FLIPFLOP
    assert np.array_equal(f.matrix, [[3, 4], [1, 2]])
    qf = cn.with_shift(cn.qw_coin(0.4), ShiftKind.FLIPFLOP).matrix
    s, c = np.sin(0.4), np.cos(0.4)
    assert np.abs(qf - [[s, -c], [c, s]]).max() < 1e-15


def test_flip_flop_2d_grover():
    expected = np.array([[1, -1, 1, 1], [-1, 1, 1, 1], [1, 1, 1, -1], [1, 1, -1, 1]]) / 2
    assert np.abs(cn.flip_flop(cn.grover_matrix(4)).matrix - expected).max() < 1e-15


def test_three_state_flip_flop_matches_display():
    expected = np.array([[2, 2, -1], [2, -1, 2], [-1, 2, 2]]) / 3
    assert np.abs(cn.three_state_grover(ShiftKind.FLIPFLOP).matrix - expected).max() < 1e-15


@pytest.mark.parametrize("coin", [cn.hadamard_coin(), cn.crw_coin(0.3), cn.grover_matrix(4), cn.fourier_matrix(6),
                                  cn.positive_support_grover(6), cn.grover_matrix(3)])
def test_flip_flop_involution(coin):
    assert cn.flip_flop(cn.flip_flop(coin)) == coin


def test_flip_flop_dimension_checks():
    with pytest.raises(DimensionMismatch):
        cn.flip_flop(cn.grover_matrix(4), d=1)


def test_three_state_projections():
    p1, p0, p2 = cn.three_state_projections()
    assert np.array_equal(p1 + p0 + p2, np.eye(3))
    assert not (p1 @ p0).any()
    a = cn.grover_matrix(3).matrix
    assert np.abs(p1 @ a + p0 @ a + p2 @ a - a).max() == 0


def test_oqrw_lift_example():
    pair = cn.example_oqrw_pair()
    pb = np.array([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]) / 3
    pc = np.array([[1, 0, 0, 0], [-1, 1, 0, 0], [-1, 0, 1, 0], [1, -1, -1, 1]]) / 3
    assert np.abs(pair.lifted_b - pb).max() < 1e-15
    assert np.abs(pair.lifted_c - pc).max() < 1e-15
    half = cn.oqrw_lift(np.eye(2) / R2, np.eye(2) / R2)
    assert np.abs(half.lifted_b - np.eye(4) / 2).max() < 1e-15


def test_oqrw_lift_column_form():
    xi = 0.7
    b = np.array([[np.cos(xi), 0], [1j * np.sin(xi), 0]])
    c = np.array([[0, np.sin(xi)], [0, -np.cos(xi)]])
    pair = cn.oqrw_lift(b, c)
    pb = np.zeros((4, 4), dtype=complex)
    pb[:, 0] = [abs(b[0, 0]) ** 2, b[0, 0] * np.conj(b[1, 0]), np.conj(b[0, 0]) * b[1, 0], abs(b[1, 0]) ** 2]
    pc = np.zeros((4, 4), dtype=complex)
    pc[:, 3] = [abs(c[0, 1]) ** 2, c[0, 1] * np.conj(c[1, 1]), np.conj(c[0, 1]) * c[1, 1], abs(c[1, 1]) ** 2]
    assert np.abs(pair.lifted_b - pb).max() < 1e-15
    assert np.abs(pair.lifted_c - pc).max() < 1e-15


def test_oqrw_lift_rejects_non_trace_preserving():
    with pytest.raises(NotTracePreserving):
        cn.oqrw_lift(np.eye(2), np.eye(2))


def test_oqrw_reduce():
    xi = 0.45
    c, s = np.cos(xi), np.sin(xi)
    a = cn.oqrw_reduce(np.array([[c, 0], [s, 0]]), np.array([[0, s], [0, c]]))
    assert np.abs(a.matrix - cn.crw_coin(xi).matrix).max() < 1e-15
    assert np.abs(a.matrix.sum(axis=0) - 1).max() < 1e-15
    assert a.model is cn.Model.OQRW_REDUCED
    with pytest.raises(NotReducible):
        cn.oqrw_reduce(np.eye(2) / R2, np.eye(2) / R2)


def test_oqrw_reduce_projection_split():
    b = np.array([[0.6, 0], [0.8j, 0]])
    c = np.array([[0, 1 / R2], [0, -1 / R2]])
    a = cn.oqrw_reduce(b, c).matrix
    p1, p2 = np.diag([1, 0]), np.diag([0, 1])
    pb = np.array([[0.36, 0], [0.64, 0]])
    pc = np.array([[0, 0.5], [0, 0.5]])
    assert np.abs(a @ p1 - pb).max() < 1e-15
    assert np.abs(a @ p2 - pc).max() < 1e-15
    assert np.abs(a - (pb + pc)).max() < 1e-15


def test_jumps_shapes():
    shifts, mats = cn.jumps(cn.grover_matrix(6))
    assert shifts.shape == (6, 3) and mats.shape == (6, 6, 6)
    assert np.abs(mats.sum(axis=0) - cn.grover_matrix(6).matrix).max() == 0
    shifts, mats = cn.jumps(cn.grover_matrix(3))
    assert shifts.ravel().tolist() == [1, 0, -1]
    with pytest.raises(DimensionMismatch):
        cn.jumps(cn.grover_matrix(5))


def test_json_round_trip():
    for coin in (cn.fourier_matrix(4), cn.crw_coin(0.2), cn.three_state_grover(ShiftKind.FLIPFLOP)):
        back = cn.Coin.from_json(coin.to_json())
        assert back == coin
    data = json.loads(cn.hadamard_coin().to_json())
    assert data["states"] == 2 and len(data["entries"]) == 4


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 2 * np.pi))
def test_qw_unitary_and_crw_stochastic(xi):
    assert cn.unitarity_defect(cn.qw_coin(xi).matrix) < 1e-10
    m = cn.crw_coin(xi).matrix.real
    assert m.min() >= 0 and np.abs(m.sum(axis=0) - 1).max() < 1e-12
