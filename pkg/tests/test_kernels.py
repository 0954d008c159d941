import numpy as np
import pytest

from walkzeta import kernels
from walkzeta.kernels import _numpy

from conftest import random_complex

needs_numba = pytest.mark.skipif("numba" not in kernels.available_backends(), reason="numba not installed")


def test_backend_switch():
    before = kernels.backend()
    kernels.set_backend("numpy")
    assert kernels.backend() == "numpy"
    with pytest.raises(ValueError):
        kernels.set_backend("cuda")
    kernels.set_backend(before)


def test_det_stack_against_numpy(each_backend, rng):
    stack = random_complex(rng, 50, 5, 5)
    ref = np.linalg.det(stack)
    assert np.abs(kernels.det_stack(stack) - ref).max() < 1e-11 * np.abs(ref).max()


def test_trace_powers_against_matrix_power(each_backend, rng):
    stack = random_complex(rng, 7, 3, 3) / 3
    got = kernels.trace_powers(stack, 6)
    for r in range(1, 7):
        ref = np.trace(np.linalg.matrix_power(stack, r), axis1=1, axis2=2)
        assert np.abs(got[:, r - 1] - ref).max() < 1e-12


def test_apply_jumps_skips_negative_neighbours(each_backend):
    field = np.arange(6, dtype=complex).reshape(3, 2, 1)
    nbr = np.array([[1, 2, -1]])
    mats = np.eye(2, dtype=complex)[None]
    out = kernels.apply_jumps(field, nbr, mats)
    assert np.array_equal(out[:, :, 0], [[2, 3], [4, 5], [0, 0]])


@needs_numba
def test_backends_agree(rng):
    ks = rng.uniform(0, 2 * np.pi, (40, 2))
    shifts = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]])
    mats = random_complex(rng, 4, 4, 4)
    field = random_complex(rng, 25, 4, 4)
    nbr = rng.integers(-1, 25, (4, 25))
    from walkzeta.kernels import _numba

    for name, args in [
        ("symbol_stack", (ks, shifts, mats)),
        ("apply_jumps", (field, nbr, mats)),
    ]:
        a = getattr(_numpy, name)(*args)
        b = getattr(_numba, name)(*args)
        assert np.abs(a - b).max() < 1e-13, name
    stack = _numpy.symbol_stack(ks, shifts, mats)
    assert np.abs(_numpy.det_stack(stack) - _numba.det_stack(stack)).max() < 1e-12
    a, b = _numpy.trace_powers(stack, 8), _numba.trace_powers(stack, 8)
    assert (np.abs(a - b) / np.abs(a)).max() < 1e-12


@needs_numba
def test_numba_repeatable(rng):
    from walkzeta.kernels import _numba

    stack = random_complex(rng, 300, 4, 4)
    first = _numba.det_stack(stack)
    for _ in range(3):
        assert np.array_equal(_numba.det_stack(stack), first)
