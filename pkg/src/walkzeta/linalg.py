"""Dense complex matrix helpers.

Matrices are plain ``numpy`` complex128 arrays (row-major); polynomials are
``numpy.polynomial.Polynomial`` objects with ascending coefficients.
"""
import numpy as np
from numpy.polynomial import Polynomial

from . import kernels
from .errors import DimensionMismatch, NotSquare, SizeExceeded

CHARPOLY_MAX = 16

SIGMA = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def as_cmatrix(a):
    """Coerce to a finite 2-D complex128 array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _square(a):
    m = as_cmatrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"matrix of shape {m.shape} is not square")
    return m


def identity(n):
    return np.eye(n, dtype=np.complex128)


def matmul(a, b):
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b):
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def det(a):
    """Determinant by LU with partial pivoting; a pivot below 1e-14 gives exactly 0."""
    m = _square(a)
    if m.shape[0] == 0:
        return 1.0 + 0j
    return complex(kernels.det_stack(m[None])[0])


def charpoly(a):
    """Coefficients of det(lambda*I - a), Faddeev-LeVerrier recursion."""
    m = _square(a)
    n = m.shape[0]
    if n > CHARPOLY_MAX:
        raise SizeExceeded(f"charpoly limited to {CHARPOLY_MAX}x{CHARPOLY_MAX}, got {n}")
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    work = np.zeros_like(m)
    eye = identity(n)
    for k in range(1, n + 1):
        work = m @ work + coeffs[n - k + 1] * eye
        coeffs[n - k] = -np.trace(m @ work) / k
    return Polynomial(coeffs)


def det_one_minus_u_poly(a):
    """det(I - u*a) as a polynomial in u: the reversed characteristic polynomial."""
    return Polynomial(charpoly(a).coef[::-1])


def matpow_trace(a, r):
    m = _square(a)
    if r < 1:
        raise ValueError("power must be >= 1")
    return complex(kernels.trace_powers(m[None], r)[0, r - 1])


def inf_norm(a):
    """Max absolute row sum."""
    return float(np.abs(np.asarray(a)).sum(axis=-1).max())
