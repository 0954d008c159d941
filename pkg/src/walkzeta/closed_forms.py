"""Closed-form return weights for 2-state walks on Z.

For a 2x2 coin with all entries nonzero, write p = a11*a22, q = a12*a21 and
z = q / p. The return weight at time 2l has trace

    2l * p**l * sum_{m=1}^{l} C(l-1, m-1)**2 * z**m / m
      = 2l * p**(l-1) * q * 2F1(1-l, 1-l; 2; z),

and both forms are evaluated and cross-checked here.
"""
import math
from fractions import Fraction

import numpy as np

from .coins import Coin, Model
from .errors import DimensionMismatch, SizeExceeded, ZeroEntry
from .linalg import SIGMA

BINOM_MAX = 30
ZERO_ENTRY_TOL = 1e-14
FORM_AGREEMENT = 1e-12


def binom(n, k):
    if n > BINOM_MAX:
        raise SizeExceeded(f"binomial coefficients are limited to n <= {BINOM_MAX}")
    return math.comb(n, k)


def hyp2f1_terminating(l, z):
    """2F1(1-l, 1-l; 2; z), a polynomial of degree l-1 in z.

    Exact when ``z`` is an int or Fraction.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    term = Fraction(1)
    total = Fraction(1)
    for k in range(l - 1):
        term = term * Fraction((k + 1 - l) ** 2, (k + 2) * (k + 1)) * z
        total = total + term
    return total if isinstance(z, (int, Fraction)) else complex(total)


def binomial_sum(l, z):
    """sum_{k=1}^{l} C(l-1, k-1)**2 z**(k-1) / k, the series side of the 2F1 relation."""
    return sum(Fraction(binom(l - 1, k - 1) ** 2, k) * z ** (k - 1) for k in range(1, l + 1))


def binomial_identity(n):
    """Both sides of 2n * sum_k C(n-1,k-1)**2 / k == C(2n, n), exactly."""
    lhs = 2 * n * binomial_sum(n, 1)
    return lhs, math.comb(2 * n, n)


def _entries(coin):
    a = coin.matrix if isinstance(coin, Coin) else np.asarray(coin, dtype=np.complex128)
    if a.shape != (2, 2) or (isinstance(coin, Coin) and coin.has_stay):
        raise DimensionMismatch("closed forms apply to 2-state coins on Z")
    if np.abs(a).min() < ZERO_ENTRY_TOL:
        raise ZeroEntry("closed form needs a11*a12*a21*a22 != 0")
    return a


def c_2l_closed_forms(coin, l):
    """(finite-sum form, 2F1 form) of lim C_2l; raises if they disagree."""
    if l < 1:
        raise ValueError("l must be >= 1")
    a = _entries(coin)
    p = complex(a[0, 0] * a[1, 1])
    q = complex(a[0, 1] * a[1, 0])
    z = q / p
    terms = [binom(l - 1, m - 1) ** 2 / m * z ** m for m in range(1, l + 1)]
    finite = 2 * l * p ** l * sum(terms)
    hyper = 2 * l * p ** (l - 1) * q * complex(hyp2f1_terminating(l, z))
    scale = 2 * l * abs(p) ** l * sum(abs(t) for t in terms)
    if abs(finite - hyper) > FORM_AGREEMENT * max(scale, 1e-300):
        raise ArithmeticError(f"closed forms disagree: {finite} vs {hyper}")
    return finite, hyper


def c_2l_closed_1d(coin, l):
    return c_2l_closed_forms(coin, l)[0]


def _q_matrices(coin):
    a = _entries(coin)
    p1 = np.diag([1.0, 0.0]).astype(np.complex128)
    p2 = np.diag([0.0, 1.0]).astype(np.complex128)
    if isinstance(coin, Coin) and coin.model is Model.OQRW_REDUCED:
        return a, (a @ p1, a @ p2, a @ p2 @ SIGMA, a @ p1 @ SIGMA)
    return a, (p1 @ a, p2 @ a, SIGMA @ p1 @ a, SIGMA @ p2 @ a)


def bracket(coin, l, m):
    """The matrix multiplying the m-th term of the return-weight sum."""
    a, (q1, q2, q3, q4) = _q_matrices(coin)
    return (l - m) / (a[0, 0] * m) * q1 + (l - m) / (a[1, 1] * m) * q2 + q3 / a[0, 1] + q4 / a[1, 0]


def trace_identity(coin, l, m):
    """Trace of ``bracket``; equals 2l/m for every admissible coin."""
    return complex(np.trace(bracket(coin, l, m)))


def phi_2l_closed_1d(coin, l):
    """Return weight matrix Phi_2l(0) on Z from the closed form."""
    a, _ = _q_matrices(coin)
    p = a[0, 0] * a[1, 1]
    z = a[0, 1] * a[1, 0] / p
    total = np.zeros((2, 2), dtype=np.complex128)
    for m in range(1, l + 1):
        total += z ** m * binom(l - 1, m - 1) ** 2 * bracket(coin, l, m)
    return p ** l * total
