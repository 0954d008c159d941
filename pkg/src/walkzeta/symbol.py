"""Momentum-space symbol of the evolution operator and its determinant polynomial."""
import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coins import jumps
from .errors import DimensionMismatch, SizeExceeded
from .linalg import CHARPOLY_MAX, det, det_one_minus_u_poly, identity
from .walk import assemble_MA

DENSE_MAX = 2048
CHUNK = 8192


@dataclass(frozen=True, eq=False)
class SymbolPoint:
    k_tilde: np.ndarray
    matrix: np.ndarray


def grid_angles(d, n):
    """All k-tilde in (2*pi/N * K_N)^d, lexicographic, shape (N**d, d)."""
    idx = np.indices((n,) * d).reshape(d, -1).T
    return 2 * np.pi * idx / n


def conjugate_partner(d, n):
    """Flat index of -k mod N for every grid point."""
    idx = np.indices((n,) * d).reshape(d, -1)
    return np.ravel_multi_index(tuple(np.mod(-idx, n)), (n,) * d)


def symbol(walk, k_tilde):
    k = np.atleast_1d(np.asarray(k_tilde, dtype=np.float64))
    if k.shape != (walk.dim,):
        raise DimensionMismatch(f"expected {walk.dim} angles, got {k.shape[0]}")
    return SymbolPoint(k, symbol_stack(walk, k[None])[0])


def symbol_stack(walk, ks):
    """Symbols at many momenta at once, shape (K, dc, dc)."""
    ks = np.asarray(ks, dtype=np.float64)
    if ks.ndim != 2 or ks.shape[1] != walk.dim:
        raise DimensionMismatch(f"momenta must have shape (K, {walk.dim})")
    shifts, mats = jumps(walk)
    return kernels.symbol_stack(ks, shifts, mats)


def iter_symbol_chunks(walk, ks, chunk=CHUNK):
    """Yield symbol stacks over fixed-size slices of ``ks``, in order."""
    for start in range(0, len(ks), chunk):
        yield symbol_stack(walk, ks[start:start + chunk])


def det_one_minus_u(point, u):
    m = point.matrix if isinstance(point, SymbolPoint) else np.asarray(point)
    return det(identity(m.shape[0]) - u * m)


def det_one_minus_u_stack(stack, u):
    n = stack.shape[-1]
    return kernels.det_stack(np.eye(n, dtype=np.complex128)[None] - u * stack)


def det_polynomial(point):
    """det(I - u M(k)) as a polynomial in u; constant term is exactly 1."""
    m = point.matrix if isinstance(point, SymbolPoint) else np.asarray(point)
    if m.shape[0] > CHARPOLY_MAX:
        raise SizeExceeded(f"det polynomial limited to {CHARPOLY_MAX} states")
    return det_one_minus_u_poly(m)


def _cjson(z):
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class FactorizationReport:
    max_rel_err: float
    samples: list = field(default_factory=list)

    def to_dict(self):
        return {
            "max_rel_err": self.max_rel_err,
            "samples": [{"u": _cjson(u), "lhs": _cjson(a), "rhs": _cjson(b)} for u, a, b in self.samples],
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def verify_factorization(walk, config, u_samples):
    """Compare det(I - u M_A) with the product of det(I - u M(k)) over the k-grid."""
    op = assemble_MA(walk, config)
    size = op.shape[0]
    if size > DENSE_MAX:
        raise SizeExceeded(f"dense determinant of size {size} exceeds {DENSE_MAX}")
    dense = op.toarray()
    stack = symbol_stack(walk, grid_angles(config.d, config.n_sites))
    samples = []
    worst = 0.0
    for u in u_samples:
        u = complex(u)
        lhs = det(np.eye(size) - u * dense)
        rhs = complex(np.prod(det_one_minus_u_stack(stack, u)))
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
        samples.append((u, lhs, rhs))
    return FactorizationReport(worst, samples)
