"""Coin matrices, shift conventions and the open-quantum-random-walk lift.

A walk on the torus is fully described by its *jumps*: a list of lattice
shifts ``s`` with matrices ``J_s`` such that

    Psi_{n+1}(x) = sum_s J_s Psi_n(x + s).

``jumps`` produces that list for every supported coin flavour; the walk,
symbol and zeta modules only ever consume jumps.
"""
import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadSize, DimensionMismatch, NotReal, NotReducible, NotTracePreserving
from .linalg import SIGMA, as_cmatrix, identity

TOL = 1e-10
STRUCTURE_TOL = 1e-14


class ShiftKind(str, Enum):
    MOVING = "moving"
    FLIPFLOP = "flipflop"


class Model(str, Enum):
    QW = "qw"
    CRW = "crw"
    RW = "rw"
    GROVER = "grover"
    FOURIER = "fourier"
    POSITIVE_SUPPORT_GROVER = "positive_support_grover"
    THREE_STATE_GROVER = "three_state_grover"
    OQRW_REDUCED = "oqrw_reduced"
    CUSTOM = "custom"


STOCHASTIC = {Model.CRW, Model.RW, Model.OQRW_REDUCED}
UNITARY = {Model.QW, Model.GROVER, Model.FOURIER, Model.THREE_STATE_GROVER}


def unitarity_defect(a):
    a = np.asarray(a)
    return float(np.abs(a.conj().T @ a - np.eye(a.shape[0])).max())


@dataclass(frozen=True, eq=False)
class Coin:
    matrix: np.ndarray
    shift_kind: ShiftKind = ShiftKind.MOVING
    model: Model = Model.CUSTOM
    has_stay: bool = False

    def __post_init__(self):
        m = as_cmatrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"coin must be square, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "shift_kind", ShiftKind(self.shift_kind))
        object.__setattr__(self, "model", Model(self.model))
        n = m.shape[0]
        if self.has_stay and n != 3:
            raise BadSize("only the 3-state coin carries a stay component")
        if self.model is Model.OQRW_REDUCED and n != 2:
            raise BadSize("reduced OQRW coins are 2x2")
        if self.model in STOCHASTIC:
            re = m.real
            if np.abs(m.imag).max() > TOL or re.min() < -TOL or re.max() > 1 + TOL:
                raise ValueError(f"{self.model.value} coin entries must lie in [0, 1]")
            if np.abs(re.sum(axis=0) - 1).max() > 1e-12:
                raise ValueError(f"{self.model.value} coin columns must sum to 1")
        if self.model in UNITARY and unitarity_defect(m) > TOL:
            raise ValueError(f"{self.model.value} coin is not unitary")

    @property
    def states(self):
        return self.matrix.shape[0]

    @property
    def dim(self):
        """Lattice dimension the coin drives."""
        if self.has_stay or self.model is Model.OQRW_REDUCED:
            return 1
        if self.states % 2:
            raise DimensionMismatch(f"a {self.states}-state coin without a stay component has no torus walk")
        return self.states // 2

    def to_dict(self):
        return {
            "model": self.model.value,
            "states": self.states,
            "shift_kind": self.shift_kind.value,
            "entries": [[float(z.real), float(z.imag)] for z in self.matrix.ravel()],
        }

    @classmethod
    def from_dict(cls, data):
        n = int(data["states"])
        entries = np.array([complex(re, im) for re, im in data["entries"]], dtype=np.complex128)
        if entries.size != n * n:
            raise DimensionMismatch(f"expected {n * n} entries, got {entries.size}")
        return cls(entries.reshape(n, n), ShiftKind(data["shift_kind"]), Model(data["model"]), has_stay=n == 3)

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, Coin):
            return NotImplemented
        return (
            self.shift_kind == other.shift_kind
            and self.model == other.model
            and self.has_stay == other.has_stay
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class OqrwPair:
    """Kraus pair (B, C) of an open quantum random walk plus its vectorized lift."""

    b: np.ndarray
    c: np.ndarray
    lifted_b: np.ndarray
    lifted_c: np.ndarray

    states = 4
    dim = 1


def qw_coin(xi):
    c, s = np.cos(xi), np.sin(xi)
    return Coin(np.array([[c, s], [s, -c]]), model=Model.QW)


def hadamard_coin():
    return qw_coin(np.pi / 4)


def crw_coin(xi):
    c2, s2 = np.cos(xi) ** 2, np.sin(xi) ** 2
    return Coin(np.array([[c2, s2], [s2, c2]]), model=Model.CRW)


def rw_coin(xi):
    c2, s2 = np.cos(xi) ** 2, np.sin(xi) ** 2
    return Coin(np.array([[c2, c2], [s2, s2]]), model=Model.RW)


def symmetric_rw_coin():
    return rw_coin(np.pi / 4)


def grover_matrix(n):
    if n < 2:
        raise BadSize(f"Grover matrix needs n >= 2, got {n}")
    m = np.full((n, n), 2.0 / n) - np.eye(n)
    if n == 3:
        return Coin(m, model=Model.THREE_STATE_GROVER, has_stay=True)
    return Coin(m, model=Model.GROVER)


def fourier_matrix(n):
    if n < 2:
        raise BadSize(f"Fourier matrix needs n >= 2, got {n}")
    idx = np.arange(n)
    # reduce the exponent mod n so entries are exact roots of unity
    m = np.exp(2j * np.pi * (np.outer(idx, idx) % n) / n) / np.sqrt(n)
    return Coin(m, model=Model.FOURIER, has_stay=n == 3)


def positive_support(a):
    """1 where an entry is strictly positive, else 0."""
    m = as_cmatrix(a.matrix if isinstance(a, Coin) else a)
    if np.abs(m.imag).max(initial=0.0) >= STRUCTURE_TOL:
        raise NotReal("positive support needs a real matrix")
    return (m.real > 0).astype(np.complex128)


def positive_support_grover(n):
    return Coin(positive_support(grover_matrix(n)), model=Model.POSITIVE_SUPPORT_GROVER)


def flip_flop_operator(d):
    return np.kron(identity(d), SIGMA)


def flip_flop(coin, d=None):
    """Switch M-type <-> F-type by left-multiplying with I_d (x) sigma.

    The 3-state coin has no I_d (x) sigma; its F-type swaps the two moving
    rows (left <-> right) and keeps the stay row.
    """
    kind = ShiftKind.FLIPFLOP if coin.shift_kind is ShiftKind.MOVING else ShiftKind.MOVING
    if coin.has_stay:
        if d not in (None, 1):
            raise DimensionMismatch("the 3-state coin lives in d = 1")
        return Coin(coin.matrix[[2, 1, 0]], kind, coin.model, has_stay=True)
    d = coin.dim if d is None else d
    if coin.states != 2 * d:
        raise DimensionMismatch(f"coin has {coin.states} states, flip-flop in d={d} needs {2 * d}")
    return Coin(flip_flop_operator(d) @ coin.matrix, kind, coin.model)


def with_shift(coin, shift_kind):
    """Return ``coin`` expressed in the requested shift convention."""
    shift_kind = ShiftKind(shift_kind)
    return coin if coin.shift_kind is shift_kind else flip_flop(coin)


def three_state_projections():
    """(P1, P0, P2): move left, stay, move right."""
    p1, p0, p2 = (np.zeros((3, 3), dtype=np.complex128) for _ in range(3))
    p1[0, 0] = p0[1, 1] = p2[2, 2] = 1.0
    return p1, p0, p2


def three_state_grover(shift_kind=ShiftKind.MOVING):
    return with_shift(grover_matrix(3), shift_kind)


def oqrw_lift(b, c):
    b, c = as_cmatrix(b), as_cmatrix(c)
    if b.shape != (2, 2) or c.shape != (2, 2):
        raise DimensionMismatch("OQRW Kraus operators are 2x2")
    defect = np.abs(b.conj().T @ b + c.conj().T @ c - np.eye(2)).max()
    if defect > TOL:
        raise NotTracePreserving(f"B*B + C*C deviates from I by {defect:.3g}")
    pair = OqrwPair(b, c, np.kron(b, b.conj()), np.kron(c, c.conj()))
    for m in (pair.b, pair.c, pair.lifted_b, pair.lifted_c):
        m.setflags(write=False)
    return pair


def example_oqrw_pair():
    s = 1 / np.sqrt(3)
    return oqrw_lift(s * np.array([[1, 1], [0, 1]]), s * np.array([[1, 0], [-1, 1]]))


def oqrw_reduce(b, c):
    """Collapse a column-structured OQRW (B = [b, 0], C = [0, c]) to a 2-state CRW-like coin."""
    b, c = as_cmatrix(b), as_cmatrix(c)
    if np.abs(b[:, 1]).max() > STRUCTURE_TOL or np.abs(c[:, 0]).max() > STRUCTURE_TOL:
        raise NotReducible("need B with zero second column and C with zero first column")
    oqrw_lift(b, c)
    a = np.array([[abs(b[0, 0]) ** 2, abs(c[0, 1]) ** 2], [abs(b[1, 0]) ** 2, abs(c[1, 1]) ** 2]])
    return Coin(a, model=Model.OQRW_REDUCED)


def jumps(walk):
    """Return ``(shifts, mats)``: integer shifts (S, d) and jump matrices (S, dc, dc)."""
    if isinstance(walk, OqrwPair):
        return np.array([[1], [-1]]), np.stack([walk.lifted_b, walk.lifted_c])
    a = walk.matrix
    n = walk.states
    walk.dim  # validates that the coin drives a torus walk

    def row(i):
        out = np.zeros_like(a)
        out[i] = a[i]
        return out

    def col(j):
        out = np.zeros_like(a)
        out[:, j] = a[:, j]
        return out

    if walk.model is Model.OQRW_REDUCED:
        return np.array([[1], [-1]]), np.stack([col(0), col(1)])
    if walk.has_stay:
        return np.array([[1], [0], [-1]]), np.stack([row(0), row(1), row(2)])
    d = n // 2
    shifts = np.zeros((n, d), dtype=np.int64)
    for j in range(d):
        shifts[2 * j, j] = 1
        shifts[2 * j + 1, j] = -1
    return shifts, np.stack([row(i) for i in range(n)])
