"""Time evolution on the torus T^d_N and on the infinite lattice Z^d.

Fields are stored site-major in lexicographic order of (x_1, ..., x_d):
amplitudes have shape ``(N**d, states)`` and matrix weights
``(n_sites, states, states)``.
"""
import csv
import io
import json
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import kernels
from .coins import STOCHASTIC, Coin, OqrwPair, jumps
from .errors import CapExceeded, DimensionMismatch, SizeExceeded

MA_MAX_SIZE = 20000
INFINITE_CAPS = {1: 40, 2: 32, 3: 24}


@dataclass(frozen=True)
class TorusConfig:
    d: int
    n_sites: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if self.n_sites < 2:
            raise ValueError(f"torus side must be >= 2, got {self.n_sites}")

    @property
    def volume(self):
        return self.n_sites ** self.d

    def coordinates(self):
        """(volume, d) integer coordinates in lexicographic order."""
        grids = np.indices((self.n_sites,) * self.d).reshape(self.d, -1)
        return grids.T.copy()

    def index(self, x):
        x = np.mod(np.asarray(x, dtype=np.int64), self.n_sites)
        return int(np.ravel_multi_index(tuple(x), (self.n_sites,) * self.d))


def _check_walk(walk, d):
    if walk.dim != d:
        raise DimensionMismatch(f"a {walk.states}-state walk in d={walk.dim} cannot run on a d={d} lattice")


def neighbor_table(config, shifts):
    """nbr[s, x] = index of x + shifts[s] on the torus."""
    coords = config.coordinates()
    shape = (config.n_sites,) * config.d
    out = np.empty((len(shifts), config.volume), dtype=np.int64)
    for s, shift in enumerate(shifts):
        moved = np.mod(coords + shift, config.n_sites)
        out[s] = np.ravel_multi_index(tuple(moved.T), shape)
    return out


def _window_table(radius, d, shifts):
    """Neighbour table on the box [-radius, radius]^d with -1 outside."""
    side = 2 * radius + 1
    shape = (side,) * d
    coords = np.indices(shape).reshape(d, -1).T
    out = np.empty((len(shifts), side ** d), dtype=np.int64)
    for s, shift in enumerate(shifts):
        moved = coords + shift
        inside = ((moved >= 0) & (moved < side)).all(axis=1)
        flat = np.full(len(coords), -1, dtype=np.int64)
        flat[inside] = np.ravel_multi_index(tuple(moved[inside].T), shape)
        out[s] = flat
    return out


def default_norm_exponent(walk):
    if isinstance(walk, Coin) and walk.model in STOCHASTIC:
        return 1
    return 2


def default_internal_state(states, p=2):
    """Uniform vector normalized in the p-norm."""
    return np.full(states, states ** (-1.0 / p), dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class WalkState:
    config: TorusConfig
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=np.complex128)
        if amp.ndim != 2 or amp.shape[0] != self.config.volume:
            raise DimensionMismatch(f"amplitudes must have shape ({self.config.volume}, states), got {amp.shape}")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must be finite")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def states(self):
        return self.amplitudes.shape[1]

    @classmethod
    def localized(cls, config, states, vector=None, site=None):
        """State supported on one site (the origin by default)."""
        vec = default_internal_state(states) if vector is None else np.asarray(vector, dtype=np.complex128)
        if vec.shape != (states,):
            raise DimensionMismatch(f"internal vector must have {states} entries")
        amp = np.zeros((config.volume, states), dtype=np.complex128)
        amp[0 if site is None else config.index(site)] = vec
        return cls(config, amp)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        d = self.config.d
        writer.writerow([f"x{i + 1}" for i in range(d)] + [f"{p}{j + 1}" for j in range(self.states) for p in ("re", "im")])
        for x, row in zip(self.config.coordinates(), self.amplitudes):
            vals = [f"{v:.17g}" for z in row for v in (z.real, z.imag)]
            writer.writerow([str(int(c)) for c in x] + vals)
        return buf.getvalue()

    def to_dict(self):
        return {
            "d": self.config.d,
            "N": self.config.n_sites,
            "states": self.states,
            "amplitudes": [[[z.real, z.imag] for z in row] for row in self.amplitudes],
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def step(state, walk):
    """One application of the evolution operator."""
    _check_walk(walk, state.config.d)
    if walk.states != state.states:
        raise DimensionMismatch(f"coin has {walk.states} states, state has {state.states}")
    shifts, mats = jumps(walk)
    nbr = neighbor_table(state.config, shifts)
    out = kernels.apply_jumps(state.amplitudes[:, :, None], nbr, mats)
    return WalkState(state.config, out[:, :, 0])


def evolve(state, walk, n):
    """Apply ``step`` n times."""
    return trajectory(state, walk, n)[-1]


def trajectory(state, walk, n):
    """[Psi_0, ..., Psi_n]."""
    if n < 0:
        raise ValueError("number of steps must be >= 0")
    _check_walk(walk, state.config.d)
    if walk.states != state.states:
        raise DimensionMismatch(f"coin has {walk.states} states, state has {state.states}")
    shifts, mats = jumps(walk)
    nbr = neighbor_table(state.config, shifts)
    out = [state]
    field = state.amplitudes[:, :, None]
    for _ in range(n):
        field = kernels.apply_jumps(field, nbr, mats)
        out.append(WalkState(state.config, field[:, :, 0]))
    return out


def measure(state, p=2):
    """mu(x) = sum_j |Psi^j(x)|^p for every site."""
    if p not in (1, 2):
        raise ValueError(f"norm exponent must be 1 or 2, got {p}")
    return (np.abs(state.amplitudes) ** p).sum(axis=1)


@dataclass(frozen=True, eq=False)
class MatrixWeight:
    """Per-site matrix weights Phi_n(x) on a torus or on a finite window of Z^d."""

    weights: np.ndarray
    d: int
    side: int
    offset: int
    periodic: bool

    def at(self, x):
        x = np.asarray(x, dtype=np.int64) + self.offset
        if self.periodic:
            x = np.mod(x, self.side)
        elif ((x < 0) | (x >= self.side)).any():
            return np.zeros(self.weights.shape[1:], dtype=np.complex128)
        return self.weights[np.ravel_multi_index(tuple(x), (self.side,) * self.d)]

    @property
    def origin(self):
        return self.at(np.zeros(self.d, dtype=np.int64))


def _identity_field(n_sites, states, origin_index):
    field = np.zeros((n_sites, states, states), dtype=np.complex128)
    field[origin_index] = np.eye(states)
    return field


def matrix_weight_torus(walk, config, n):
    """Phi_n(x) on every torus site by the path-sum recursion."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _check_walk(walk, config.d)
    shifts, mats = jumps(walk)
    nbr = neighbor_table(config, shifts)
    field = _identity_field(config.volume, walk.states, 0)
    for _ in range(n):
        field = kernels.apply_jumps(field, nbr, mats)
    return MatrixWeight(field, config.d, config.n_sites, 0, True)


def _check_cap(d, r, cap):
    if d > 3:
        raise CapExceeded("infinite-lattice weights are limited to d <= 3")
    cap = INFINITE_CAPS[d] if cap is None else cap
    if r > cap:
        raise CapExceeded(f"r={r} exceeds the cap {cap} for d={d}")


def return_weights_infinite(walk, rmax, cap=None):
    """[Phi_0^(inf)(0), ..., Phi_rmax^(inf)(0)] as an array (rmax+1, dc, dc).

    A path that strays more than rmax//2 from the origin cannot come back by
    time rmax, so the box of that radius with zero boundary is exact.
    """
    d = walk.dim
    _check_cap(d, rmax, cap)
    radius = max(rmax // 2, 1)
    shifts, mats = jumps(walk)
    nbr = _window_table(radius, d, shifts)
    side = 2 * radius + 1
    origin = int(np.ravel_multi_index((radius,) * d, (side,) * d))
    field = _identity_field(side ** d, walk.states, origin)
    out = np.empty((rmax + 1, walk.states, walk.states), dtype=np.complex128)
    out[0] = field[origin]
    for r in range(1, rmax + 1):
        field = kernels.apply_jumps(field, nbr, mats)
        out[r] = field[origin]
    return out


def matrix_weight_infinite(walk, r, cap=None):
    """Return matrix weight Phi_r^(inf)(0) on Z^d."""
    return return_weights_infinite(walk, r, cap)[r]


def matrix_weight_window(walk, r, cap=None):
    """Full field Phi_r^(inf)(x) on the window [-r, r]^d."""
    d = walk.dim
    _check_cap(d, r, cap)
    radius = max(r, 1)
    shifts, mats = jumps(walk)
    nbr = _window_table(radius, d, shifts)
    side = 2 * radius + 1
    field = _identity_field(side ** d, walk.states, int(np.ravel_multi_index((radius,) * d, (side,) * d)))
    for _ in range(r):
        field = kernels.apply_jumps(field, nbr, mats)
    return MatrixWeight(field, d, side, radius, False)


def assemble_MA(walk, config):
    """Sparse (dc*N^d) x (dc*N^d) evolution operator; row block x, column block nbr."""
    _check_walk(walk, config.d)
    dc = walk.states
    size = dc * config.volume
    if size > MA_MAX_SIZE:
        raise SizeExceeded(f"operator size {size} exceeds {MA_MAX_SIZE}")
    shifts, mats = jumps(walk)
    nbr = neighbor_table(config, shifts)
    rows, cols, vals = [], [], []
    ii, jj = np.meshgrid(np.arange(dc), np.arange(dc), indexing="ij")
    sites = np.arange(config.volume)
    for s in range(len(shifts)):
        keep = mats[s] != 0
        bi, bj, bv = ii[keep], jj[keep], mats[s][keep]
        rows.append((sites[:, None] * dc + bi).ravel())
        cols.append((nbr[s][:, None] * dc + bj).ravel())
        vals.append(np.broadcast_to(bv, (config.volume, bv.size)).ravel())
    op = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(size, size)
    )
    return op.tocsr()


@dataclass(frozen=True, eq=False)
class OqrwState:
    """Per-site 2x2 density blocks, vectorized row-major as (rho11, rho12, rho21, rho22)."""

    config: TorusConfig
    rho: np.ndarray

    def __post_init__(self):
        if self.config.d != 1:
            raise DimensionMismatch("OQRW states live on T^1_N")
        rho = np.array(self.rho, dtype=np.complex128)
        if rho.shape != (self.config.volume, 4):
            raise DimensionMismatch(f"rho must have shape ({self.config.volume}, 4)")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_density(cls, config, density, site=0):
        rho = np.zeros((config.volume, 4), dtype=np.complex128)
        rho[config.index([site])] = np.asarray(density, dtype=np.complex128).reshape(4)
        return cls(config, rho)

    def block(self, x):
        return self.rho[self.config.index([x])].reshape(2, 2)


def oqrw_measure(state):
    mu = state.rho[:, 0] + state.rho[:, 3]
    return mu.real


def oqrw_step(state, pair):
    if not isinstance(pair, OqrwPair):
        raise TypeError("oqrw_step needs an OqrwPair")
    shifts, mats = jumps(pair)
    nbr = neighbor_table(state.config, shifts)
    out = kernels.apply_jumps(state.rho[:, :, None], nbr, mats)
    return OqrwState(state.config, out[:, :, 0])


def measures_to_csv(config, mus):
    """Wide CSV: site coordinates, then one column per time step."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"x{i + 1}" for i in range(config.d)] + [f"mu{n}" for n in range(len(mus))])
    table = np.column_stack(mus)
    for x, row in zip(config.coordinates(), table):
        writer.writerow([str(int(c)) for c in x] + [f"{v:.17g}" for v in row])
    return buf.getvalue()


def measures_to_dict(config, mus, p):
    return {
        "d": config.d,
        "N": config.n_sites,
        "p": p,
        "sites": config.coordinates().tolist(),
        "measures": [np.asarray(m, dtype=float).tolist() for m in mus],
    }
