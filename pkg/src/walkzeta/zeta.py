"""The walk-type zeta function and its logarithmic-derivative coefficients C_r.

``zeta_inv_finite`` evaluates exp[(1/N^d) sum_k Log det(I - u M(k))] on the
torus grid; ``zeta_inv_limit`` does the same on a uniform quadrature grid and
checks self-convergence. The coefficients C_r come from five routes:

* ``fourier``    mean over the torus grid of Tr M(k)^r
* ``direct``     Tr(M_A^r) / N^d from the sparse position-space operator
* ``quadrature`` the grid mean on an M-point grid, exact for r < M
* ``dp``         Tr Phi_r(0) on Z^d by the path-sum recursion
* ``closed``     the hypergeometric closed form (2-state, d = 1)
"""
import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .closed_forms import c_2l_closed_1d
from .errors import (
    BranchRiskWarning,
    DetNearZero,
    DimensionMismatch,
    GridTooCoarse,
    NotConverged,
    RadiusViolation,
    SizeExceeded,
)
from .symbol import DENSE_MAX, conjugate_partner, det_one_minus_u_stack, grid_angles, iter_symbol_chunks
from .walk import assemble_MA, return_weights_infinite

RMAX = 64
DET_FLOOR = 1e-12
SERIES_RADIUS = 0.8


class SeriesMethod(str, Enum):
    FOURIER = "fourier"
    DIRECT = "direct"
    DP = "dp"
    CLOSED = "closed"
    QUADRATURE = "quadrature"


def _cjson(z):
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class ZetaEvaluation:
    u: complex
    log_zeta_inv: complex
    zeta_inv: complex
    imag_residual: float
    grid: str
    convergence: dict = None

    @property
    def zeta(self):
        if abs(self.zeta_inv) < DET_FLOOR:
            raise DetNearZero("zeta^{-1} vanishes; zeta has a pole here")
        return 1 / self.zeta_inv

    def to_dict(self):
        out = {
            "u": _cjson(self.u),
            "log_zeta_inv": _cjson(self.log_zeta_inv),
            "zeta_inv": _cjson(self.zeta_inv),
            "imag_residual": self.imag_residual,
            "grid": self.grid,
        }
        if self.convergence is not None:
            out["convergence"] = self.convergence
        return out


def _check_dim(walk, d):
    if d is not None and d != walk.dim:
        raise DimensionMismatch(f"walk lives in d={walk.dim}, asked for d={d}")


def mean_log_det(walk, n, u):
    """(1/n^d) sum_k Log det(I - u M(k)) with k and -k summed adjacently."""
    d = walk.dim
    ks = grid_angles(d, n)
    logs = np.empty(len(ks), dtype=np.complex128)
    start = 0
    for stack in iter_symbol_chunks(walk, ks):
        dets = det_one_minus_u_stack(stack, u)
        mags = np.abs(dets)
        if mags.min() < DET_FLOOR:
            raise DetNearZero(f"det(I - uM(k)) = {dets[mags.argmin()]:.3g} at u={u}")
        if np.any((dets.real < 0) & (np.abs(dets.imag) < 1e-9 * mags)):
            warnings.warn(f"determinant near the negative real axis at u={u}", BranchRiskWarning, stacklevel=3)
        logs[start:start + len(dets)] = np.log(dets)
        start += len(dets)
    partner = conjugate_partner(d, n)
    i = np.arange(len(ks))
    paired = np.where(partner > i, logs + logs[partner], np.where(partner == i, logs, 0.0))
    return complex(paired.sum()) / len(ks)


def zeta_inv_finite(walk, config, u):
    _check_dim(walk, config.d)
    u = complex(u)
    log_val = mean_log_det(walk, config.n_sites, u)
    return ZetaEvaluation(u, log_val, complex(np.exp(log_val)), abs(log_val.imag), f"torus N={config.n_sites}")


def zeta_inv_limit(walk, u, grid_m, d=None, tol=1e-9):
    """N -> infinity limit by the periodic trapezoid rule on an M^d grid, checked against 2M."""
    _check_dim(walk, d)
    if grid_m < 2:
        raise ValueError("grid_m must be >= 2")
    u = complex(u)
    coarse = mean_log_det(walk, grid_m, u)
    fine = mean_log_det(walk, 2 * grid_m, u)
    v_coarse, v_fine = complex(np.exp(coarse)), complex(np.exp(fine))
    rel = abs(v_fine - v_coarse) / max(abs(v_fine), 1e-300)
    report = {
        "grid_m": grid_m,
        "grid_2m": 2 * grid_m,
        "value_m": _cjson(v_coarse),
        "value_2m": _cjson(v_fine),
        "rel_diff": rel,
        "tol": tol,
    }
    if rel > tol:
        raise NotConverged(f"M={grid_m} and 2M disagree by {rel:.3g} (tol {tol:.1g})")
    return ZetaEvaluation(u, coarse, v_coarse, abs(coarse.imag), f"quadrature M={grid_m}", report)


@dataclass
class SeriesTable:
    method: SeriesMethod
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.method = SeriesMethod(self.method)
        self.values = np.asarray(self.values, dtype=np.complex128)

    @property
    def rmax(self):
        return len(self.values)

    def c(self, r):
        """C_r, 1-based."""
        return complex(self.values[r - 1])

    def csv_rows(self):
        return [[str(r), f"{z.real:.17g}", f"{z.imag:.17g}", self.method.value] for r, z in enumerate(self.values, 1)]

    def to_csv(self):
        return tables_to_csv([self])

    def to_dict(self):
        return {"method": self.method.value, "values": [{"r": r, "c": _cjson(z)} for r, z in enumerate(self.values, 1)]}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        vals = sorted(data["values"], key=lambda e: e["r"])
        return cls(data["method"], [complex(*e["c"]) for e in vals])


def tables_to_csv(tables):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "re", "im", "method"])
    for t in tables:
        writer.writerows(t.csv_rows())
    return buf.getvalue()


def tables_from_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    out = {}
    for row in rows:
        out.setdefault(row["method"], []).append((int(row["r"]), complex(float(row["re"]), float(row["im"]))))
    return [SeriesTable(m, [z for _, z in sorted(vals)]) for m, vals in out.items()]


def _check_rmax(rmax):
    if not 1 <= rmax <= RMAX:
        raise ValueError(f"rmax must be in [1, {RMAX}], got {rmax}")


def _grid_trace_mean(walk, n, rmax):
    ks = grid_angles(walk.dim, n)
    total = np.zeros(rmax, dtype=np.complex128)
    for stack in iter_symbol_chunks(walk, ks):
        total += kernels.trace_powers(stack, rmax).sum(axis=0)
    return total / len(ks)


def c_r_fourier(walk, config, rmax):
    _check_dim(walk, config.d)
    _check_rmax(rmax)
    return SeriesTable(SeriesMethod.FOURIER, _grid_trace_mean(walk, config.n_sites, rmax))


def c_r_limit(walk, rmax, grid_m=None, d=None):
    """lim_N C_r by quadrature; the integrand is a trigonometric polynomial of degree r."""
    _check_dim(walk, d)
    _check_rmax(rmax)
    grid_m = rmax + 1 if grid_m is None else grid_m
    if grid_m <= rmax:
        raise GridTooCoarse(f"grid_m={grid_m} aliases C_r for r up to {rmax}; need grid_m > rmax")
    return SeriesTable(SeriesMethod.QUADRATURE, _grid_trace_mean(walk, grid_m, rmax))


def c_r_direct(walk, config, rmax):
    _check_rmax(rmax)
    op = assemble_MA(walk, config)
    size = op.shape[0]
    if size > DENSE_MAX:
        raise SizeExceeded(f"direct trace route limited to operator size {DENSE_MAX}, got {size}")
    power = op.toarray()
    out = np.empty(rmax, dtype=np.complex128)
    for r in range(rmax):
        out[r] = np.trace(power)
        if r + 1 < rmax:
            power = op @ power
    return SeriesTable(SeriesMethod.DIRECT, out / config.volume)


def c_r_dp(walk, rmax, cap=None):
    _check_rmax(rmax)
    weights = return_weights_infinite(walk, rmax, cap)
    return SeriesTable(SeriesMethod.DP, np.trace(weights[1:], axis1=1, axis2=2))


def c_r_closed(walk, rmax):
    _check_rmax(rmax)
    out = np.zeros(rmax, dtype=np.complex128)
    for l in range(1, rmax // 2 + 1):
        out[2 * l - 1] = c_2l_closed_1d(walk, l)
    return SeriesTable(SeriesMethod.CLOSED, out)


def series(walk, method, rmax, config=None, grid_m=None):
    method = SeriesMethod(method)
    if method is SeriesMethod.FOURIER:
        return c_r_fourier(walk, config, rmax)
    if method is SeriesMethod.DIRECT:
        return c_r_direct(walk, config, rmax)
    if method is SeriesMethod.QUADRATURE:
        return c_r_limit(walk, rmax, grid_m)
    if method is SeriesMethod.DP:
        return c_r_dp(walk, rmax)
    return c_r_closed(walk, rmax)


def spectral_bound(walk, n):
    """max over the grid of ||M(k)||_inf, an upper bound on every |eigenvalue|."""
    bound = 0.0
    for stack in iter_symbol_chunks(walk, grid_angles(walk.dim, n)):
        bound = max(bound, float(np.abs(stack).sum(axis=2).max()))
    return bound


@dataclass
class SeriesReport:
    max_err: float
    passed: bool
    spectral_bound: float
    samples: list

    def to_dict(self):
        return {
            "max_err": self.max_err,
            "passed": self.passed,
            "spectral_bound": self.spectral_bound,
            "samples": self.samples,
        }


def series_consistency(walk, config, rmax, u_samples, atol=1e-10):
    """Check exp(sum_{r<=rmax} C_r u^r / r) * zeta^{-1}(u) == 1 up to the truncation bound."""
    _check_dim(walk, config.d)
    rho = spectral_bound(walk, config.n_sites)
    for u in u_samples:
        if abs(u) * rho >= SERIES_RADIUS:
            raise RadiusViolation(f"|u| * {rho:.3g} = {abs(u) * rho:.3g} >= {SERIES_RADIUS}")
    table = c_r_fourier(walk, config, rmax)
    r = np.arange(1, rmax + 1)
    samples, worst, ok = [], 0.0, True
    for u in u_samples:
        u = complex(u)
        log_series = complex(np.sum(table.values * u ** r / r))
        zi = zeta_inv_finite(walk, config, u).zeta_inv
        err = abs(np.exp(log_series) * zi - 1)
        x = rho * abs(u)
        bound = walk.states * x ** (rmax + 1) / ((rmax + 1) * (1 - x))
        ok &= err <= bound + atol
        worst = max(worst, err)
        samples.append({"u": _cjson(u), "series_exp": _cjson(np.exp(log_series)), "zeta_inv": _cjson(zi),
                        "err": err, "truncation_bound": bound})
    return SeriesReport(worst, bool(ok), rho, samples)
