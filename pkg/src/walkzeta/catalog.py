"""Explicit det(I - u M(w)) polynomials for the standard coin families.

Each entry factors the determinant as ``prefactor(u) * F(w, u)``; the
prefactor carries the u-roots that do not depend on w (localization). Every
entry stores the formula as printed in the literature under the variant name
``printed``. Where the printed form does not reproduce the determinant, a
corrected variant is stored next to it and ``catalog_verify`` reports the
residual of each.
"""
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from numpy.polynomial import Polynomial

from .coins import (
    ShiftKind,
    crw_coin,
    example_oqrw_pair,
    fourier_matrix,
    grover_matrix,
    oqrw_reduce,
    positive_support_grover,
    qw_coin,
    rw_coin,
    symmetric_rw_coin,
    three_state_grover,
    with_shift,
)
from .errors import DimensionMismatch
from .symbol import det_one_minus_u, det_polynomial, symbol

MATCH_TOL = 1e-9
DEFAULT_XI = 0.6


def elementary_symmetric(j, xs):
    """e_j(x_1, ..., x_n); e_0 = 1."""
    xs = list(xs)
    if j == 0:
        return 1.0
    return sum(np.prod(c) for c in combinations(xs, j))


def e_cos(j, n, w):
    """e_j^{(n)} evaluated at (cos w_1, ..., cos w_n); uses the first n angles of w."""
    w = np.asarray(w, dtype=np.float64)
    if len(w) < n:
        raise DimensionMismatch(f"e_{j}^({n}, cos) needs at least {n} angles")
    return elementary_symmetric(j, np.cos(w[:n]))


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    id: str
    d: int
    shift: ShiftKind
    walk: object = field(repr=False)
    prefactor: Polynomial = field(repr=False)
    variants: dict = field(repr=False)
    primary: str = "printed"
    note: str = ""

    @property
    def f_poly(self):
        return self.variants[self.primary]


def catalog_f(entry, w, u):
    """prefactor(u) * F(w, u) for the entry's primary variant."""
    w = np.atleast_1d(np.asarray(w, dtype=np.float64))
    if w.shape != (entry.d,):
        raise DimensionMismatch(f"{entry.id} takes {entry.d} angles, got {w.shape[0]}")
    return complex(entry.prefactor(u) * entry.f_poly(w, u))


ONE = Polynomial([1.0])


def _loc(d_minus_1):
    """(1 - u^2)^k."""
    return Polynomial([1.0, 0.0, -1.0]) ** d_minus_1


def _one_d(xi):
    c, s = np.cos(xi), np.sin(xi)
    c2, s2 = c * c, s * s
    cos, sin = np.cos, np.sin
    qw_m = lambda w, u: 1 - 2j * c * sin(w[0]) * u - u**2  # noqa: E731
    qw_f = lambda w, u: 1 - 2 * s * cos(w[0]) * u + u**2  # noqa: E731
    crw_m = lambda w, u: 1 - 2 * c2 * cos(w[0]) * u + np.cos(2 * xi) * u**2  # noqa: E731
    crw_f = lambda w, u: 1 - 2 * s2 * cos(w[0]) * u - np.cos(2 * xi) * u**2  # noqa: E731
    rw_m = lambda w, u: 1 - (2j * c2 * sin(w[0]) + np.exp(-1j * w[0])) * u  # noqa: E731
    rw_f = lambda w, u: 1 + (2j * c2 * sin(w[0]) - np.exp(1j * w[0])) * u  # noqa: E731
    sym = lambda w, u: 1 - cos(w[0]) * u  # noqa: E731

    def grover3(gamma):
        sign = (-1) ** gamma
        return lambda w, u: 1 - sign * 2 / 3 * (1 + 2 * cos(w[0]) + gamma * (1 - cos(w[0]))) * u + u**2

    def oqrw(w, u):
        cw = cos(w[0])
        return (
            1
            - 8 * cw / 3 * u
            + (8 * cw**2 + 1) / 3 * u**2
            - 16 / 27 * cw * (2 * cw**2 + 1) * u**3
            + 4 / 81 * cw**2 * (4 * cw**2 + 5) * u**4
        )

    reduced = oqrw_reduce(np.array([[c, 0], [s, 0]]), np.array([[0, s], [0, c]]))
    m, f = ShiftKind.MOVING, ShiftKind.FLIPFLOP
    return [
        CatalogEntry("qw-1d-m", 1, m, qw_coin(xi), ONE, {"printed": qw_m}),
        CatalogEntry("qw-1d-f", 1, f, with_shift(qw_coin(xi), f), ONE, {"printed": qw_f}),
        CatalogEntry("crw-1d-m", 1, m, crw_coin(xi), ONE, {"printed": crw_m}),
        CatalogEntry("crw-1d-f", 1, f, with_shift(crw_coin(xi), f), ONE, {"printed": crw_f}),
        CatalogEntry("rw-1d-m", 1, m, rw_coin(xi), ONE, {"printed": rw_m}),
        CatalogEntry("rw-1d-f", 1, f, with_shift(rw_coin(xi), f), ONE, {"printed": rw_f}),
        CatalogEntry("sym-rw-1d-m", 1, m, symmetric_rw_coin(), ONE, {"printed": sym}),
        CatalogEntry("sym-rw-1d-f", 1, f, with_shift(symmetric_rw_coin(), f), ONE, {"printed": sym}),
        CatalogEntry("grover3-1d-m", 1, m, three_state_grover(m), Polynomial([1.0, -1.0]), {"printed": grover3(1)},
                     note="prefactor (1 - u): localization"),
        CatalogEntry("grover3-1d-f", 1, f, three_state_grover(f), Polynomial([1.0, 1.0]), {"printed": grover3(0)},
                     note="prefactor (1 + u): localization"),
        CatalogEntry("oqrw-1d", 1, m, example_oqrw_pair(), ONE, {"printed": oqrw},
                     note="B = [[1,1],[0,1]]/sqrt3, C = [[1,0],[-1,1]]/sqrt3"),
        CatalogEntry("oqrw-crw-1d", 1, m, reduced, ONE, {"printed": crw_m},
                     note="column-structured OQRW reduced to a 2-state walk"),
    ]


def _two_d():
    cos, sin = np.cos, np.sin
    m, f = ShiftKind.MOVING, ShiftKind.FLIPFLOP
    g4 = grover_matrix(4)
    f4 = fourier_matrix(4)
    ps4 = positive_support_grover(4)

    def fourier_m(u2_sign):
        def fn(w, u):
            s = cos(w[0]) + sin(w[0]) + cos(w[1]) + sin(w[1])
            return (
                1
                - (1 + 1j) / 2 * s * u
                - (1 - 1j) / 2 * (1 + u2_sign * cos(w[0] - w[1])) * u**2
                + (1 + 1j) / 2 * s * u**3
                - 1j * u**4
            )

        return fn

    def fourier_f(w, u):
        s = cos(w[0]) - cos(w[1])
        return 1 - s * u + (1 - 1j) / 2 * (1 - cos(w[0] - w[1])) * u**2 + 1j * s * u**3 - 1j * u**4

    return [
        CatalogEntry("grover-2d-m", 2, m, g4, _loc(1),
                     {"printed": lambda w, u: 1 + (cos(w[0]) + cos(w[1])) * u + u**2}),
        CatalogEntry("grover-2d-f", 2, f, with_shift(g4, f), _loc(1),
                     {"printed": lambda w, u: 1 - (cos(w[0]) + cos(w[1])) * u + u**2}),
        CatalogEntry("fourier-2d-m", 2, m, f4, ONE,
                     {"printed": fourier_m(-1), "sign_corrected": fourier_m(+1)}, primary="sign_corrected",
                     note="printed u^2 term carries (1 - cos(w1 - w2)); the determinant has (1 + cos(w1 - w2))"),
        CatalogEntry("fourier-2d-f", 2, f, with_shift(f4, f), ONE, {"printed": fourier_f}),
        CatalogEntry("ps-grover-2d-m", 2, m, ps4, ONE, {"printed": lambda w, u: (
            1 - 2 * (1 + 2 * cos(w[0]) * cos(w[1])) * u**2 - 4 * (cos(w[0]) + cos(w[1])) * u**3 - 3 * u**4)}),
        CatalogEntry("ps-grover-2d-f", 2, f, with_shift(ps4, f), _loc(1),
                     {"printed": lambda w, u: 1 - 2 * (cos(w[0]) + cos(w[1])) * u + 3 * u**2}),
    ]


def _general_d(dims):
    out = []
    f = ShiftKind.FLIPFLOP
    for d in dims:
        out.append(CatalogEntry(
            f"grover-f-d{d}", d, f, with_shift(grover_matrix(2 * d), f), _loc(d - 1),
            {"printed": lambda w, u, d=d: 1 - 2 / d * e_cos(1, d, w) * u + u**2},
        ))
        out.append(CatalogEntry(
            f"ps-grover-f-d{d}", d, f, with_shift(positive_support_grover(2 * d), f), _loc(d - 1),
            {"printed": lambda w, u, d=d: 1 - 2 * e_cos(1, d, w) * u + (2 * d - 1) * u**2},
        ))
    return out


def _three_d():
    m = ShiftKind.MOVING

    def grover_m(w, u):
        e1, e2 = e_cos(1, 3, w), e_cos(2, 3, w)
        return 1 + 4 / 3 * e1 * u + (2 + 4 / 3 * e2) * u**2 + 4 / 3 * e1 * u**3 + u**4

    def ps_m(n_u5):
        def fn(w, u):
            e1, e2, e3 = (e_cos(j, 3, w) for j in (1, 2, 3))
            return (
                1
                - (3 + 4 * e2) * u**2
                - 8 * (e1 + 2 * e3) * u**3
                - 3 * (3 + 4 * e2) * u**4
                - 8 * e_cos(1, n_u5, w) * u**5
                - 5 * u**6
            )

        return fn

    return [
        CatalogEntry("grover-3d-m", 3, m, grover_matrix(6), _loc(1), {"printed": grover_m}),
        CatalogEntry("ps-grover-3d-m", 3, m, positive_support_grover(6), ONE,
                     {"printed": ps_m(2), "e1_3_substitution": ps_m(3)},
                     note="printed u^5 coefficient uses e_1^(2,cos) inside a d=3 formula"),
    ]


def catalog(xi=DEFAULT_XI):
    """All catalog entries; the 1D QW/CRW/RW families use angle ``xi``."""
    return _one_d(xi) + _two_d() + _general_d((1, 2, 3)) + _three_d()


def get_entry(entry_id, xi=DEFAULT_XI):
    for e in catalog(xi):
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


@dataclass
class CatalogReport:
    entry_id: str
    primary: str
    max_err: float
    variant_errors: dict
    matching_variants: list
    passed: bool

    def to_dict(self):
        return {
            "entry": self.entry_id,
            "primary": self.primary,
            "max_err": self.max_err,
            "variant_errors": self.variant_errors,
            "matching_variants": self.matching_variants,
            "passed": self.passed,
        }


def catalog_verify(entry, samples=100, seed=0, tol=MATCH_TOL, u_radius=0.9):
    """Compare every variant of ``entry`` with a direct determinant at random (w, u)."""
    rng = np.random.default_rng(seed)
    errors = {name: 0.0 for name in entry.variants}
    for _ in range(samples):
        w = rng.uniform(0, 2 * np.pi, entry.d)
        u = u_radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        target = det_one_minus_u(symbol(entry.walk, w), u)
        pre = entry.prefactor(u)
        for name, fn in entry.variants.items():
            errors[name] = max(errors[name], abs(pre * fn(w, u) - target))
    matching = [name for name, err in errors.items() if err < tol]
    max_err = errors[entry.primary]
    return CatalogReport(entry.id, entry.primary, max_err, errors, matching, max_err < tol)


def localization_remainder(entry, points=50, seed=0):
    """Largest remainder of det(I - u M(w)) / prefactor(u) over ``points`` momenta.

    d = 1 uses the uniform grid 2*pi*j/points; higher d draws seeded uniform angles.
    """
    if entry.d == 1:
        ws = 2 * np.pi * np.arange(points)[:, None] / points
    else:
        ws = np.random.default_rng(seed).uniform(0, 2 * np.pi, (points, entry.d))
    worst = 0.0
    for w in ws:
        _, rem = divmod(det_polynomial(symbol(entry.walk, w)), entry.prefactor)
        worst = max(worst, float(np.abs(rem.coef).max()))
    return worst
