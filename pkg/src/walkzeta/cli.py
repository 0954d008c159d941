"""Command-line front end.

    walk-zeta coin       --model grover --d 2 --shift f
    walk-zeta evolve     --model hadamard --N 16 --steps 10 --format csv
    walk-zeta zeta       --model hadamard --shift f --N 4 --u 0 --u 0.3
    walk-zeta zeta-limit --model sym-rw --u 0.9 --grid-m 256
    walk-zeta cr         --model sym-rw --method closed --rmax 8
    walk-zeta verify     --suite factorization --model hadamard --N 4

Exit status: 0 success, 1 verification failure, 2 bad configuration.
JSON encodes complex numbers as [re, im]; CSV uses separate re/im columns and
%.17g formatting, so every value parses back bit-for-bit.

Output schemas
  coin    json {model, states, shift_kind, entries: [[re, im], ...] row-major}
          csv  i,j,re,im (1-based)
  evolve  json {d, N, p, sites: [[x1..xd], ...], measures: [[mu_n(x) per site], ...]}
          csv  x1..xd,mu0,mu1,...  one row per site, lexicographic order
  zeta, zeta-limit
          json [{u, log_zeta_inv, zeta_inv, imag_residual, grid[, convergence]}, ...]
          csv  u_re,u_im,re,im,imag_residual,grid
  cr      json [{method, values: [{r, c}, ...]}, ...]
          csv  r,re,im,method
  verify  json {suite, passed, checks: [{name, passed, ...}, ...]}
"""
import argparse
import json
import math
import sys

import numpy as np

from . import catalog as cat
from . import coins
from . import walk as wk
from . import zeta as zt
from .errors import WalkZetaError
from .symbol import verify_factorization

MODELS = ("hadamard", "qw", "crw", "rw", "sym-rw", "grover", "fourier", "ps-grover", "grover3", "oqrw", "oqrw-crw")
SUITES = ("factorization", "series", "routes", "catalog", "localization", "conservation", "wraparound", "all")


class ConfigError(Exception):
    pass


def build_walk(model, d=1, shift="m", xi=math.pi / 4):
    """Coin (or OQRW pair) for a CLI model name."""
    kind = coins.ShiftKind.FLIPFLOP if shift == "f" else coins.ShiftKind.MOVING
    one_d = {
        "hadamard": lambda: coins.hadamard_coin(),
        "qw": lambda: coins.qw_coin(xi),
        "crw": lambda: coins.crw_coin(xi),
        "rw": lambda: coins.rw_coin(xi),
        "sym-rw": lambda: coins.symmetric_rw_coin(),
        "grover3": lambda: coins.grover_matrix(3),
    }
    if model in one_d or model in ("oqrw", "oqrw-crw"):
        if d != 1:
            raise ConfigError(f"model {model} lives in d = 1")
    if model in one_d:
        return coins.with_shift(one_d[model](), kind)
    if model == "oqrw":
        return coins.example_oqrw_pair()
    if model == "oqrw-crw":
        c, s = math.cos(xi), math.sin(xi)
        return coins.oqrw_reduce(np.array([[c, 0], [s, 0]]), np.array([[0, s], [0, c]]))
    builders = {"grover": coins.grover_matrix, "fourier": coins.fourier_matrix,
                "ps-grover": coins.positive_support_grover}
    if model not in builders:
        raise ConfigError(f"unknown model {model!r}")
    return coins.with_shift(builders[model](2 * d), kind)


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", default="hadamard", choices=MODELS)
    common.add_argument("--shift", default="m", choices=("m", "f"))
    common.add_argument("--xi", type=float, default=math.pi / 4, help="coin angle in radians")
    common.add_argument("--d", type=int, default=1)
    common.add_argument("--N", type=int, default=8, dest="n_sites")
    common.add_argument("--format", default="json", choices=("json", "csv"))
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")

    parser = argparse.ArgumentParser(prog="walk-zeta", description="walk-type zeta functions on the torus")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("coin", parents=[common], help="print the coin matrix")

    p = sub.add_parser("evolve", parents=[common], help="dump measures mu_0..mu_n")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--p", type=int, choices=(1, 2), default=None)

    p = sub.add_parser("zeta", parents=[common], help="zeta^{-1}(u) on T^d_N")
    p.add_argument("--u", type=_complex, action="append", required=True)

    p = sub.add_parser("zeta-limit", parents=[common], help="N -> infinity limit by quadrature")
    p.add_argument("--u", type=_complex, action="append", required=True)
    p.add_argument("--grid-m", type=int, default=256)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("cr", parents=[common], help="series coefficients C_1..C_rmax")
    p.add_argument("--method", action="append", choices=[m.value for m in zt.SeriesMethod])
    p.add_argument("--rmax", type=int, default=16)
    p.add_argument("--grid-m", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="run invariant checks")
    p.add_argument("--suite", default="all", choices=SUITES)
    p.add_argument("--rmax", type=int, default=12)
    return parser


def _validate(args):
    if args.n_sites < 2:
        raise ConfigError("N must be >= 2")
    if args.d not in (1, 2, 3):
        raise ConfigError("d must be 1, 2 or 3")
    if getattr(args, "rmax", None) is not None and not 1 <= args.rmax <= zt.RMAX:
        raise ConfigError(f"rmax must be in [1, {zt.RMAX}]")
    if getattr(args, "steps", 0) < 0:
        raise ConfigError("steps must be >= 0")


def _emit(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _matrix_csv(m):
    lines = ["i,j,re,im"]
    for (i, j), z in np.ndenumerate(m):
        lines.append(f"{i + 1},{j + 1},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"


def cmd_coin(args, walk):
    if isinstance(walk, coins.OqrwPair):
        if args.format == "csv":
            return _matrix_csv(walk.lifted_b) + _matrix_csv(walk.lifted_c)
        enc = lambda m: [[z.real, z.imag] for z in m.ravel()]  # noqa: E731
        return _dump({"model": "oqrw", "states": 4, "b": enc(walk.b), "c": enc(walk.c),
                      "lifted_b": enc(walk.lifted_b), "lifted_c": enc(walk.lifted_c)})
    if args.format == "csv":
        return _matrix_csv(walk.matrix)
    return _dump(walk.to_dict())


def cmd_evolve(args, walk):
    config = wk.TorusConfig(args.d, args.n_sites)
    p = args.p or wk.default_norm_exponent(walk)
    if isinstance(walk, coins.OqrwPair):
        state = wk.OqrwState.from_density(config, np.diag([1.0, 0.0]))
        mus = [wk.oqrw_measure(state)]
        for _ in range(args.steps):
            state = wk.oqrw_step(state, walk)
            mus.append(wk.oqrw_measure(state))
    else:
        start = wk.WalkState.localized(config, walk.states, wk.default_internal_state(walk.states, p))
        mus = [wk.measure(s, p) for s in wk.trajectory(start, walk, args.steps)]
    if args.format == "csv":
        return wk.measures_to_csv(config, mus)
    return _dump(wk.measures_to_dict(config, mus, p))


def cmd_zeta(args, walk):
    config = wk.TorusConfig(args.d, args.n_sites)
    evals = [zt.zeta_inv_finite(walk, config, u) for u in args.u]
    return _evals_out(args, evals)


def cmd_zeta_limit(args, walk):
    evals = [zt.zeta_inv_limit(walk, u, args.grid_m, d=args.d, tol=args.tol) for u in args.u]
    return _evals_out(args, evals)


def _evals_out(args, evals):
    if args.format == "csv":
        lines = ["u_re,u_im,re,im,imag_residual,grid"]
        for e in evals:
            z = e.zeta_inv
            lines.append(f"{e.u.real:.17g},{e.u.imag:.17g},{z.real:.17g},{z.imag:.17g},{e.imag_residual:.17g},{e.grid}")
        return "\n".join(lines) + "\n"
    return _dump([e.to_dict() for e in evals])


def cmd_cr(args, walk):
    methods = args.method or ["fourier"]
    config = wk.TorusConfig(args.d, args.n_sites)
    tables = [zt.series(walk, m, args.rmax, config=config, grid_m=args.grid_m) for m in methods]
    if args.format == "csv":
        return zt.tables_to_csv(tables)
    return _dump([t.to_dict() for t in tables])


def _suite_checks(args, walk, suite):
    config = wk.TorusConfig(args.d, args.n_sites)
    checks = []
    if suite in ("factorization", "all"):
        rep = verify_factorization(walk, config, [0.1, 0.3j, 0.2 + 0.2j, -0.25, 0.15 - 0.35j, 0.05j])
        checks.append({"name": "factorization", "passed": rep.max_rel_err < 1e-8, **rep.to_dict()})
    if suite in ("series", "all"):
        rho = zt.spectral_bound(walk, config.n_sites)
        u_max = 0.7 / rho
        us = [u_max / 3, 2 * u_max / 3]
        rep = zt.series_consistency(walk, config, 30, us)
        checks.append({"name": "series", **rep.to_dict()})
    if suite in ("routes", "all"):
        rmax = args.rmax
        lim = zt.c_r_limit(walk, rmax).values
        dp = zt.c_r_dp(walk, rmax).values
        err = float(np.abs(lim - dp).max())
        checks.append({"name": "routes_quadrature_vs_dp", "max_err": err, "passed": err < 1e-9})
        if config.volume * walk.states <= 1024:
            r_small = min(rmax, config.n_sites - 1)
            four = zt.c_r_fourier(walk, config, r_small).values
            direct = zt.c_r_direct(walk, config, r_small).values
            err = float(np.abs(four - direct).max())
            checks.append({"name": "routes_fourier_vs_direct", "max_err": err, "passed": err < 1e-9})
    if suite in ("catalog", "all"):
        for entry in cat.catalog(args.xi):
            rep = cat.catalog_verify(entry)
            ok = rep.passed or (entry.id == "ps-grover-3d-m" and bool(rep.matching_variants))
            checks.append({"name": f"catalog:{entry.id}", **rep.to_dict(), "passed": ok})
    if suite in ("localization", "all"):
        for entry in cat.catalog(args.xi):
            if entry.prefactor.degree() > 0:
                rem = cat.localization_remainder(entry)
                checks.append({"name": f"localization:{entry.id}", "max_remainder": rem, "passed": rem < 1e-9})
    if suite in ("conservation", "all") and not isinstance(walk, coins.OqrwPair):
        p = wk.default_norm_exponent(walk)
        start = wk.WalkState.localized(config, walk.states, wk.default_internal_state(walk.states, p))
        totals = [wk.measure(s, p).sum() for s in wk.trajectory(start, walk, 50)]
        drift = float(np.abs(np.array(totals) - totals[0]).max())
        conserving = walk.model in coins.UNITARY | coins.STOCHASTIC
        checks.append({"name": "conservation", "p": p, "drift": drift, "applicable": conserving,
                       "passed": drift < 1e-10 if conserving else True})
    if suite in ("wraparound", "all"):
        n = config.n_sites
        if config.volume * walk.states <= 4096 and n <= zt.RMAX:
            four = zt.c_r_fourier(walk, config, n).values
            lim = zt.c_r_limit(walk, n).values
            err = float(np.abs(four[: n - 1] - lim[: n - 1]).max()) if n > 1 else 0.0
            checks.append({"name": "wraparound_below_N", "max_err": err, "passed": err < 1e-10,
                           "difference_at_N": abs(complex(four[n - 1] - lim[n - 1]))})
    return checks


def cmd_verify(args, walk):
    checks = _suite_checks(args, walk, args.suite)
    ok = all(c["passed"] for c in checks)
    return _dump({"suite": args.suite, "passed": ok, "checks": checks}), 0 if ok else 1


COMMANDS = {
    "coin": cmd_coin,
    "evolve": cmd_evolve,
    "zeta": cmd_zeta,
    "zeta-limit": cmd_zeta_limit,
    "cr": cmd_cr,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        walk = build_walk(args.model, args.d, args.shift, args.xi)
        result = COMMANDS[args.command](args, walk)
    except (ConfigError, WalkZetaError, ValueError) as exc:
        print(f"walk-zeta: error: {exc}", file=sys.stderr)
        return 2
    text, status = result if isinstance(result, tuple) else (result, 0)
    _emit(args, text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
