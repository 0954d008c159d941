"""Time the numpy and numba kernel backends on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 5]

First numba call is reported separately since it includes JIT compilation
(cached on disk after the first run).
"""
import argparse
import time

import numpy as np

from walkzeta import coins, kernels
from walkzeta.coins import jumps
from walkzeta.symbol import grid_angles
from walkzeta.walk import TorusConfig, neighbor_table


def workloads():
    grover3d = coins.flip_flop(coins.grover_matrix(6))
    shifts, mats = jumps(grover3d)
    ks = grid_angles(3, 40)
    stack = kernels._BACKENDS["numpy"].symbol_stack(ks, shifts, mats)
    eye = np.eye(6)[None]
    cfg = TorusConfig(3, 40)
    field = np.zeros((cfg.volume, 6, 1), dtype=np.complex128)
    field[0, :, 0] = 1 / np.sqrt(6)
    nbr = neighbor_table(cfg, shifts)
    return {
        "symbol_stack 64000 x 6x6": ("symbol_stack", (ks, shifts, mats)),
        "det_stack 64000 x 6x6": ("det_stack", (eye - 0.3 * stack,)),
        "trace_powers 64000 x 6x6, r<=24": ("trace_powers", (stack, 24)),
        "apply_jumps T^3_40, 6 states": ("apply_jumps", (field, nbr, mats)),
    }


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {backends}")
    for label, (name, call_args) in workloads().items():
        row = [f"{label:<34}"]
        for b in backends:
            fn = getattr(kernels._BACKENDS[b], name)
            t0 = time.perf_counter()
            first = fn(*call_args)
            warm = time.perf_counter() - t0
            best = best_of(fn, call_args, args.repeat)
            row.append(f"{b} {best * 1e3:9.2f} ms (first {warm * 1e3:8.1f} ms)")
            if b == backends[0]:
                ref = first
            else:
                err = np.abs(first - ref).max() / max(np.abs(ref).max(), 1e-300)
                row.append(f"rel diff {err:.1e}")
        print("  ".join(row))


if __name__ == "__main__":
    main()
