"""numba-compiled kernels mirroring ``_numpy``.

Every prange loop writes disjoint outputs, so results do not depend on the
thread count.
"""
import os

import numba as nb
import numpy as np

from ._numpy import PIVOT_FLOOR

# the system TBB is too old for numba; prefer OpenMP unless the user chose a layer
if "NUMBA_THREADING_LAYER" not in os.environ:
    nb.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

_threads = os.environ.get("WALK_ZETA_THREADS")
if _threads:
    nb.set_num_threads(max(1, min(int(_threads), nb.config.NUMBA_NUM_THREADS)))

# fastmath off: reassociation would break bit-reproducibility
njit = nb.njit(cache=True, parallel=True, fastmath=False)
njit_serial = nb.njit(cache=True, fastmath=False)


@njit
def apply_jumps(field, nbr, mats):
    n_sites, dc, m = field.shape
    n_jumps = nbr.shape[0]
    out = np.zeros_like(field)
    for x in nb.prange(n_sites):
        for s in range(n_jumps):
            y = nbr[s, x]
            if y < 0:
                continue
            for i in range(dc):
                for c in range(m):
                    acc = 0j
                    for j in range(dc):
                        acc += mats[s, i, j] * field[y, j, c]
                    out[x, i, c] += acc
    return out


@njit
def symbol_stack(ks, shifts, mats):
    n_k, d = ks.shape
    n_jumps, dc, _ = mats.shape
    out = np.zeros((n_k, dc, dc), dtype=np.complex128)
    for k in nb.prange(n_k):
        for s in range(n_jumps):
            angle = 0.0
            for a in range(d):
                angle += ks[k, a] * shifts[s, a]
            ph = np.cos(angle) + 1j * np.sin(angle)
            for i in range(dc):
                for j in range(dc):
                    out[k, i, j] += ph * mats[s, i, j]
    return out


@njit_serial
def _lu_det(a):
    n = a.shape[0]
    det = 1.0 + 0j
    for j in range(n):
        piv = j
        best = abs(a[j, j])
        for i in range(j + 1, n):
            v = abs(a[i, j])
            if v > best:
                best = v
                piv = i
        if best < PIVOT_FLOOR:
            return 0j
        if piv != j:
            for c in range(n):
                t = a[j, c]
                a[j, c] = a[piv, c]
                a[piv, c] = t
            det = -det
        p = a[j, j]
        det *= p
        for i in range(j + 1, n):
            f = a[i, j] / p
            for c in range(j + 1, n):
                a[i, c] -= f * a[j, c]
    return det


@njit
def det_stack(stack):
    n_mat = stack.shape[0]
    out = np.empty(n_mat, dtype=np.complex128)
    for k in nb.prange(n_mat):
        out[k] = _lu_det(stack[k].copy())
    return out


@njit
def trace_powers(stack, rmax):
    n_mat, n, _ = stack.shape
    out = np.empty((n_mat, rmax), dtype=np.complex128)
    for k in nb.prange(n_mat):
        base = stack[k]
        power = base.copy()
        nxt = np.empty_like(power)
        for r in range(rmax):
            tr = 0j
            for i in range(n):
                tr += power[i, i]
            out[k, r] = tr
            if r + 1 < rmax:
                for i in range(n):
                    for j in range(n):
                        acc = 0j
                        for l in range(n):
                            acc += power[i, l] * base[l, j]
                        nxt[i, j] = acc
                power, nxt = nxt, power
    return out
