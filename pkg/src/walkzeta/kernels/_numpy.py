"""Pure-numpy kernels. Reference path, always available."""
import numpy as np

PIVOT_FLOOR = 1e-14


def apply_jumps(field, nbr, mats):
    """out[x] = sum_s mats[s] @ field[nbr[s, x]], skipping nbr == -1."""
    out = np.zeros_like(field)
    for s in range(nbr.shape[0]):
        idx = nbr[s]
        if (idx >= 0).all():
            out += np.matmul(mats[s], field[idx])
        else:
            valid = idx >= 0
            out[valid] += np.matmul(mats[s], field[idx[valid]])
    return out


def symbol_stack(ks, shifts, mats):
    phases = np.exp(1j * (ks @ shifts.T.astype(np.float64)))
    return np.einsum("ks,sij->kij", phases, mats)


def det_stack(stack):
    a = np.array(stack, dtype=np.complex128, copy=True)
    n_mat, n, _ = a.shape
    det = np.ones(n_mat, dtype=np.complex128)
    singular = np.zeros(n_mat, dtype=bool)
    rows = np.arange(n_mat)
    for j in range(n):
        piv = j + np.argmax(np.abs(a[:, j:, j]), axis=1)
        swap = piv != j
        if swap.any():
            r, pr = rows[swap], piv[swap]
            tmp = a[r, j, :].copy()
            a[r, j, :] = a[r, pr, :]
            a[r, pr, :] = tmp
            det[swap] = -det[swap]
        p = a[:, j, j]
        dead = np.abs(p) < PIVOT_FLOOR
        singular |= dead
        p = np.where(dead, 1.0, p)
        det *= p
        if j + 1 < n:
            f = a[:, j + 1:, j] / p[:, None]
            a[:, j + 1:, j + 1:] -= f[:, :, None] * a[:, None, j, j + 1:]
    det[singular] = 0.0
    return det


def trace_powers(stack, rmax):
    out = np.empty((stack.shape[0], rmax), dtype=np.complex128)
    power = np.array(stack, dtype=np.complex128, copy=True)
    for r in range(rmax):
        out[:, r] = np.einsum("kii->k", power)
        if r + 1 < rmax:
            power = np.matmul(power, stack)
    return out
