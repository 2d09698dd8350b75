"""Pure-numpy alternating minimizer for <x(x)y| J |x(x)y> over unit product vectors.

For fixed y the form is a hermitian quadratic in x, minimized by the lowest
eigenvector of the d x d effective matrix A(y)[i,k] = sum_{j,l} conj(y_j) J4[i,j,k,l] y_l,
and symmetrically for y.  Restarts are processed as one batch; a restart is
frozen once its value changes by less than ``tol`` between sweeps.
"""

from __future__ import annotations

import numpy as np


def block_search(j: np.ndarray, xs: np.ndarray, ys: np.ndarray, iters: int, tol: float):
    """Run the alternation from each start row; returns (values, xs, ys) after convergence."""
    n_restarts, d = xs.shape
    j4 = np.ascontiguousarray(j.reshape(d, d, d, d))
    xs = np.array(xs, dtype=complex)
    ys = np.array(ys, dtype=complex)
    vals = np.real(np.einsum("ri,rj,ijkl,rk,rl->r", xs.conj(), ys.conj(), j4, xs, ys))
    active = np.ones(n_restarts, dtype=bool)
    for _ in range(iters):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        y = ys[idx]
        a = np.einsum("rj,ijkl,rl->rik", y.conj(), j4, y)
        a = 0.5 * (a + np.conj(np.transpose(a, (0, 2, 1))))
        _, v = np.linalg.eigh(a)
        xs[idx] = v[:, :, 0]
        x = xs[idx]
        b = np.einsum("ri,ijkl,rk->rjl", x.conj(), j4, x)
        b = 0.5 * (b + np.conj(np.transpose(b, (0, 2, 1))))
        w, v = np.linalg.eigh(b)
        ys[idx] = v[:, :, 0]
        new_vals = w[:, 0]
        converged = np.abs(new_vals - vals[idx]) < tol
        vals[idx] = new_vals
        active[idx[converged]] = False
    return vals, xs, ys
