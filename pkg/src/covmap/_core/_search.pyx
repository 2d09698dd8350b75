# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled alternating minimizer for <x(x)y| J |x(x)y>; mirrors search_py.block_search."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs
from scipy.linalg.cython_lapack cimport zheev

cnp.import_array()

DEF MAXD = 8
DEF LWORK = 64


cdef inline double _quad_form(double complex* j, double complex* x, double complex* y, int d) nogil:
    cdef int i, jj, k, l
    cdef double complex acc = 0
    for i in range(d):
        for jj in range(d):
            for k in range(d):
                for l in range(d):
                    acc = acc + x[i].conjugate() * y[jj].conjugate() * j[(i * d + jj) * d * d + k * d + l] * x[k] * y[l]
    return acc.real


cdef inline int _min_eigvec(double complex* a, int d, double* w,
                            double complex* work, double* rwork) nogil:
    # a holds the hermitian matrix column-major on entry, its eigenvectors on exit
    cdef int n = d, lda = d, lwork = LWORK, info = 0
    cdef char jobz = 86  # 'V'
    cdef char uplo = 76  # 'L'
    zheev(&jobz, &uplo, &n, a, &lda, w, work, &lwork, rwork, &info)
    return info


def block_search(double complex[:, ::1] j, double complex[:, ::1] xs0, double complex[:, ::1] ys0,
                 int iters, double tol):
    """Run the alternation from each start row; returns (values, xs, ys) after convergence."""
    cdef Py_ssize_t n_restarts = xs0.shape[0]
    cdef int d = <int>xs0.shape[1]
    if d > MAXD:
        raise ValueError(f"compiled block_search supports map dimension up to {MAXD}")
    if j.shape[0] != d * d or j.shape[1] != d * d:
        raise ValueError("J must be (d*d, d*d) for (restarts, d) starts")

    vals_arr = np.empty(n_restarts, dtype=np.float64)
    xs_arr = np.array(xs0, dtype=np.complex128, copy=True)
    ys_arr = np.array(ys0, dtype=np.complex128, copy=True)
    cdef double[::1] vals = vals_arr
    cdef double complex[:, ::1] xs = xs_arr
    cdef double complex[:, ::1] ys = ys_arr

    cdef double complex a[MAXD * MAXD]
    cdef double complex work[LWORK]
    cdef double w[MAXD]
    cdef double rwork[3 * MAXD]
    cdef double complex x[MAXD]
    cdef double complex y[MAXD]
    cdef double complex acc
    cdef double prev, cur
    cdef Py_ssize_t r
    cdef int it, i, jj, k, l, info
    cdef double complex* jp = &j[0, 0]

    for r in range(n_restarts):
        for i in range(d):
            x[i] = xs[r, i]
            y[i] = ys[r, i]
        prev = _quad_form(jp, x, y, d)
        cur = prev
        for it in range(iters):
            # x step: effective matrix over the first slot, filled column-major
            for i in range(d):
                for k in range(d):
                    acc = 0
                    for jj in range(d):
                        for l in range(d):
                            acc = acc + y[jj].conjugate() * jp[(i * d + jj) * d * d + k * d + l] * y[l]
                    a[k * d + i] = acc
            info = _min_eigvec(a, d, w, work, rwork)
            if info != 0:
                raise RuntimeError(f"zheev failed with info={info}")
            for i in range(d):
                x[i] = a[i]
            # y step
            for jj in range(d):
                for l in range(d):
                    acc = 0
                    for i in range(d):
                        for k in range(d):
                            acc = acc + x[i].conjugate() * jp[(i * d + jj) * d * d + k * d + l] * x[k]
                    a[l * d + jj] = acc
            info = _min_eigvec(a, d, w, work, rwork)
            if info != 0:
                raise RuntimeError(f"zheev failed with info={info}")
            for i in range(d):
                y[i] = a[i]
            cur = w[0]
            if fabs(cur - prev) < tol:
                break
            prev = cur
        vals[r] = cur
        for i in range(d):
            xs[r, i] = x[i]
            ys[r, i] = y[i]
    return vals_arr, xs_arr, ys_arr
