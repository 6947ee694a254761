# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled two-qubit sweep kernels.

Same contract as dstrength._kernels_py: per ensemble, the top eigenvalue of
the W matrix of the assembled 4x4 state, via LAPACK zheev/dsyev on stack
buffers.  Releases the GIL so sweep chunks can run on a thread pool.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt
from scipy.linalg.cython_lapack cimport dsyev, zheev

cnp.import_array()

ctypedef double complex zdouble


cdef double _xi_max_from_colmajor(zdouble* a) noexcept nogil:
    """a: 4x4 Hermitian density matrix, column-major; returns xi_max(W)."""
    cdef:
        int n4 = 4, n3 = 3, lwork = 136, lwork3 = 64, info = 0
        char jobz_v = b'V', jobz_n = b'N', uplo = b'L'
        double w[4]
        double rwork[10]
        zdouble work[136]
        double work3[64]
        double w3[3]
        double wmat[9]
        zdouble s[16]
        zdouble m[3][16]
        zdouble acc
        double sq[4]
        Py_ssize_t i, j, k, kb, alpha, beta
    zheev(&jobz_v, &uplo, &n4, a, &n4, w, work, &lwork, rwork, &info)
    if info != 0:
        return -1.0
    # same support cutoff as linalg.mat_pow so all DS paths agree
    for k in range(4):
        sq[k] = sqrt(w[k]) if w[k] > 1e-12 else 0.0
    # S = V diag(sqrt(w)) V^dagger, stored row-major s[4*i + j]
    for i in range(4):
        for j in range(4):
            acc = 0
            for k in range(4):
                acc = acc + a[i + 4 * k] * sq[k] * (a[j + 4 * k].conjugate())
            s[4 * i + j] = acc
    # M_alpha = S (sigma_alpha x I), row-major; composite column (kA, kB)
    for i in range(4):
        for kb in range(2):
            # sigma_x swaps the A blocks
            m[0][4 * i + kb] = s[4 * i + 2 + kb]
            m[0][4 * i + 2 + kb] = s[4 * i + kb]
            # sigma_y: column (0,kB) gets +i S(:, (1,kB)); column (1,kB) gets -i S(:, (0,kB))
            m[1][4 * i + kb] = 1j * s[4 * i + 2 + kb]
            m[1][4 * i + 2 + kb] = -1j * s[4 * i + kb]
            # sigma_z flips the sign of the second A block
            m[2][4 * i + kb] = s[4 * i + kb]
            m[2][4 * i + 2 + kb] = -s[4 * i + 2 + kb]
    for alpha in range(3):
        for beta in range(alpha, 3):
            acc = 0
            for i in range(4):
                for j in range(4):
                    acc = acc + m[alpha][4 * i + j] * m[beta][4 * j + i]
            wmat[alpha + 3 * beta] = acc.real
            wmat[beta + 3 * alpha] = acc.real
    dsyev(&jobz_n, &uplo, &n3, wmat, &n3, w3, work3, &lwork3, &info)
    if info != 0:
        return -1.0
    return w3[2]


cdef void _assemble_colmajor(const double* wts, const double* u, const double* v,
                             Py_ssize_t nterms, zdouble* a) noexcept nogil:
    cdef:
        Py_ssize_t t, ia, ib, ja, jb
        double p
        zdouble pa[4]
        zdouble pb[4]
    for ja in range(16):
        a[ja] = 0
    for t in range(nterms):
        p = wts[t]
        pa[0] = 0.5 * (1.0 + u[3 * t + 2])
        pa[1] = 0.5 * (u[3 * t] - 1j * u[3 * t + 1])   # A[0,1]
        pa[2] = 0.5 * (u[3 * t] + 1j * u[3 * t + 1])   # A[1,0]
        pa[3] = 0.5 * (1.0 - u[3 * t + 2])
        pb[0] = 0.5 * (1.0 + v[3 * t + 2])
        pb[1] = 0.5 * (v[3 * t] - 1j * v[3 * t + 1])
        pb[2] = 0.5 * (v[3 * t] + 1j * v[3 * t + 1])
        pb[3] = 0.5 * (1.0 - v[3 * t + 2])
        for ia in range(2):
            for ib in range(2):
                for ja in range(2):
                    for jb in range(2):
                        # column-major: element (2*ia+ib, 2*ja+jb)
                        a[(2 * ia + ib) + 4 * (2 * ja + jb)] = (
                            a[(2 * ia + ib) + 4 * (2 * ja + jb)]
                            + p * pa[2 * ia + ja] * pb[2 * ib + jb])


def sep_xi_max(double[:, ::1] weights, double[:, :, ::1] u, double[:, :, ::1] v):
    """xi_max(W) per ensemble; DS/sin^2(lambda) = 1 - result."""
    cdef Py_ssize_t n = weights.shape[0], nterms = weights.shape[1], i
    if u.shape[0] != n or v.shape[0] != n or u.shape[1] != nterms or v.shape[1] != nterms:
        raise ValueError("weights, u and v must agree in shape")
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef zdouble a[16]
    with nogil:
        for i in range(n):
            _assemble_colmajor(&weights[i, 0], &u[i, 0, 0], &v[i, 0, 0], nterms, a)
            out[i] = _xi_max_from_colmajor(a)
    return out_arr


def rho_xi_max(zdouble[:, :, ::1] rhos):
    """Top eigenvalue of W for each 4x4 two-qubit density matrix."""
    cdef Py_ssize_t n = rhos.shape[0], i, r, c
    if rhos.shape[1] != 4 or rhos.shape[2] != 4:
        raise ValueError("expected a batch of 4x4 matrices")
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef zdouble a[16]
    with nogil:
        for i in range(n):
            for r in range(4):
                for c in range(4):
                    a[r + 4 * c] = rhos[i, r, c]
            out[i] = _xi_max_from_colmajor(a)
    return out_arr
