# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for Jacobi-type recurrences.

Same recurrence as :mod:`movingpt._kernels_py`, with the per-degree
coefficients computed once so the point loop is division-free.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef double[:, ::1] _coefficients(int n, double a, double b):
    # P_k = (c0 z + c1) P_{k-1} - c2 P_{k-2}; row k holds (c0, c1, c2)
    cdef double[:, ::1] co = np.zeros((max(n + 1, 2), 3))
    cdef double c, k2
    cdef int k
    for k in range(2, n + 1):
        c = 2.0 * k + a + b
        k2 = 2.0 * k * (k + a + b) * (c - 2.0)
        co[k, 0] = (c - 1.0) * c * (c - 2.0) / k2
        co[k, 1] = (c - 1.0) * (a * a - b * b) / k2
        co[k, 2] = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c / k2
    return co


cdef inline void _pair(int n, double a, double b, double z, double[:, ::1] co,
                       double* pn, double* pnm1) noexcept nogil:
    cdef double p0 = 1.0, p1, p2
    cdef int k
    if n == 0:
        pn[0] = 1.0
        pnm1[0] = 0.0
        return
    p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (z - 1.0)
    for k in range(2, n + 1):
        p2 = (co[k, 0] * z + co[k, 1]) * p1 - co[k, 2] * p0
        p0 = p1
        p1 = p2
    pn[0] = p1
    pnm1[0] = p0


def jacobi_pair(int n, double a, double b, z):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef Py_ssize_t m = zz.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_n = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_nm1 = np.empty(m)
    cdef double pn, pnm1
    cdef double[:, ::1] co = _coefficients(n, a, b)
    with nogil:
        for i in range(m):
            _pair(n, a, b, zz[i], co, &pn, &pnm1)
            out_n[i] = pn
            out_nm1[i] = pnm1
    return out_n, out_nm1


def x1_jacobi(int n, double a, double b, z):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef Py_ssize_t m = zz.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef double pn, pnm1, r = (b + a) / (b - a), inv = 1.0 / (b + a + 2.0 * n)
    cdef double[:, ::1] co = _coefficients(n, a, b)
    with nogil:
        for i in range(m):
            _pair(n, a, b, zz[i], co, &pn, &pnm1)
            out[i] = 0.5 * (r - zz[i]) * pn + inv * (r * pn - pnm1)
    return out
