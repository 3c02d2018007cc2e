# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels. Mirrors ``qwalknet._core.fallback``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, cos, sin, copysign

cnp.import_array()


cdef double _off_norm(double[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j
    cdef double s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return sqrt(s)


def jacobi(a_in, double tol, int max_sweeps):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a_arr = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v_arr = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, r
    cdef double apq, app, aqq, diff, theta, t, c, s, x, y, off
    cdef int sweeps = 0

    with nogil:
        off = _off_norm(a)
        while off > tol and sweeps < max_sweeps:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    app = a[p, p]
                    aqq = a[q, q]
                    diff = aqq - app
                    if fabs(apq) < fabs(diff) * 1e-36:
                        t = apq / diff
                    else:
                        theta = diff / (2.0 * apq)
                        t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for r in range(n):
                        x = a[r, p]
                        y = a[r, q]
                        a[r, p] = c * x - s * y
                        a[r, q] = s * x + c * y
                    for r in range(n):
                        x = a[p, r]
                        y = a[q, r]
                        a[p, r] = c * x - s * y
                        a[q, r] = s * x + c * y
                    a[p, p] = app - t * apq
                    a[q, q] = aqq + t * apq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for r in range(n):
                        x = v[r, p]
                        y = v[r, q]
                        v[r, p] = c * x - s * y
                        v[r, q] = s * x + c * y
            sweeps += 1
            off = _off_norm(a)

    return np.diagonal(a_arr).copy(), v_arr, sweeps, off, off <= tol


cdef void _accumulate(double[:, ::1] vec, double[::1] lam, double[::1] br, double[::1] bi,
                      double t, double sign, double w, double[::1] zr, double[::1] zi,
                      double[::1] out) noexcept nogil:
    cdef Py_ssize_t n = lam.shape[0]
    cdef Py_ssize_t j, k
    cdef double ph, cr, ci, re, im
    for k in range(n):
        ph = sign * lam[k] * t
        cr = cos(ph)
        ci = sin(ph)
        zr[k] = cr * br[k] - ci * bi[k]
        zi[k] = cr * bi[k] + ci * br[k]
    for j in range(n):
        re = 0.0
        im = 0.0
        for k in range(n):
            re += vec[j, k] * zr[k]
            im += vec[j, k] * zi[k]
        out[j] += w * (re * re + im * im)


def sample_probabilities(vectors, eigenvalues, coeffs, times, int sign):
    cdef double[:, ::1] vec = np.ascontiguousarray(vectors, dtype=np.float64)
    cdef double[::1] lam = np.ascontiguousarray(eigenvalues, dtype=np.float64)
    c = np.asarray(coeffs, dtype=np.complex128)
    cdef double[::1] br = np.ascontiguousarray(c.real)
    cdef double[::1] bi = np.ascontiguousarray(c.imag)
    cdef double[::1] ts = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t n = lam.shape[0]
    cdef Py_ssize_t m_count = ts.shape[0]
    result = np.zeros((m_count, n), dtype=np.float64)
    cdef double[:, ::1] res = result
    cdef double[::1] zr = np.empty(n)
    cdef double[::1] zi = np.empty(n)
    cdef Py_ssize_t m
    with nogil:
        for m in range(m_count):
            _accumulate(vec, lam, br, bi, ts[m], <double>sign, 1.0, zr, zi, res[m])
    return result


def weighted_probability_sum(vectors, eigenvalues, coeffs, times, weights, int sign):
    cdef double[:, ::1] vec = np.ascontiguousarray(vectors, dtype=np.float64)
    cdef double[::1] lam = np.ascontiguousarray(eigenvalues, dtype=np.float64)
    c = np.asarray(coeffs, dtype=np.complex128)
    cdef double[::1] br = np.ascontiguousarray(c.real)
    cdef double[::1] bi = np.ascontiguousarray(c.imag)
    cdef double[::1] ts = np.ascontiguousarray(times, dtype=np.float64)
    cdef double[::1] ws = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = lam.shape[0]
    total = np.zeros(n, dtype=np.float64)
    cdef double[::1] out = total
    cdef double[::1] zr = np.empty(n)
    cdef double[::1] zi = np.empty(n)
    cdef Py_ssize_t m
    with nogil:
        for m in range(ts.shape[0]):
            _accumulate(vec, lam, br, bi, ts[m], <double>sign, ws[m], zr, zi, out)
    return total
