# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cyclic Jacobi eigensolver for dense symmetric matrices, compiled build.

Same algorithm as jacobi_py.py; kept in lock-step so the two backends are
interchangeable at import time.
"""

from libc.math cimport sqrt


cdef double _off_mass(double[::1] a, Py_ssize_t n) noexcept nogil:
    cdef double total = 0.0, v
    cdef Py_ssize_t p, q
    for p in range(n):
        for q in range(p + 1, n):
            v = a[p * n + q]
            total += 2.0 * v * v
    return sqrt(total)


cdef int _run(double[::1] a, Py_ssize_t n, double rel_tol, int max_sweeps) noexcept nogil:
    cdef double norm_f = 0.0, threshold, v
    cdef double apq, app, aqq, tau, t, c, s, aip, aiq
    cdef Py_ssize_t i, j, p, q
    cdef int sweep

    for i in range(n):
        for j in range(n):
            v = a[i * n + j]
            norm_f += v * v
    norm_f = sqrt(norm_f)
    threshold = rel_tol * norm_f

    for sweep in range(max_sweeps):
        if _off_mass(a, n) <= threshold:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                if apq == 0.0:
                    continue
                app = a[p * n + p]
                aqq = a[q * n + q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                a[p * n + p] = app - t * apq
                a[q * n + q] = aqq + t * apq
                a[p * n + q] = 0.0
                a[q * n + p] = 0.0
                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = a[i * n + p]
                    aiq = a[i * n + q]
                    a[i * n + p] = c * aip - s * aiq
                    a[p * n + i] = a[i * n + p]
                    a[i * n + q] = s * aip + c * aiq
                    a[q * n + i] = a[i * n + q]
    if _off_mass(a, n) <= threshold:
        return max_sweeps
    return -1


def jacobi_diagonalize(double[::1] a, Py_ssize_t n, double rel_tol, int max_sweeps):
    """Run cyclic Jacobi sweeps in place on the row-major n*n buffer `a`.

    Sweeps stop once the off-diagonal Frobenius mass drops to
    rel_tol * ||A||_F.  Returns the number of sweeps used, or -1 when the
    budget of max_sweeps is exhausted first.
    """
    cdef int result
    with nogil:
        result = _run(a, n, rel_tol, max_sweeps)
    return result
