"""Cyclic Jacobi eigensolver for dense symmetric matrices, pure-Python build.

Same algorithm as the compiled kernel in jacobi.pyx; kept in lock-step so the
two backends are interchangeable at import time.
"""

from __future__ import annotations

from math import sqrt


def jacobi_diagonalize(a, n: int, rel_tol: float, max_sweeps: int) -> int:
    """Run cyclic Jacobi sweeps in place on the row-major n*n buffer `a`.

    Sweeps stop once the off-diagonal Frobenius mass drops to
    rel_tol * ||A||_F.  Returns the number of sweeps used, or -1 when the
    budget of max_sweeps is exhausted first.
    """
    norm_f = 0.0
    for i in range(n):
        base = i * n
        for j in range(n):
            v = a[base + j]
            norm_f += v * v
    norm_f = sqrt(norm_f)
    threshold = rel_tol * norm_f

    def off_mass() -> float:
        total = 0.0
        for p in range(n):
            base = p * n
            for q in range(p + 1, n):
                v = a[base + q]
                total += 2.0 * v * v
        return sqrt(total)

    for sweep in range(max_sweeps):
        if off_mass() <= threshold:
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
    if off_mass() <= threshold:
        return max_sweeps
    return -1
