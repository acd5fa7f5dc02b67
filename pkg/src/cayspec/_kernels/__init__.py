"""Numeric kernel selection: compiled Jacobi when available, pure Python otherwise."""

from __future__ import annotations

from array import array
from typing import Sequence

from cayspec.errors import NoConvergence

try:
    from cayspec._kernels.jacobi import jacobi_diagonalize as _jacobi

    BACKEND = "compiled"
except ImportError:  # extension not built; same algorithm, interpreted
    from cayspec._kernels.jacobi_py import jacobi_diagonalize as _jacobi

    BACKEND = "python"

jacobi_diagonalize = _jacobi


def symmetric_eigenvalues(
    rows: Sequence[Sequence[float]],
    rel_tol: float = 1e-12,
    max_sweeps: int = 100,
    diagonalize=None,
) -> list[float]:
    """Eigenvalues of a dense symmetric matrix, sorted descending.

    `diagonalize` may override the backend (used by the benchmark and the
    backend cross-tests).
    """
    n = len(rows)
    buf = array("d", (float(v) for row in rows for v in row))
    impl = diagonalize if diagonalize is not None else jacobi_diagonalize
    sweeps = impl(buf, n, rel_tol, max_sweeps)
    if sweeps < 0:
        raise NoConvergence(
            f"Jacobi sweeps did not converge within {max_sweeps} sweeps"
        )
    return sorted((buf[i * n + i] for i in range(n)), reverse=True)
