"""Benchmark the compiled Jacobi kernel against the pure-Python fallback.

Both backends run the identical cyclic-sweep algorithm; this script times
them on random dense symmetric matrices and verifies that their eigenvalues
agree to near machine precision.

Usage: python benchmarks/bench_jacobi.py [--sizes 8,16,32,64,128] [--repeats 3]
"""

import argparse
import random
import time

from cayspec._kernels import BACKEND, symmetric_eigenvalues
from cayspec._kernels.jacobi_py import jacobi_diagonalize as jacobi_python

try:
    from cayspec._kernels.jacobi import jacobi_diagonalize as jacobi_compiled
except ImportError:
    jacobi_compiled = None


def random_symmetric(n, rng):
    rows = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.uniform(-2.0, 2.0)
    return rows


def best_time(rows, impl, repeats):
    best = float("inf")
    eig = None
    for _ in range(repeats):
        start = time.perf_counter()
        eig = symmetric_eigenvalues(rows, diagonalize=impl)
        best = min(best, time.perf_counter() - start)
    return best, eig


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="8,16,32,64,128")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    rng = random.Random(args.seed)

    print(f"active backend at import: {BACKEND}")
    if jacobi_compiled is None:
        print("compiled kernel not built; timing the Python fallback only\n")
    header = f"{'n':>5} {'python (ms)':>14} {'compiled (ms)':>14} {'speedup':>9} {'max |diff|':>12}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        rows = random_symmetric(n, rng)
        t_py, eig_py = best_time(rows, jacobi_python, args.repeats)
        if jacobi_compiled is None:
            print(f"{n:>5} {t_py * 1e3:>14.3f} {'-':>14} {'-':>9} {'-':>12}")
            continue
        t_c, eig_c = best_time(rows, jacobi_compiled, args.repeats)
        diff = max(abs(a - b) for a, b in zip(eig_py, eig_c))
        print(
            f"{n:>5} {t_py * 1e3:>14.3f} {t_c * 1e3:>14.3f} "
            f"{t_py / t_c:>8.1f}x {diff:>12.2e}"
        )


if __name__ == "__main__":
    main()
