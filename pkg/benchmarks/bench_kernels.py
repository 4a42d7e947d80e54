"""Compare the compiled and pure-Python Jacobi kernels.

    python3 benchmarks/bench_kernels.py [--points 2001] [--repeat 7]

Times the raw recurrences over a range of degrees, then one end-to-end
moment evaluation (norm, I1, I2, I3 of a single state) with each backend.
"""
import argparse
import importlib
import os
import timeit

import numpy as np

from movingpt import _kernels_py

try:
    from movingpt import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def bench_kernels(points, repeat):
    z = np.linspace(-1.0, 1.0, points)
    rows = []
    for n in (2, 8, 32, 128):
        py = best_of(lambda: _kernels_py.jacobi_pair(n, 1.1, 7.9, z), repeat, 20)
        x1 = best_of(lambda: _kernels_py.x1_jacobi(n, 1.1, 7.9, z), repeat, 20)
        if _kernels_c is not None:
            cy = best_of(lambda: _kernels_c.jacobi_pair(n, 1.1, 7.9, z), repeat, 20)
            cx1 = best_of(lambda: _kernels_c.x1_jacobi(n, 1.1, 7.9, z), repeat, 20)
        else:
            cy = cx1 = float("nan")
        rows.append((n, py, cy, x1, cx1))
    return rows


def bench_moments(repeat, backend):
    if backend == "python":
        os.environ["MOVINGPT_PURE_PYTHON"] = "1"
    else:
        os.environ.pop("MOVINGPT_PURE_PYTHON", None)
    from movingpt import _backend, quadrature
    from movingpt.stationary import PTParams, StationaryState

    importlib.reload(_backend)
    if _backend.BACKEND != backend:
        return float("nan")
    state = StationaryState(2, "plus", PTParams(5.0, 3.4))
    raw = quadrature._moments.__wrapped__
    return best_of(lambda: raw(state, quadrature.DEFAULT_SPEC), repeat, 3)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=2001)
    parser.add_argument("--repeat", type=int, default=7)
    args = parser.parse_args()

    print(f"jacobi kernels on {args.points} points (ms per call)")
    print(f"{'n':>5} {'P py':>9} {'P cy':>9} {'x':>6} {'X1 py':>9} {'X1 cy':>9} {'x':>6}")
    for n, py, cy, x1, cx1 in bench_kernels(args.points, args.repeat):
        print(f"{n:>5} {py * 1e3:9.3f} {cy * 1e3:9.3f} {py / cy:6.1f} {x1 * 1e3:9.3f} {cx1 * 1e3:9.3f} {x1 / cx1:6.1f}")

    py = bench_moments(args.repeat, "python")
    cy = bench_moments(args.repeat, "cython")
    print(f"\nmoments of one state (ms): python {py * 1e3:.2f}, cython {cy * 1e3:.2f}, speedup {py / cy:.1f}x")


if __name__ == "__main__":
    main()
