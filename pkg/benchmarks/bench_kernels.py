"""Compiled vs pure-Python move-graph kernels.

Run with ``python benchmarks/bench_kernels.py``; prints one CSV line per case.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qeccforge import _kernels_py, kernels


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--cases", default="1:6,1:8,2:5,2:6")
    args = ap.parse_args()
    if kernels.BACKEND != "cython":
        print("# compiled kernels unavailable; only the pure-Python path is timed")
    print("kernel,s,n,states,python_s,compiled_s,speedup")
    for case in args.cases.split(","):
        s, n = (int(x) for x in case.split(":"))
        states = (2 * s + 1) ** n
        for name in ("component_labels", "canonical_indices"):
            py_fn = getattr(_kernels_py, name)
            c_fn = getattr(kernels, name)
            assert np.array_equal(py_fn(s, n), c_fn(s, n))
            t_py = best_of(lambda: py_fn(s, n), args.repeat)
            t_c = best_of(lambda: c_fn(s, n), args.repeat)
            print(f"{name},{s},{n},{states},{t_py:.4g},{t_c:.4g},{t_py / t_c:.1f}")


if __name__ == "__main__":
    main()
