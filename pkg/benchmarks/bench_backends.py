#!/usr/bin/env python3
"""Compare the compiled and pure-Python linear algebra kernels.

Workloads mirror the package's hot paths: reduced echelon forms of the
cochain differential matrices (rank/kernel computations behind cohomology
tables) and the matrix products behind the chain-map checks.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import random
import time
from fractions import Fraction as F

from mrbleib import _kernels_py
from mrbleib.algebra import LeibnizAlgebra, OperatorContext
from mrbleib.cohomology import delta_matrix, partial_matrix, phi_matrix
from mrbleib.linalg import Matrix
from mrbleib.representations import regular_rep

try:
    from mrbleib import _kernels_cy
except ImportError:
    _kernels_cy = None


def build_workloads():
    g3 = LeibnizAlgebra(3, [(1, 1, 3, 1)])
    k0 = OperatorContext(Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), F(1))
    rep = regular_rep(g3, k0)
    d2 = delta_matrix(g3, rep, 2)          # 81 x 27
    d3 = delta_matrix(g3, rep, 3)          # 243 x 81
    phi3 = phi_matrix(g3, k0, rep, 3)      # 27 x 27
    p2 = partial_matrix(g3, k0, rep, 2)    # 81 x 27

    rng = random.Random(0)
    dense = [
        [F(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(40)]
        for _ in range(40)
    ]
    return [
        ("rref delta2 (81x27)", "rref", d2.to_lists()),
        ("rref delta3 (243x81)", "rref", d3.to_lists()),
        ("rref dense 40x40", "rref", dense),
        ("matmul partial2 @ phi2-size", "matmul", (p2.to_lists(), phi3.to_lists())),
        ("matmul dense 40x40", "matmul", (dense, dense)),
    ]


def run(kernels, kind, payload):
    if kind == "rref":
        return kernels.rref([row[:] for row in payload])
    a, b = payload
    return kernels.matmul(a, b)


def bench(kernels, kind, payload, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = run(kernels, kind, payload)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    workloads = build_workloads()
    print(f"{'workload':34} {'python':>12} {'cython':>12} {'speedup':>9}")
    for name, kind, payload in workloads:
        t_py, r_py = bench(_kernels_py, kind, payload, args.repeat)
        if _kernels_cy is None:
            print(f"{name:34} {t_py * 1e3:10.2f}ms {'(absent)':>12} {'-':>9}")
            continue
        t_cy, r_cy = bench(_kernels_cy, kind, payload, args.repeat)
        assert r_py == r_cy, f"backend mismatch on {name}"
        print(
            f"{name:34} {t_py * 1e3:10.2f}ms {t_cy * 1e3:10.2f}ms {t_py / t_cy:8.2f}x"
        )
    if _kernels_cy is None:
        print("compiled kernel not built; pure backend only")


if __name__ == "__main__":
    main()
