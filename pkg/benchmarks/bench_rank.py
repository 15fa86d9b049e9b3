#!/usr/bin/env python3
"""Benchmark the two GF(p) rank backends on real boundary matrices.

The blocked elimination kernel has a numba-compiled path and a pure-numpy
path (selected by CURVATURE_BACKEND or the backend= argument).  This script
times both on the boundary matrices of the n-point state complex, per
modular prime, and prints a comparison table.

Usage:
    python benchmarks/bench_rank.py [--n 6] [--repeat 3] [--block 128]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from curvsets._rank import HAS_NUMBA, MODULAR_PRIMES, rank_mod_p
from curvsets.homology import boundary_matrices
from curvsets.state_complex import build_state_complex


def collect_matrices(n: int) -> dict[int, np.ndarray]:
    K = build_state_complex(n)
    C = boundary_matrices(K)
    return {d: np.asarray(B.todense(), dtype=np.int64) for d, B in C.boundaries.items()}


def time_backend(
    matrices: dict[int, np.ndarray], backend: str, block: int, repeat: int
) -> tuple[float, dict[int, int]]:
    ranks: dict[int, int] = {}
    # warm up once so numba's compilation does not land in the timings
    small = min(matrices.values(), key=lambda a: a.size)
    rank_mod_p(small, MODULAR_PRIMES[0], block=block, backend=backend)

    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for d, A in sorted(matrices.items()):
            for p in MODULAR_PRIMES:
                ranks[d] = rank_mod_p(A, p, block=block, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, ranks


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6, help="complex size (default 6)")
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions")
    ap.add_argument("--block", type=int, default=128, help="panel width")
    args = ap.parse_args()

    print(f"building the n={args.n} complex and its boundary matrices ...")
    matrices = collect_matrices(args.n)
    total = sum(a.size for a in matrices.values())
    shapes = ", ".join(f"{a.shape[0]}x{a.shape[1]}" for _, a in sorted(matrices.items()))
    print(f"matrices: {shapes}  ({total:,} entries)")
    print(f"{len(MODULAR_PRIMES)} primes per matrix, best of {args.repeat} runs\n")

    results = {}
    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    if not HAS_NUMBA:
        print("numba is not importable here; timing the numpy path only\n")
    for backend in backends:
        secs, ranks = time_backend(matrices, backend, args.block, args.repeat)
        results[backend] = (secs, ranks)
        print(f"  {backend:6s}  {secs:8.2f} s   ranks={ranks}")

    if len(results) == 2:
        tn, rn = results["numba"]
        tp, rp = results["numpy"]
        assert rn == rp, "backends disagree on ranks!"
        print(f"\nspeedup (numpy / numba): {tp / tn:.2f}x")


if __name__ == "__main__":
    main()
