"""Timing comparison of the pure-Python and compiled scan kernels.

Runs the full rotation-criterion scan for one N (every shape, every degree
assignment, every ordering class) through both kernel implementations,
verifies that their outputs match exactly, and reports wall-clock times.

Usage: python3 benchmarks/bench_kernels.py [--n 11] [--mode small]
"""

from __future__ import annotations

import argparse
import time

from bodenhu._kernel import pure
from bodenhu.partitions import iter_partition_shapes

try:
    from bodenhu._kernel import _speedups
except ImportError:
    _speedups = None


def run_kernel(kernel, n: int, semismall: bool, shapes: list) -> tuple:
    started = time.perf_counter()
    violations, stats = kernel.scan_partition_batch(
        n, 0, semismall, 3, shapes
    )
    elapsed = time.perf_counter() - started
    return violations, stats, elapsed


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=11)
    parser.add_argument(
        "--mode", choices=("small", "semismall"), default="small"
    )
    args = parser.parse_args()

    shapes = list(iter_partition_shapes(args.n, min_len=3))
    semismall = args.mode == "semismall"
    print(f"n={args.n} mode={args.mode} shapes={len(shapes)}")

    kernels = [("pure", pure)]
    if _speedups is not None:
        kernels.append(("compiled", _speedups))
    else:
        print("compiled kernel not built; timing the pure kernel only")

    results = {}
    for name, kernel in kernels:
        violations, stats, elapsed = run_kernel(
            kernel, args.n, semismall, shapes
        )
        candidates = sum(c for c, _ in stats.values())
        classes = sum(k for _, k in stats.values())
        results[name] = (violations, stats, elapsed)
        print(
            f"{name:>9}: {elapsed * 1000:9.1f} ms"
            f"  candidates={candidates} classes={classes}"
            f" violations={len(violations)}"
        )

    if len(results) == 2:
        pure_out = results["pure"][:2]
        fast_out = results["compiled"][:2]
        if pure_out != fast_out:
            print("MISMATCH between kernels; investigate before trusting times")
            return 1
        speedup = results["pure"][2] / results["compiled"][2]
        print(f"outputs identical; compiled speedup: {speedup:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
