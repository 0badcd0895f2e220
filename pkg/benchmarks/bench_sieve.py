"""Benchmark the compiled sieve kernels against the pure-Python twins.

Both backends must produce bit-identical arrays; the script checks that
before reporting timings, so a speedup is never quoted for a kernel that
disagrees with the reference implementation.

Usage:
    python3 benchmarks/bench_sieve.py --limit 2097152 --repeat 3
"""

import argparse
import statistics
import time

import numpy as np

from psibar._kernel import available_backends, get_kernels


def _time(fn, repeat: int):
    best = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best.append(time.perf_counter() - t0)
    return min(best), statistics.median(best), result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--limit", type=int, default=1 << 21,
                        help="sieve upper bound (default 2^21)")
    parser.add_argument("--block", type=int, default=None,
                        help="trajectory block size (default limit // 64)")
    parser.add_argument("--cap", type=int, default=256,
                        help="step cap for the trajectory kernel")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best is reported")
    args = parser.parse_args(argv)

    block = args.block if args.block is not None else max(2, args.limit // 64)
    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled kernel not importable; timing the pure backend only")

    results = {}
    for name in backends:
        build, traj_block = get_kernels(name)
        t_build, t_build_med, built = _time(
            lambda f=build: f(args.limit), args.repeat)
        d, spf = built
        t_blk, t_blk_med, lam_blk = _time(
            lambda f=traj_block, s=spf: f(s, block, args.cap), args.repeat)
        results[name] = (t_build, t_blk, d, spf, lam_blk)
        print(f"{name:>7}: build_d_spf({args.limit}) "
              f"best {t_build:8.4f}s (median {t_build_med:8.4f}s)   "
              f"trajectory_block({block}) best {t_blk:8.4f}s")

    if len(results) == 2:
        fast = results["cython"]
        pure = results["python"]
        for i, label in ((2, "d"), (3, "spf"), (4, "lambda block")):
            if not np.array_equal(fast[i], pure[i]):
                print(f"MISMATCH: {label} arrays differ between backends")
                return 1
        print("backend agreement: d, spf and trajectory arrays are identical")
        print(f"speedup: build {pure[0] / fast[0]:6.1f}x   "
              f"trajectory block {pure[1] / fast[1]:6.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
