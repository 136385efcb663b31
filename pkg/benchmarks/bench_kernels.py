"""Benchmark the compiled distance kernels against the Python twin.

Usage: python benchmarks/bench_kernels.py [--quick]

Shapes mirror the workloads that dominate the test and acceptance suites:
small spoiling-law rechecks, the n=64/m=256 random-ensemble scans, greedy
sieve membership tests, and a large pairwise scan.
"""

from __future__ import annotations

import argparse
import random
import time

from codeplane import _kernels_py

try:
    from codeplane import _distkern
except ImportError:
    _distkern = None

SHAPES = [
    ("spoil-recheck", 64, 12, 4),
    ("ensemble", 256, 64, 2),
    ("greedy-seed", 40, 40, 2),
    ("large-scan", 1024, 32, 2),
]


def _timeit(fn, *args, reps: int) -> float:
    fn(*args)  # warm
    start = time.perf_counter()
    for _ in range(reps):
        fn(*args)
    return (time.perf_counter() - start) / reps * 1000


def run(quick: bool = False) -> None:
    rng = random.Random(1729)
    reps = 5 if quick else 25
    backends = [("python", _kernels_py)]
    if _distkern is not None:
        backends.insert(0, ("c", _distkern))
    else:
        print("compiled extension not available; timing the python lane only")

    header = f"{'shape':>14} {'m':>5} {'n':>3} {'q':>3} {'kernel':>13}"
    for name, _ in backends:
        header += f" {name + ' (ms)':>12}"
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)

    for label, m, n, q in SHAPES:
        words = [bytes(rng.randrange(q) for _ in range(n)) for _ in range(m)]
        buf = b"".join(words)
        cand = bytes(rng.randrange(q) for _ in range(n))
        workloads = [
            ("min_pairwise", lambda impl: impl.min_pairwise(buf, m, n)),
            ("min_to_set", lambda impl: impl.min_to_set(buf, m, n, cand)),
            ("all_at_least", lambda impl: impl.all_at_least(buf, m, n, cand, 3)),
        ]
        for kernel_name, call in workloads:
            times = []
            results = []
            for _, impl in backends:
                times.append(_timeit(lambda: call(impl), reps=reps))
                results.append(call(impl))
            if len(results) == 2:
                a, b = results
                a = tuple(a) if isinstance(a, (tuple, list)) else a
                b = tuple(b) if isinstance(b, (tuple, list)) else b
                assert bool(a == b) or (a == b), f"backend mismatch on {kernel_name}"
            row = f"{label:>14} {m:>5} {n:>3} {q:>3} {kernel_name:>13}"
            for t in times:
                row += f" {t:>12.4f}"
            if len(times) == 2:
                row += f" {times[1] / times[0]:>7.1f}x"
            print(row)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="fewer repetitions")
    args = parser.parse_args()
    run(quick=args.quick)


if __name__ == "__main__":
    main()
