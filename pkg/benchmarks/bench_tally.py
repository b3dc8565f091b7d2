"""Compare the compiled tally kernel with the pure-Python fallback.

    python3 benchmarks/bench_tally.py
    python3 benchmarks/bench_tally.py --repeat 5 --order 24
"""

import argparse
import time

from sep_partitions import _backend
from sep_partitions.partitions import ABK, KPART, MKR, OKR

CASES = [ABK(1, 2, 3), OKR(1, 1), OKR(3, 3), KPART(2), MKR(3, 1)]


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, default=30)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    compiled = _backend.compiled_tally
    if compiled is None:
        print("compiled kernel not built; only the fallback is timed")
    print(f"{'class':<12}{'members':>12}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for spec in CASES:
        call = (spec.code, *spec.kernel_params(), args.order, 10**9)
        t_py, counts = best_of(lambda: _backend.python_tally(*call), args.repeat)
        members = sum(counts.values())
        if compiled is None:
            print(f"{str(spec):<12}{members:>12}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        t_c, counts_c = best_of(lambda: compiled(*call), args.repeat)
        if counts_c != counts:
            raise SystemExit(f"backends disagree on {spec}")
        print(f"{str(spec):<12}{members:>12}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
