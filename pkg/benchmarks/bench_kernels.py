"""Compare the compiled and pure-Python bitmap kernels.

    python3 benchmarks/bench_kernels.py [--sizes 25,100,300] [--density 0.02] [--repeat 5]

Prints one row per (kernel, size) with the best-of-N time of each backend.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from refactorsearch import kernels


def random_bits(n: int, density: float, rng: random.Random) -> int:
    bits = 0
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < density:
                bits |= 1 << (u * n + v)
    return bits


def best(fn, repeat: int) -> float:
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="25,100,300")
    ap.add_argument("--density", type=float, default=0.02)
    ap.add_argument("--modules", type=int, default=15)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    compiled = kernels.compiled_backend
    if compiled is None:
        print("compiled kernels are not built; only the Python backend is timed", file=sys.stderr)
    rng = random.Random(0)
    print(f"{'kernel':<12}{'n':>6}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    for n in (int(s) for s in args.sizes.split(",")):
        bits = random_bits(n, args.density, rng)
        module_of = [rng.randrange(args.modules) for _ in range(n)]
        cases = {
            "closure": lambda be: be.closure_bits(bits, n),
            "pair_counts": lambda be: be.pair_counts(bits, n, module_of, args.modules),
        }
        for name, call in cases.items():
            py = best(lambda: call(kernels.python_backend), args.repeat)
            if compiled is not None:
                assert call(compiled) == call(kernels.python_backend)
                cy = best(lambda: call(compiled), args.repeat)
                print(f"{name:<12}{n:>6}{py * 1e3:>12.3f}{cy * 1e3:>14.3f}{py / cy:>9.1f}x")
            else:
                print(f"{name:<12}{n:>6}{py * 1e3:>12.3f}{'-':>14}{'-':>10}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
