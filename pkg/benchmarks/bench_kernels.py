"""Compiled vs pure-Python kernels on seeded random triangulations.

    python3 benchmarks/bench_kernels.py [--sizes 100 1000 10000] [--repeat 5]

Prints one row per (kernel, n): best-of-repeat seconds for each backend and
the speed-up.  Both backends are called on the same adjacency arrays, and
their outputs are compared before timing.
"""

import argparse
import timeit

from flipforge import _pykernels
from flipforge.generators import random_by_flip_walk

try:
    from flipforge import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 1000, 10000])
    ap.add_argument("--repeat", type=int, default=5)
    a = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled kernels unavailable; build with pip install -e . --no-build-isolation")

    print(f"{'kernel':<16}{'n':>7}{'cython s':>12}{'python s':>12}{'speed-up':>10}")
    for n in a.sizes:
        t = random_by_flip_walk(n, 3 * n, seed=n)
        offsets, flat = t.csr()
        for name in ("canonical_code", "triangles"):
            fc, fp = getattr(_ckernels, name), getattr(_pykernels, name)
            assert fc(n, offsets, flat) == fp(n, offsets, flat), name
            # pure canonical_code takes seconds at n = 10^4
            number = 1 if name == "canonical_code" and n > 1000 else 3
            tc = min(timeit.repeat(lambda: fc(n, offsets, flat), number=number, repeat=a.repeat)) / number
            tp = min(timeit.repeat(lambda: fp(n, offsets, flat), number=number, repeat=a.repeat)) / number
            print(f"{name:<16}{n:>7}{tc:>12.5f}{tp:>12.5f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
