"""Times the compiled and pure-Python exhaustive search kernels on seeded instances.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from kbranch import _kernels_py
from kbranch.generators import random_instance
from kbranch.oracle import flatten_choices

CASES = [(8, 3, 4, 1), (10, 3, 4, 2), (12, 2, 3, 2), (14, 3, 3, 2)]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    try:
        from kbranch import _kernels
    except ImportError:
        _kernels = None
        print("compiled kernel not built; timing the Python kernel only")

    print(f"{'n':>3} {'k':>2} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n, size, sets, k in CASES:
        inst = random_instance(n, size, sets, seed=n)
        node_start, scores, par_start, parents, _ = flatten_choices(inst)
        call_args = (inst.n, node_start, scores, par_start, parents, k)
        py = min(timeit.repeat(lambda: _kernels_py.search_assignments(*call_args), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{n:>3} {k:>2} {py:>10.4f} {'-':>10} {'-':>8}")
            continue
        assert _kernels.search_assignments(*call_args) == _kernels_py.search_assignments(*call_args)
        cy = min(timeit.repeat(lambda: _kernels.search_assignments(*call_args), number=1, repeat=args.repeat))
        print(f"{n:>3} {k:>2} {py:>10.4f} {cy:>10.4f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
