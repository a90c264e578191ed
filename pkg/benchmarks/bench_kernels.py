"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--n 8]

Micro-benchmarks run each kernel over all of S_n; the end-to-end row times a
full oracle job (empirical basis of a length-5 pattern at horizon n) with
each backend swapped in.
"""

from __future__ import annotations

import argparse
import time
from itertools import permutations

from bubblepat import _pykernels, kernels, oracle

try:
    from bubblepat import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def micro(impl, perms):
    members = set(impl.deletions(perms[0]))
    return {
        "bubble": lambda: [impl.bubble(s) for s in perms],
        "stack_pass": lambda: [impl.stack_pass(s) for s in perms],
        "bubble_power(3)": lambda: [impl.bubble_power(s, 3) for s in perms],
        "contains(25143)": lambda: [impl.contains(s, (2, 5, 1, 4, 3)) for s in perms],
        "avoids_all(SB basis)": lambda: [
            impl.avoids_all(s, [(2, 3, 4, 1), (2, 4, 3, 1), (3, 2, 4, 1), (4, 2, 3, 1)]) for s in perms
        ],
        "first_missing_deletion": lambda: [impl.first_missing_deletion(s, members) for s in perms],
    }


KERNEL_NAMES = (
    "contains",
    "avoids_all",
    "bubble",
    "bubble_power",
    "stack_pass",
    "is_increasing",
    "deletions",
    "first_missing_deletion",
)


def end_to_end(impl, n):
    """Time one oracle job with ``impl`` patched into the dispatch module."""
    saved = {name: getattr(kernels, name) for name in KERNEL_NAMES}
    try:
        for name in KERNEL_NAMES:
            setattr(kernels, name, getattr(impl, name))
        return _time(lambda: oracle.empirical_basis((2, 5, 1, 4, 3), n), repeat=1)
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return
    perms = list(permutations(range(1, args.n + 1)))
    print(f"S_{args.n}: {len(perms)} permutations, best of 3\n")
    print(f"{'kernel':<26}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    py_jobs = micro(_pykernels, perms)
    c_jobs = micro(_ckernels, perms)
    for name in py_jobs:
        tp = _time(py_jobs[name])
        tc = _time(c_jobs[name])
        print(f"{name:<26}{tp:>12.3f}{tc:>12.3f}{tp / tc:>9.1f}x")
    tp = end_to_end(_pykernels, args.n)
    tc = end_to_end(_ckernels, args.n)
    print(f"{'empirical_basis(25143)':<26}{tp:>12.3f}{tc:>12.3f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
