"""Throughput comparison between the compiled kernel and the numpy fallback.

Usage: python benchmarks/bench_kernel.py [n_samples]

Reports draws per second for representative window shapes; the analysis
output is bit-identical either way, so this is purely a speed comparison.
"""

import sys
import time

from numpy.random import PCG64

from escbias import _kernel_py
from escbias.kernel import build_program
from escbias.schemes import scheme_for_year

try:
    from escbias import _kernel
except ImportError:
    _kernel = None

WINDOWS = {
    "allocated 1975-79 (c=25)": [(scheme_for_year(y), 25) for y in range(1975, 1980)],
    "sequential 1957-61 (c=12)": [(scheme_for_year(y), 12) for y in range(1957, 1962)],
    "rated 1971-73": [(scheme_for_year(y), 17) for y in range(1971, 1974)],
    "mixed 1972-76 (c=18)": [(scheme_for_year(y), 18) for y in range(1972, 1977)],
}


def time_impl(impl, program, n_samples):
    start = time.perf_counter()
    impl.sample_window_means(
        program.kinds, program.counts, program.offsets, program.lengths,
        program.scores, n_samples, PCG64(0),
    )
    return time.perf_counter() - start


def main():
    n_samples = int(sys.argv[1]) if len(sys.argv) > 1 else 400_000
    if _kernel is None:
        print("compiled kernel not available; timing the fallback only\n")
    header = f"{'window':<28}{'draws':>12}{'cython':>12}{'numpy':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, years in WINDOWS.items():
        program = build_program(years)
        draws = n_samples * program.draws_per_sample
        slow = time_impl(_kernel_py, program, n_samples)
        if _kernel is not None:
            fast = time_impl(_kernel, program, n_samples)
            ratio = f"{slow / fast:>8.1f}x"
            fast_rate = f"{draws / fast / 1e6:>10.1f}M"
        else:
            ratio, fast_rate = f"{'-':>9}", f"{'-':>11}"
        print(f"{name:<28}{draws:>12,}{fast_rate:>12}{draws / slow / 1e6:>11.1f}M{ratio}")
    print(f"\n(draws/second over {n_samples:,} samples per window)")


if __name__ == "__main__":
    main()
