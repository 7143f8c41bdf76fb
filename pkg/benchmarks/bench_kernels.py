"""Benchmark the numba-compiled Fock kernels against the numpy fallback.

Run:
    python3 benchmarks/bench_kernels.py

The same comparison with the whole package forced onto the fallback path:
    GAUSSWORK_NUMBA=0 python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from gausswork._compat import NUMBA_ENABLED
from gausswork import _kernels
from gausswork.fock import thermal_loss_kraus


def time_call(fn, *args, repeat=3):
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_amplitude_tables(dim=40, max_mn=40):
    table = _kernels.log_factorials(dim + max_mn + 1)

    def run(kernel):
        for m in range(max_mn + 1):
            for n in range(max_mn + 1):
                kernel(m, n, 0.8, dim, table)

    if NUMBA_ENABLED:
        _kernels.bs_amplitude_diag(0, 0, 0.8, dim, table)  # compile outside the timing
    t_fast = time_call(run, _kernels.bs_amplitude_diag)
    t_plain = time_call(run, _kernels.bs_amplitude_diag_numpy)
    return t_fast, t_plain


def bench_kraus_build(dim=40, max_mn=40):
    thermal_loss_kraus(0.8, 0.5, dim, max_mn)  # warm any compilation
    return time_call(thermal_loss_kraus, 0.8, 0.5, dim, max_mn)


def main():
    label = "numba" if NUMBA_ENABLED else "numpy fallback (GAUSSWORK_NUMBA=0 or numba missing)"
    print(f"active kernel path: {label}")
    t_fast, t_plain = bench_amplitude_tables()
    print(f"amplitude tables (41x41 index pairs, dim 40):")
    print(f"  active path   {t_fast * 1e3:9.2f} ms")
    print(f"  numpy variant {t_plain * 1e3:9.2f} ms")
    if NUMBA_ENABLED and t_fast > 0:
        print(f"  speedup       {t_plain / t_fast:9.1f}x")
    t_kraus = bench_kraus_build()
    print(f"thermal-loss Kraus set build (dim 40, max_mn 40): {t_kraus * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
