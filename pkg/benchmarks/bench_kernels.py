#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-NumPy fallback.

Times the two hot paths: the cyclic-Jacobi eigensolver on dense symmetric
matrices (eigenvalue-only and with vectors) and the RK4 monodromy
propagation (single spectral point and a scan-sized batch).

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from nodal_morse import _kernels_py

try:
    from nodal_morse import _kernels_cy

    HAVE_COMPILED = True
except ImportError:
    _kernels_cy = None
    HAVE_COMPILED = False


def timeit(func, *args, repeats=5, min_time=0.05, **kwargs):
    """Best-of-repeats timing with an adaptive inner loop."""
    best = np.inf
    loops = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(loops):
            func(*args, **kwargs)
        elapsed = time.perf_counter() - t0
        if elapsed >= min_time:
            break
        loops *= 4
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(loops):
            func(*args, **kwargs)
        best = min(best, (time.perf_counter() - t0) / loops)
    return best


def row(label, pure, compiled):
    if compiled is None:
        print(f"{label:<38} {pure * 1e3:>10.3f} ms {'-':>12} {'-':>8}")
    else:
        print(
            f"{label:<38} {pure * 1e3:>10.3f} ms {compiled * 1e3:>9.3f} ms "
            f"{pure / compiled:>7.1f}x"
        )


def main():
    print(f"compiled kernels available: {HAVE_COMPILED}")
    print(f"{'kernel':<38} {'pure':>13} {'compiled':>12} {'speedup':>8}")

    rng = np.random.default_rng(0)
    for n in (8, 16, 24, 32, 48):
        a = rng.normal(size=(n, n))
        a = a + a.T
        for vectors, tag in ((False, "values"), (True, "vectors")):
            pure = timeit(_kernels_py.jacobi_eigh, a, vectors=vectors)
            compiled = (
                timeit(_kernels_cy.jacobi_eigh, a, vectors=vectors)
                if HAVE_COMPILED
                else None
            )
            row(f"jacobi_eigh {n}x{n} ({tag})", pure, compiled)

    steps = 4096
    samples = np.cos(2.0 * np.pi * np.arange(2 * steps + 1) / (2.0 * steps))
    h = 1.0 / steps
    for k in (1, 32, 2048):
        lams = np.linspace(0.0, 100.0, k)
        pure = timeit(_kernels_py.monodromy_rk4, samples, lams, h, repeats=3)
        compiled = (
            timeit(_kernels_cy.monodromy_rk4, samples, lams, h, repeats=3)
            if HAVE_COMPILED
            else None
        )
        row(f"monodromy_rk4 N={steps} batch={k}", pure, compiled)


if __name__ == "__main__":
    main()
