"""Compare the compiled quadrature kernel against the numpy fallback.

Run from the repository root after an editable install:

    python benchmarks/bench_kernels.py

Times product_quad_uniform on a weakly singular kernel (mu = -0.5) for a
range of grid sizes and reports per-call time plus the speedup. Falls back
to timing the pure-Python path twice when no extension was built.
"""

from __future__ import annotations

import timeit

import numpy as np

from fraclim.kernels import (
    BACKEND,
    compiled_product_quad_uniform,
    fallback_product_quad_uniform,
)

SIZES = (64, 256, 1024, 4096, 16384, 65536)
MU = -0.5


def time_one(fn, values, h, repeats=5):
    n_calls = max(1, 200_000 // len(values))
    best = min(
        timeit.timeit(lambda: fn(values, h, MU), number=n_calls)
        for _ in range(repeats)
    )
    return best / n_calls


def main() -> int:
    print(f"active backend: {BACKEND}")
    if compiled_product_quad_uniform is None:
        print("no compiled extension found; timing the fallback against itself")
    header = f"{'N':>8s} {'python (us)':>14s} {'compiled (us)':>14s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    rng = np.random.default_rng(7)
    for n in SIZES:
        values = rng.standard_normal(n + 1)
        h = 1.0 / n
        t_py = time_one(fallback_product_quad_uniform, values, h)
        if compiled_product_quad_uniform is not None:
            t_c = time_one(compiled_product_quad_uniform, values, h)
            # the two backends must agree before their timings mean anything
            a = fallback_product_quad_uniform(values, h, MU)
            b = compiled_product_quad_uniform(values, h, MU)
            if abs(a - b) > 1e-12 * max(1.0, abs(a)):
                raise AssertionError(f"backend mismatch at N={n}: {a!r} vs {b!r}")
        else:
            t_c = time_one(fallback_product_quad_uniform, values, h)
        print(f"{n:>8d} {t_py * 1e6:>14.2f} {t_c * 1e6:>14.2f} {t_py / t_c:>9.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
