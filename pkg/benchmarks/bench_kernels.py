#!/usr/bin/env python3
"""Compare the compiled and pure-Python recurrence kernels.

Runs the LSTM forward+backward recurrence at a few desk-scale shapes and
reports per-call wall time for each backend plus the speedup. Also asserts
the two backends agree to 1e-12.

Usage: python benchmarks/bench_kernels.py [--repeats 50]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from anxpipe.neuralcore import kernels_py

try:
    from anxpipe.neuralcore import _kernel_cy
except ImportError:
    _kernel_cy = None

SHAPES = [
    (8, 16),  # N, H
    (16, 32),
    (32, 64),
    (64, 64),
    (16, 128),
]


def run_backend(backend, zpre, wh, dh, repeats):
    h, c, g = backend.recurrent_forward(zpre, wh)
    dz = backend.recurrent_backward(wh, h, c, g, dh)
    start = time.perf_counter()
    for _ in range(repeats):
        h, c, g = backend.recurrent_forward(zpre, wh)
        backend.recurrent_backward(wh, h, c, g, dh)
    elapsed = (time.perf_counter() - start) / repeats
    return elapsed, h, dz


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()

    if _kernel_cy is None:
        print("compiled kernel unavailable; run pip install -e . first")
        return

    print(f"{'N':>4} {'H':>4}  {'python (ms)':>12}  {'cython (ms)':>12}  {'speedup':>8}")
    rng = np.random.default_rng(0)
    for n, h_dim in SHAPES:
        zpre = np.ascontiguousarray(rng.normal(size=(n, 4 * h_dim)))
        wh = np.ascontiguousarray(rng.normal(size=(4 * h_dim, h_dim)) * 0.2)
        dh = np.ascontiguousarray(rng.normal(size=(n, h_dim)))
        t_py, h_py, dz_py = run_backend(kernels_py, zpre, wh, dh, args.repeats)
        t_cy, h_cy, dz_cy = run_backend(_kernel_cy, zpre, wh, dh, args.repeats)
        assert np.allclose(h_py, h_cy, atol=1e-12), "forward kernels disagree"
        assert np.allclose(dz_py, dz_cy, atol=1e-12), "backward kernels disagree"
        print(
            f"{n:>4} {h_dim:>4}  {1e3 * t_py:>12.3f}  {1e3 * t_cy:>12.3f}  {t_py / t_cy:>8.2f}x"
        )


if __name__ == "__main__":
    main()
