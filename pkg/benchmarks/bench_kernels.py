#!/usr/bin/env python3
"""Benchmark the compiled sweep kernels against the numpy fallback.

Times the two primitives over representative matrix sizes and grid lengths,
plus one end-to-end parallelism decision, and prints the speedups.

Usage:
    python benchmarks/bench_kernels.py [--grid 1024] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from normpar import _kernels
from normpar.config import ToleranceConfig
from normpar.parallel import defect_oracle


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=1024)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = _kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend is not built; showing the numpy fallback only")

    rng = np.random.default_rng(0)
    thetas = 2.0 * np.pi * np.arange(args.grid) / args.grid
    sizes = (2, 3, 4, 5, 8, 16)

    print(f"grid = {args.grid} phases, best of {args.repeats} runs")
    print(f"{'kernel':34s} {'n':>3s} " + " ".join(f"{name:>12s}" for name in backends) + "  speedup")
    for n in sizes:
        p = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
        q = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
        h0 = (p + p.conj().T) / 2.0
        rows = {
            "sweep_singular_values": lambda b, p=p, q=q: _kernels.sweep_singular_values(
                p, q, thetas, backend=b
            ),
            "sweep_hermitian_eigvals": lambda b, h0=h0, q=q: _kernels.sweep_hermitian_eigvals(
                h0, q, thetas, backend=b
            ),
        }
        for name, fn in rows.items():
            times = {b: _time(lambda b=b: fn(b), args.repeats) for b in backends}
            ratio = (
                f"{times['python'] / times['cython']:.1f}x"
                if "cython" in times
                else "-"
            )
            cells = " ".join(f"{times[b] * 1e3:9.2f} ms" for b in backends)
            print(f"{name:34s} {n:3d} {cells}  {ratio}")

    # end to end: one parallelism decision per mode
    cfg = ToleranceConfig(phase_grid=args.grid)
    t = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))) / np.sqrt(2)
    s = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))) / np.sqrt(2)
    print()
    modes = list(backends) + (["auto"] if "cython" in backends else [])
    for mode in modes:
        prev = _kernels.BACKEND
        _kernels.BACKEND = mode
        try:
            elapsed = _time(lambda: defect_oracle(t, s, cfg), args.repeats)
        finally:
            _kernels.BACKEND = prev
        print(f"defect_oracle (n=4, full sweep + refinement) [{mode:7s}]: {elapsed * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()
