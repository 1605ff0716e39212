"""Timing comparison of the numba and numpy mode-sum kernels.

Runs the same intensity scans on both backends and prints per-scan wall
times.  The first numba call includes JIT compilation and is reported
separately as warm-up.

Usage: python benchmarks/benchmark_backends.py [--steps N] [--repeats R]
"""

from __future__ import annotations

import argparse
import os
import time

from doubleslit import kernels
from doubleslit.config import parse_config, with_detector
from doubleslit.farfield import scan

CASES = {
    "narrow slit (a=1, d=5 wavelengths)": "a = 1 lambda\nd = 5 lambda\n",
    "default (a=5, d=25 wavelengths)": "",
    "wide slit (a=50, d=100 wavelengths)": "a = 50 lambda\nd = 100 lambda\n",
}


def time_scan(config, backend: str, repeats: int) -> list[float]:
    os.environ["DOUBLESLIT_BACKEND"] = backend
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        scan(config)
        times.append(time.perf_counter() - start)
    return times


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=2001, help="scan grid points")
    parser.add_argument("--repeats", type=int, default=5, help="timed runs per case")
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    if kernels.HAVE_NUMBA:
        warmup = with_detector(parse_config(""), steps=8)
        start = time.perf_counter()
        time_scan(warmup, "numba", 1)
        print(f"numba warm-up (JIT): {time.perf_counter() - start:.2f} s")
    else:
        print("numba not importable; timing numpy only")

    header = f"{'case':<42s}" + "".join(f"{b:>12s}" for b in backends)
    print(header)
    print("-" * len(header))
    for label, text in CASES.items():
        config = with_detector(parse_config(text), steps=args.steps)
        row = f"{label:<42s}"
        for backend in backends:
            best = min(time_scan(config, backend, args.repeats))
            row += f"{best * 1e3:>10.2f}ms"
        print(row)

    os.environ.pop("DOUBLESLIT_BACKEND", None)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
