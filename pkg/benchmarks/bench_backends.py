"""Timing comparison: compiled kernels vs the NumPy fallback.

Runs the three shared primitives in-process against both backend
modules, then times one end-to-end zero-set scan per backend in a
subprocess (the backend is chosen at import, so a fresh interpreter is
the only honest way to switch it).

Usage::

    python benchmarks/bench_backends.py [--repeats 5] [--skip-scan]
"""
import argparse
import math
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from fracsmooth import _pykernels

try:
    from fracsmooth import _ckernels
except ImportError:
    _ckernels = None


def best_of(repeats, fn, *args):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def row(label, py_time, c_time):
    speedup = "" if c_time is None else f"{py_time / c_time:8.1f}x"
    c_text = "     n/a" if c_time is None else f"{c_time * 1e3:8.2f}"
    print(f"{label:<34} {py_time * 1e3:8.2f} {c_text} {speedup}")


def bench_primitives(repeats):
    cases = [
        ("series sum, 2e5 terms", "z_series_sum", (2.5, 5.9, 200_000)),
        ("series sum batch, 512 x 4e3", "z_series_sum_batch",
         (2.5, np.linspace(0.1, 12.0, 512), 4_000)),
        ("quadrature panels, 4096 x GK15", "gk15_panels",
         (2.5, np.linspace(0.0, 5.5, 4097)[:-1], np.linspace(0.0, 5.5, 4097)[1:])),
    ]
    print(f"{'primitive':<34} {'python':>8} {'compiled':>8} {'speedup':>9}")
    print("-" * 62)
    for label, name, args in cases:
        py_best, _ = best_of(repeats, getattr(_pykernels, name), *args)
        c_best = None
        if _ckernels is not None:
            c_best, _ = best_of(repeats, getattr(_ckernels, name), *args)
        row(label, py_best, c_best)


SCAN_SNIPPET = (
    "import math, time\n"
    "from fracsmooth import scan_zero_set, backend_name\n"
    "t0 = time.perf_counter()\n"
    "recs = scan_zero_set(14.0, 8 * math.pi, 60, 384, beta_min=4.0)\n"
    "dt = time.perf_counter() - t0\n"
    "print(f'{backend_name()}: {len(recs)} records in {dt:.2f}s')\n"
)


def bench_scan():
    print()
    print("end-to-end zero-set scan (fresh interpreter per backend)")
    print("-" * 62)
    backends = ["python"] if _ckernels is None else ["python", "compiled"]
    for backend in backends:
        env = dict(os.environ, FRACSMOOTH_BACKEND=backend)
        res = subprocess.run([sys.executable, "-c", SCAN_SNIPPET],
                             capture_output=True, text=True, env=env)
        sys.stdout.write(res.stdout or res.stderr)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions per case (min is reported)")
    parser.add_argument("--skip-scan", action="store_true",
                        help="only run the in-process primitive timings")
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("note: compiled extension not importable; timing fallback only")
    bench_primitives(args.repeats)
    if not args.skip_scan:
        bench_scan()
    return 0


if __name__ == "__main__":
    sys.exit(main())
