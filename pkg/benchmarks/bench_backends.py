#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot kernels in isolation and one full differential-rate
evaluation through each backend.  Run:

    python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import time

import numpy as np


def _time(fn, repeats):
    fn()                                  # warm-up / JIT
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats


def kernel_benchmarks(repeats):
    from dcompton import kernels_numpy
    try:
        from dcompton import kernels_numba
    except ImportError:
        print("numba not available; nothing to compare")
        return

    rng = np.random.default_rng(7)
    ns = 60
    coef_m = np.ascontiguousarray(rng.normal(size=(ns, 3)) + 1j * rng.normal(size=(ns, 3)))
    coef_f = np.ascontiguousarray(rng.normal(size=(ns, 3)) + 1j * rng.normal(size=(ns, 3)))
    sm = np.ascontiguousarray(rng.normal(size=(2, 3, 4, 4)) + 0j)
    sf = np.ascontiguousarray(rng.normal(size=(2, 3, 4, 4)) + 0j)
    prop0 = np.ascontiguousarray(rng.normal(size=(4, 4)) + 0j)
    kapsl = np.ascontiguousarray(rng.normal(size=(4, 4)) + 0j)

    cases = [
        ("gen_bessel_table(-60..60, nodes=256)",
         lambda m: (lambda: m.gen_bessel_table(-60, 60, 11.0, -4.0, 256))),
        ("bessel_j_array(80, x=37.0)",
         lambda m: (lambda: m.bessel_j_array(80, 37.0))),
        ("channel_brackets(ns=60, 2x2 variants)",
         lambda m: (lambda: m.channel_brackets(coef_m, coef_f, sm, sf, prop0,
                                               kapsl, 1.7 + 0j, 0.9 + 0j, -30, 0.0))),
    ]
    print(f"{'kernel':45s} {'numba':>12s} {'numpy':>12s} {'speedup':>9s}")
    for name, make in cases:
        t_nb = _time(make(kernels_numba), repeats)
        t_np = _time(make(kernels_numpy), repeats)
        print(f"{name:45s} {t_nb * 1e6:10.1f}us {t_np * 1e6:10.1f}us "
              f"{t_np / t_nb:8.1f}x")


def end_to_end(repeats):
    import subprocess
    import sys
    code = (
        "import time\n"
        "import dcompton as dc\n"
        "from dcompton import kinematics as kn\n"
        "cfg = dc.ScatterConfig(laser=dc.LaserConfig(2.5, 1.0),\n"
        "    electron=dc.ElectronConfig(510.998946), omega_b=0.7,\n"
        "    dir_b=kn.PhotonDirection(1e-3, 0.3), dir_c=kn.PhotonDirection(5e-4, 2.1))\n"
        "dc.differential_rate(cfg)\n"
        f"t0 = time.perf_counter()\n"
        f"for _ in range({repeats}):\n"
        "    dc.differential_rate(cfg)\n"
        f"print((time.perf_counter() - t0) / {repeats})\n"
    )
    import os
    print(f"\n{'full differential_rate point':45s}", end="")
    times = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, DCOMPTON_BACKEND=backend)
        proc = subprocess.run([sys.executable, "-c", code], env=env,
                              capture_output=True, text=True)
        times[backend] = float(proc.stdout.strip())
    print(f" {times['numba'] * 1e3:9.2f}ms {times['numpy'] * 1e3:9.2f}ms "
          f"{times['numpy'] / times['numba']:8.1f}x")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=50)
    args = ap.parse_args()
    kernel_benchmarks(args.repeats)
    end_to_end(max(5, args.repeats // 10))
