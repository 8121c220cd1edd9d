#!/usr/bin/env python3
"""Benchmark the hot kernels on the active backend.

Run directly for one backend, or with ``--compare`` to re-execute itself
under both backends (numba JIT vs the NumPy/Python fallback selected by
``HECKEZEROS_DISABLE_NUMBA=1``) and print the speedups.

    python benchmarks/bench_kernels.py --compare
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _time(fn, reps):
    fn()  # warm-up (includes JIT compilation on the numba path)
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def run_workloads():
    from heckezeros import _kernels, dh, p4, trial_functions as tf

    tri = tf.triangle(2.2)
    cos_fam = tf.autocorrelation(alpha=0.7, c0=1.0, c1=1.0, beta=1.4, s=2.2)
    ts = np.linspace(-50.0, 50.0, 4001)
    q = p4.PositivityQuery(2 * 0.8704, 2 * 0.8704, 0.8704**2 + 1,
                           1.316, 1.4387, 1.7825)

    workloads = {
        "grid minimum of the quartic combination (4001 pts)":
            (lambda: _kernels.p4_combo_min(q.A, q.B, q.C, q.a, q.b, q.c, ts), 50),
        "smoothed bisection, triangle weight":
            (lambda: dh.solve_smoothed("sz-lp-quadratic", tri, 0.01), 500),
        "smoothed bisection, cosine-modulated weight":
            (lambda: dh.solve_smoothed("cc-lp-principal-real", cos_fam, 0.3443), 500),
        "polynomial bisection":
            (lambda: dh.solve_poly("cc-lp-nonprincipal", 0.1227, 1.097, 0.7788), 2000),
    }
    results = {}
    for name, (fn, reps) in workloads.items():
        results[name] = _time(fn, reps)
    return _kernels.backend(), results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--compare", action="store_true",
                    help="run both backends in subprocesses and compare")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    args = ap.parse_args()

    if not args.compare:
        backend, results = run_workloads()
        if args.json:
            print(json.dumps({"backend": backend, "seconds": results}))
        else:
            print(f"backend: {backend}")
            for name, sec in results.items():
                print(f"  {name}: {sec * 1e6:9.1f} us/call")
        return 0

    outputs = {}
    for label, disable in (("numba", ""), ("numpy", "1")):
        env = dict(os.environ)
        if disable:
            env["HECKEZEROS_DISABLE_NUMBA"] = disable
        else:
            env.pop("HECKEZEROS_DISABLE_NUMBA", None)
        proc = subprocess.run([sys.executable, os.path.abspath(__file__), "--json"],
                              env=env, capture_output=True, text=True, check=True)
        outputs[label] = json.loads(proc.stdout)
    print(f"{'workload':<52s} {'numba':>12s} {'numpy':>12s} {'speedup':>8s}")
    for name in outputs["numba"]["seconds"]:
        a = outputs["numba"]["seconds"][name]
        b = outputs["numpy"]["seconds"][name]
        print(f"{name:<52s} {a * 1e6:10.1f}us {b * 1e6:10.1f}us {b / a:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
