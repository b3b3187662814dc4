#!/usr/bin/env python3
"""Benchmark the compiled subset-scan kernel against the pure-Python one.

Runs the full 2^n minimal-support scan on a few benchmark graphs with
both backends and prints the timings and speedup. Usage:

    python3 benchmarks/bench_scan.py [--nmax 15]
"""

import argparse
import time

import numpy as np

from mpcskit import _scan_py
from mpcskit.generators import gen_fig1, gen_fig5, gen_path, gen_random_tree
from mpcskit.graph import laplacian
from mpcskit.spectral import DEFAULT_TOL, spectrum

try:
    from mpcskit import _scan
except ImportError:
    _scan = None


def run(name, g):
    spec = spectrum(laplacian(g))
    bases = [np.asarray(B) for B in spec.bases]
    rt = DEFAULT_TOL.rank_cutoff(g.n)
    zt = DEFAULT_TOL.eps_zero

    t0 = time.perf_counter()
    ref = _scan_py.scan_mpcs(bases, g.n, g.n, rt, zt)
    t_py = time.perf_counter() - t0

    if _scan is None:
        print(f"{name:24s} n={g.n:3d}  python {t_py:8.3f}s  "
              f"(compiled backend unavailable)")
        return
    t0 = time.perf_counter()
    fast = _scan.scan_mpcs(bases, g.n, g.n, rt, zt)
    t_c = time.perf_counter() - t0
    assert ref == fast, f"{name}: backends disagree"
    print(f"{name:24s} n={g.n:3d}  python {t_py:8.3f}s  "
          f"compiled {t_c:8.3f}s  speedup {t_py / t_c:6.1f}x  "
          f"mpcs={len(ref)}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=15)
    args = ap.parse_args()

    run("fig1", gen_fig1())
    run("path-12", gen_path(12))
    if args.nmax >= 14:
        run("random-tree-14", gen_random_tree(14, 42))
    if args.nmax >= 15:
        run("fig5", gen_fig5())


if __name__ == "__main__":
    main()
