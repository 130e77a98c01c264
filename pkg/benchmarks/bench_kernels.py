#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Covers the two hot paths of page recognition: connected-component labeling
over a full page raster and prototype distance scans.  Run from the repo
root after `python3 setup.py build_ext --inplace`:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from glyphkit.kernels import pyk
from glyphkit.synthcorpus import render_isolated_page

try:
    from glyphkit.kernels import _ck
except ImportError:
    _ck = None


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def fmt(seconds):
    return f"{seconds * 1e3:8.2f} ms"


def main():
    rng = np.random.Generator(np.random.PCG64(5))
    page, _ = render_isolated_page(rng, repetitions=8)
    ink = page.astype(np.uint8)
    protos = rng.random((104, 66))
    vecs = rng.random((2000, 66))
    glyph = (rng.random((32, 32)) < 0.5).astype(np.uint8)
    crop = (rng.random((58, 41)) < 0.5).astype(np.uint8)

    cases = [
        ("label_ink %dx%d page" % ink.shape, "label_ink", (ink,)),
        ("sqdist 2000x104x66", "sqdist_matrix", (vecs, protos)),
        ("resample 58x41 -> 32x32 (x1000)", "resample_nearest", (crop, 32, 32)),
        ("zone_means 32x32 (x1000)", "zone_means", (glyph,)),
    ]

    print(f"{'kernel':36} {'pure':>12} {'compiled':>12} {'speedup':>9}")
    for label, name, args in cases:
        reps = 1000 if "(x1000)" in label else 1

        def run(mod):
            fn = getattr(mod, name)
            for _ in range(reps):
                fn(*args)

        t_py = timeit(run, pyk)
        if _ck is None:
            print(f"{label:36} {fmt(t_py)} {'not built':>12}")
            continue
        t_c = timeit(run, _ck)
        print(f"{label:36} {fmt(t_py)} {fmt(t_c)} {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
