#!/usr/bin/env python3
"""Time the numba kernels against their numpy twins.

Both backends are imported side by side, so no environment flag is needed
here. Numba functions are called once before timing to exclude compilation.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

import argparse
import json
import timeit

import numpy as np

from lalpha import kernels
from lalpha.herglotz import random_measure


def cases():
    rng = np.random.default_rng(0)
    mu = random_measure(3, 5)
    rot, w = mu.conj_points, mu.weights
    z = 0.99 * np.sqrt(rng.uniform(size=20000)) * np.exp(2j * np.pi * rng.uniform(size=20000))
    poly = np.exp(2j * np.pi * np.arange(4096) / 4096) * 0.9
    pts = z[:512]
    thetas = np.linspace(0, 2 * np.pi, 48, endpoint=False)
    ws = np.linspace(0, 1, 48)

    def run_dopri(b):
        out_s = np.empty(4096)
        out_w = np.empty(4096, dtype=np.complex128)
        out_dw = np.empty(4096, dtype=np.complex128)
        return b.dopri_run(0.0, rot, w, 1.0 + 0j, 0.95 + 0.1j, 0.0, 20.0, 1e-3, 1e-10,
                           1e-12, 1 - 1e-12, np.inf, out_s, out_w, out_dw)

    return {
        "h_array (20k points)": lambda b: b.h_array(z, 0),
        "synth_p (20k points, 5 atoms)": lambda b: b.synth_p(0.3, rot, w, z),
        "synth_fprime (20k points, 5 atoms)": lambda b: b.synth_fprime(0.3, rot, w, z),
        "winding (512 points, 4096-gon)": lambda b: b.winding(pts, poly),
        "fs_scan (48^3 grid)": lambda b: b.fs_scan(1.0 + 0j, thetas, ws),
        "dopri_run (s = 0..20)": run_dopri,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write results here")
    args = ap.parse_args()

    backends = [kernels.numpy_backend]
    if kernels.numba_backend is not None:
        backends.append(kernels.numba_backend)
    results = []
    print(f"{'kernel':38s} " + " ".join(f"{b.name:>12s}" for b in backends) + "   speedup")
    for name, fn in cases().items():
        times = {}
        for b in backends:
            fn(b)  # warm-up / compile
            times[b.name] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
        speed = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        print(f"{name:38s} " + " ".join(f"{times[b.name] * 1e3:10.2f}ms" for b in backends)
              + f"   {speed:7.1f}x")
        results.append({"kernel": name, "seconds": times, "speedup": speed})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
