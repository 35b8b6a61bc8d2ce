"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--scale 1.0]

Prints one line per kernel: problem size, best wall time per backend,
speed-up and the largest relative difference between the two results.
"""

import argparse
import time

import numpy as np

from tentops import _pycore, kernels
from tentops.geometry import generate_lattice, uniform_disk_samples

try:
    from tentops import _core
except ImportError:  # pragma: no cover
    _core = None


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def rel_diff(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def cases(scale):
    n = int(200_000 * scale)
    z = uniform_disk_samples(n, 0.999, seed=1)
    w = np.random.default_rng(2).random(n)
    a = uniform_disk_samples(max(8, int(200 * scale)), 0.99, seed=3)
    u = uniform_disk_samples(max(8, int(400 * scale)), 0.99, seed=4)
    bases = 0.95 * np.exp(2j * np.pi * np.arange(12) / 12)
    expo = np.linspace(0.5, 3.0, 12)
    coef = np.ones(12, dtype=complex)
    lat = generate_lattice(0.5, 0.2, 0.99)
    return [
        (f"kernel_sums t=3 ({n}x{a.size})", lambda impl: kernels.kernel_sums(z, w, a, 3.0, impl)),
        (f"kernel_sums t=2.7 ({n}x{a.size})", lambda impl: kernels.kernel_sums(z, w, a, 2.7, impl)),
        (f"box_sums ({n}x{u.size})", lambda impl: kernels.box_sums(z, w, u, impl)),
        (f"atom_sum ({n}x12)", lambda impl: kernels.atom_sum(z, bases, expo, coef, impl)),
        (f"min_pseudo_hyperbolic ({z.size // 10}x{len(lat)})",
         lambda impl: kernels.min_pseudo_hyperbolic(z[: z.size // 10], lat.nodes, impl)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scale", type=float, default=1.0)
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled backend not built; nothing to compare")
        return 1
    print(f"{'kernel':45s} {'cython':>10s} {'python':>10s} {'speedup':>8s} {'rel diff':>9s}")
    for name, fn in cases(args.scale):
        tc, rc = best_of(lambda: fn(_core), args.repeat)
        tp, rp = best_of(lambda: fn(_pycore), args.repeat)
        print(f"{name:45s} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f} {rel_diff(rc, rp):9.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
