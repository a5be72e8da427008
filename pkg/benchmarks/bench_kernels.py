"""Time the oracle kernels on both backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--max-states 262144]
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from wgshift import _kernels
from wgshift.ring import RingSpec, ring_for


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def random_instance(n: int, rng: random.Random):
    ring = ring_for(RingSpec.gf(2, 2))
    phi = np.array([rng.randrange(n) for _ in range(n)], dtype=np.int64)
    w = np.array([rng.randrange(4) for _ in range(n)], dtype=np.int64)
    return phi, w, ring.mul_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--max-states", type=int, default=4**9)
    args = ap.parse_args()
    if not _kernels.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = random.Random(0)

    # compile once outside the timings
    phi, w, mul = random_instance(2, rng)
    t = _kernels.sigma_table(phi, w, mul, 4, "numba")
    _kernels.cycle_mask(t, "numba"), _kernels.covers_all(t, 0, "numba")
    _kernels.prox_matrix(t, "numba"), _kernels.asym_matrix(t, "numba")

    print(f"{'kernel':<12}{'states':>9}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    n = 3
    while 4**n <= args.max_states:
        phi, w, mul = random_instance(n, rng)
        table = _kernels.sigma_table(phi, w, mul, 4, "numpy")
        kernels = {
            "sigma_table": lambda b: _kernels.sigma_table(phi, w, mul, 4, b),
            "cycle_mask": lambda b: _kernels.cycle_mask(table, b),
            "covers_all": lambda b: _kernels.covers_all(table, 0, b),
        }
        if 4**n <= 4096:
            kernels["prox_matrix"] = lambda b: _kernels.prox_matrix(table, b)
            kernels["asym_matrix"] = lambda b: _kernels.asym_matrix(table, b)
        for name, fn in kernels.items():
            a = best_of(lambda: fn("numpy"), args.repeat)
            b = best_of(lambda: fn("numba"), args.repeat)
            print(f"{name:<12}{4**n:>9}{a * 1e3:>12.3f}{b * 1e3:>12.3f}{a / b:>9.1f}x")
        n += 2


if __name__ == "__main__":
    main()
