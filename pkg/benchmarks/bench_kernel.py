"""Compare the compiled modular kernel against the pure-Python fallback.

Times row reduction, vector reduction against an echelon basis, and modular
matrix multiplication on random inputs, and checks that both backends agree
on every case. Run directly:

    python benchmarks/bench_kernel.py
"""

from __future__ import annotations

import random
import time

from utgradings import _kernel_py

try:
    from utgradings import _speedups
except ImportError:
    _speedups = None


def _rand_matrix(rng, rows, cols, p):
    return [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]


def _time(fn, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        out = fn()
    return time.perf_counter() - t0, out


def bench(p=10007, size=60, reps=30, seed=0):
    rng = random.Random(seed)
    mats = [_rand_matrix(rng, size, size, p) for _ in range(reps)]
    vecs = [[rng.randrange(p) for _ in range(size)] for _ in range(reps)]
    backends = [("python", _kernel_py)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))

    print(f"p={p} size={size}x{size} reps={reps}")
    results = {}
    for name, mod in backends:
        t_rref, _ = _time(lambda: [mod.rref_mod(m, p) for m in mats], 1)
        rrefs = [mod.rref_mod(m, p) for m in mats]
        t_red, _ = _time(
            lambda: [
                mod.reduce_mod(v, rows, piv, p) for v, (rows, piv) in zip(vecs, rrefs)
            ],
            10,
        )
        t_mm, _ = _time(lambda: [mod.matmul_mod(m, m, p) for m in mats], 1)
        results[name] = (rrefs, t_rref, t_red, t_mm)
        print(f"  {name:9s} rref {t_rref:8.4f}s   reduce {t_red:8.4f}s   matmul {t_mm:8.4f}s")

    if _speedups is not None:
        py, cy = results["python"], results["compiled"]
        for (r1, p1), (r2, p2) in zip(py[0], cy[0]):
            assert [list(r) for r in r1] == [list(r) for r in r2] and list(p1) == list(p2)
        speedup = py[1] / cy[1] if cy[1] else float("inf")
        print(f"  backends agree on all {reps} reductions; rref speedup {speedup:.1f}x")
    else:
        print("  compiled backend unavailable; nothing to compare")


if __name__ == "__main__":
    bench()
