"""Time the compiled kernels against the pure-Python fallback.

Runs the hot search kernels on a few representative rings with both
backends and prints per-kernel timings plus the speedup.  The two
backends are exercised directly (not through the dispatch layer), so
this works no matter which one the package selected at import.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeat 5 --rings m2f3,zmod30
"""

import argparse
import time

import numpy as np

from exchange_kit import MatrixRing, ProductRing, ZMod, triangular_ring
from exchange_kit._kernels import pure

try:
    from exchange_kit._kernels import _fast
except ImportError:
    _fast = None


RINGS = {
    "zmod16": lambda: ZMod(16),
    "zmod30": lambda: ZMod(30),
    "t2f2": lambda: triangular_ring(2),
    "z2xz4": lambda: ProductRing([ZMod(2), ZMod(4)]),
    "m2f2": lambda: MatrixRing(ZMod(2), 2),
    "m2f3": lambda: MatrixRing(ZMod(3), 2),
    "m2f5": lambda: MatrixRing(ZMod(5), 2),   # order 625: the slow end
}


def kernels_for(t):
    """name -> (fast thunk, pure thunk) over the same tables."""
    mul_f, add_f, neg_f = t.mul, t.add, t.neg
    mul_p, add_p, neg_p = t.mul_rows(), t.add_rows(), t.neg_row()
    inv_f = [int(i) for i in _fast.inverse_table(mul_f, t.one)] if _fast else []
    inv_p = list(pure.inverse_table(mul_p, t.one))
    mask_f = np.array([1 if j >= 0 else 0 for j in inv_p], dtype=np.uint8)
    mask_p = [j >= 0 for j in inv_p]
    xs = range(t.n)
    return {
        "idempotents": (
            lambda: _fast.idempotent_indices(mul_f),
            lambda: pure.idempotent_indices(mul_p)),
        "inverse_table": (
            lambda: _fast.inverse_table(mul_f, t.one),
            lambda: pure.inverse_table(mul_p, t.one)),
        "suitable_search(all x)": (
            lambda: [_fast.suitable_search(add_f, mul_f, neg_f, t.one, x)
                     for x in xs],
            lambda: [pure.suitable_search(add_p, mul_p, neg_p, t.one, x)
                     for x in xs]),
        "inner_inverse(all x)": (
            lambda: [_fast.inner_inverse(mul_f, x) for x in xs],
            lambda: [pure.inner_inverse(mul_p, x) for x in xs]),
        "radical": (
            lambda: _fast.radical_indices(add_f, mul_f, neg_f, t.one, mask_f),
            lambda: pure.radical_indices(add_p, mul_p, neg_p, t.one, mask_p)),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="take the best of this many runs (default 3)")
    ap.add_argument("--rings", default=",".join(RINGS),
                    help="comma-separated subset of: " + ", ".join(RINGS))
    args = ap.parse_args(argv)

    if _fast is None:
        print("compiled backend not importable; nothing to compare")
        return 1

    names = [s.strip() for s in args.rings.split(",") if s.strip()]
    unknown = [s for s in names if s not in RINGS]
    if unknown:
        ap.error(f"unknown ring(s): {', '.join(unknown)}")

    header = f"{'ring':8} {'kernel':24} {'pure':>10} {'fast':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name in names:
        ring = RINGS[name]()
        t = ring.tables()
        for kname, (fast_fn, pure_fn) in kernels_for(t).items():
            tp = best_of(pure_fn, args.repeat)
            tf = best_of(fast_fn, args.repeat)
            ratio = tp / tf if tf > 0 else float("inf")
            print(f"{name:8} {kname:24} {tp * 1e3:9.2f}ms {tf * 1e3:9.2f}ms "
                  f"{ratio:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
