"""Timing comparison of the compiled kernels against the numpy fallback.

Run as: python benchmarks/bench_kernels.py [repeats]

Workloads mirror the shapes that dominate real runs: the revival average
at the thermal-ensemble window size, and a full-horizon trajectory
integration.
"""

import sys
import time

import numpy as np

from rotobloch import _fallback
from rotobloch.rotor import cos2_diagonal, cos2_offdiagonal

try:
    from rotobloch import _kernels
except ImportError:
    _kernels = None


def _alignment_workload(size=34, samples=100):
    rng = np.random.default_rng(42)
    c = rng.normal(size=size) + 1j * rng.normal(size=size)
    c /= np.linalg.norm(c)
    levels = np.arange(0, 2 * size, 2, dtype=float)
    d = cos2_diagonal(levels, 0)
    o = cos2_offdiagonal(levels[:-1], 0)
    return np.ascontiguousarray(c), levels, d, o, samples


def _time(fn, args, calls):
    best = np.inf
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(calls):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / calls)
    return best


def main() -> int:
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    rows = []

    args = _alignment_workload()
    rows.append(
        (
            "revival_alignment (34 levels, 100 samples)",
            _time(_fallback.revival_alignment, args, repeats),
            _time(_kernels.revival_alignment, args, repeats) if _kernels else None,
        )
    )

    sc_args = (5.0, -0.002, 0.0, np.pi / 4, 40.0, 0.001, np.pi / 2)
    sc_calls = max(1, repeats // 100)
    rows.append(
        (
            "rk4_semiclassical (40k steps)",
            _time(_fallback.rk4_semiclassical, sc_args, sc_calls),
            _time(_kernels.rk4_semiclassical, sc_args, sc_calls)
            if _kernels
            else None,
        )
    )

    print(f"{'workload':<44} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, pure, compiled in rows:
        if compiled is None:
            print(f"{name:<44} {pure * 1e6:>8.1f}us {'absent':>10} {'-':>8}")
        else:
            print(
                f"{name:<44} {pure * 1e6:>8.1f}us {compiled * 1e6:>8.1f}us "
                f"{pure / compiled:>7.1f}x"
            )
    if _kernels is None:
        print("compiled extension not built; showing fallback only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
