"""Time the numba kernels against their numpy counterparts.

    python3 benchmarks/bench_kernels.py [--dims 8 16 32] [--repeat 5]

Prints one row per (kernel, d) with the best wall time of each backend and
the max absolute difference between them.  Without numba only the numpy
column is filled.
"""

import argparse
import time

import numpy as np

from qphase import _kernels
from qphase.schwinger import s_phase_table


def best_of(fn, args, repeat):
    fn(*args)  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def make_args(name, d, rng):
    if name == "expand":
        return (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)),)
    if name == "delta_table":
        return (s_phase_table(d),)
    if name == "aa_table":
        psi = rng.normal(size=d) + 1j * rng.normal(size=d)
        psi /= np.linalg.norm(psi)
        return (psi, np.arange(2 * d), np.linspace(0, 2 * np.pi, 4 * d, endpoint=False))
    ms, ws = _kernels._sym_range(d)
    return (d, 1.5, 0.7, ms, ws)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    jitted = {
        "expand": _kernels._expand,
        "delta_table": _kernels._delta_table,
        "aa_table": _kernels._aa_table,
        "delta_ct": _kernels._delta_ct,
    }
    rng = np.random.default_rng(0)
    print(f"backend: {_kernels.backend()}")
    print(f"{'kernel':<12} {'d':>4} {'numpy [ms]':>11} {'numba [ms]':>11} {'speedup':>8} {'max diff':>10}")
    for name in ("expand", "delta_table", "aa_table", "delta_ct"):
        for d in args.dims:
            if name == "delta_table" and d > 24:
                continue  # d^4 output; the loop version gets slow
            a = make_args(name, d, rng)
            t_np, ref = best_of(_kernels.numpy_impl[name], a, args.repeat)
            if _kernels.USE_NUMBA:
                t_nb, out = best_of(jitted[name], a, args.repeat)
                diff = float(np.abs(out - ref).max())
                print(f"{name:<12} {d:>4} {1e3 * t_np:>11.3f} {1e3 * t_nb:>11.3f} {t_np / t_nb:>8.1f} {diff:>10.1e}")
            else:
                print(f"{name:<12} {d:>4} {1e3 * t_np:>11.3f} {'-':>11} {'-':>8} {'-':>10}")


if __name__ == "__main__":
    main()
