"""Compare the numba-compiled loop kernels with the vectorised numpy path.

    python benchmarks/bench_kernels.py --sizes 4 9 16 36 --reps 50

Both implementations are imported directly from ``sepcheck._kernels`` so
one process times both, whatever ``SEPCHECK_DISABLE_NUMBA`` says. Without
numba installed the "numba" column times the same loops run by CPython.
"""
import argparse
import statistics
import time

import numpy as np

from sepcheck import _accel, _kernels
from sepcheck.linalg import EPS_SPEC, MAX_SWEEPS


def hermitian(n, rng):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (x + x.conj().T) / 2


def median_time(fn, reps):
    fn()  # compile / warm caches
    ts = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return statistics.median(ts)


def bench_jacobi(sizes, reps, rng):
    rows = []
    for n in sizes:
        h = hermitian(n, rng)
        t_loop = median_time(lambda: _kernels.jacobi_loops(h, EPS_SPEC, MAX_SWEEPS), reps)
        t_np = median_time(lambda: _kernels.jacobi_numpy(h, EPS_SPEC, MAX_SWEEPS), reps)
        w_loop = np.sort(_kernels.jacobi_loops(h, EPS_SPEC, MAX_SWEEPS)[0].real)
        w_np = np.sort(_kernels.jacobi_numpy(h, EPS_SPEC, MAX_SWEEPS)[0].real)
        rows.append((f"jacobi n={n}", t_loop, t_np, float(np.max(np.abs(w_loop - w_np)))))
    return rows


def bench_altmin(dims, reps, rng):
    rows = []
    for d1, d2 in dims:
        a = hermitian(d1 * d2, rng)
        f0 = rng.standard_normal(d2) + 1j * rng.standard_normal(d2)
        f0 /= np.linalg.norm(f0)
        args = (a, d1, d2, f0, 1e-13, 200, EPS_SPEC, MAX_SWEEPS)
        t_loop = median_time(lambda: _kernels.altmin_loops(*args), reps)
        t_np = median_time(lambda: _kernels.altmin_numpy(*args), reps)
        diff = abs(_kernels.altmin_loops(*args)[0] - _kernels.altmin_numpy(*args)[0])
        rows.append((f"altmin {d1}x{d2}", t_loop, t_np, float(diff)))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[4, 9, 16, 36, 64])
    p.add_argument("--reps", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    print(f"numba available: {_accel.NUMBA_AVAILABLE}")
    print(f"{'kernel':<16} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8} {'max diff':>10}")
    rows = bench_jacobi(args.sizes, args.reps, rng) + bench_altmin([(2, 2), (2, 3), (3, 3), (4, 4)], args.reps, rng)
    for name, t_loop, t_np, diff in rows:
        print(f"{name:<16} {t_loop * 1e3:>10.4f} {t_np * 1e3:>10.4f} {t_np / t_loop:>7.1f}x {diff:>10.1e}")


if __name__ == "__main__":
    main()
