"""Micro-benchmark: compiled scalar kernel vs chunked numpy fallback.

Runs the certified series summation on workloads spanning the regimes
the physics actually visits, from two-term deep-quantum sums to
multi-million-term quasi-classical ones, and reports per-case timings
and the speedup of the compiled path.

Usage:
    python bench/bench_kernels.py [--repeat 5] [--include-heavy]
    python bench/bench_kernels.py --theta 1e-4 --alpha 2.0
"""

import argparse
import time

from fracszilard import kernels

# (theta, alpha) cases: label by the regime they probe
CASES = [
    ("deep quantum", 2000.0, 2.0),
    ("deep quantum, fractional", 5e7, 0.6),
    ("moderate", 0.5, 1.5),
    ("grid edge", 0.0136, 2.0),
    ("slow, quadratic", 1e-5, 2.0),
    ("slow, linear", 3e-4, 1.0),
    ("slow, fractional", 0.02, 0.7),
]
HEAVY_CASES = [
    ("very slow, linear", 1e-5, 1.0),
]


def time_call(func, theta, alpha, tol, cap, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = func(theta, alpha, tol, cap)
        best = min(best, time.perf_counter() - t0)
    return best, result


def run_case(label, theta, alpha, tol, cap, repeat):
    t_np, r_np = time_call(kernels.series_sums_numpy, theta, alpha, tol, cap, repeat)
    if kernels.series_sums_numba is None:
        print(f"{label:<26} theta={theta:<8g} alpha={alpha:<4g} "
              f"n={r_np[2]:<8d} numpy={t_np * 1e3:8.3f} ms  (numba unavailable)")
        return
    t_nb, r_nb = time_call(kernels.series_sums_numba, theta, alpha, tol, cap, repeat)
    ds0 = abs(r_nb[0] - r_np[0]) / r_np[0]
    print(f"{label:<26} theta={theta:<8g} alpha={alpha:<4g} n={r_nb[2]:<8d} "
          f"numba={t_nb * 1e3:8.3f} ms  numpy={t_np * 1e3:8.3f} ms  "
          f"speedup={t_np / t_nb:6.1f}x  dS0={ds0:.1e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions per case; the best time is kept")
    parser.add_argument("--tol", type=float, default=1e-14)
    parser.add_argument("--cap", type=int, default=10**7)
    parser.add_argument("--include-heavy", action="store_true",
                        help="add multi-million-term cases")
    parser.add_argument("--theta", type=float, help="single-case mode")
    parser.add_argument("--alpha", type=float, help="single-case mode")
    args = parser.parse_args()

    if kernels.series_sums_numba is not None:
        # compile outside the timed region
        kernels.series_sums_numba(1.0, 2.0, args.tol, args.cap)
    kernels.series_sums_numpy(1.0, 2.0, args.tol, args.cap)

    if (args.theta is None) != (args.alpha is None):
        parser.error("--theta and --alpha must be given together")
    if args.theta is not None:
        run_case("custom", args.theta, args.alpha, args.tol, args.cap, args.repeat)
        return

    cases = CASES + (HEAVY_CASES if args.include_heavy else [])
    print(f"backend bound at import: {kernels.active_backend()}; "
          f"best of {args.repeat} runs per case")
    for label, theta, alpha in cases:
        run_case(label, theta, alpha, args.tol, args.cap, args.repeat)


if __name__ == "__main__":
    main()
