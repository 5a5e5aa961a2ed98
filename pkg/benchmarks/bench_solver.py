"""Benchmark the float transportation solvers: compiled kernel vs pure
Python, on random dense instances of growing size.

Usage: python3 benchmarks/bench_solver.py [--sizes 5,10,20,40] [--rounds 30]
The two engines must agree on every instance to within 1e-9 relative
error; the script exits nonzero if they ever disagree.
"""

import argparse
import random
import statistics
import sys
import time

from maxwass.netsimplex import solve_transportation

try:
    from maxwass._netsimplex import solve_transportation_f64
except ImportError:
    solve_transportation_f64 = None


def make_instance(rng, m, n):
    cost = [[rng.uniform(0.0, 10.0) for _ in range(n)] for _ in range(m)]
    supply = [rng.uniform(0.5, 2.0) for _ in range(m)]
    demand = [rng.uniform(0.5, 2.0) for _ in range(n)]
    total_s, total_d = sum(supply), sum(demand)
    demand = [d * total_s / total_d for d in demand]
    return cost, supply, demand


def time_engine(run, instances):
    best = []
    totals = []
    for cost, supply, demand in instances:
        start = time.perf_counter()
        total, _ = run(cost, supply, demand)
        best.append(time.perf_counter() - start)
        totals.append(total)
    return statistics.median(best), totals


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="5,10,20,40")
    parser.add_argument("--rounds", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    if solve_transportation_f64 is None:
        print("compiled kernel unavailable; benchmarking pure engine only")

    rng = random.Random(args.seed)
    print(f"{'size':>6} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}")
    disagreements = 0
    for size in sizes:
        instances = [make_instance(rng, size, size) for _ in range(args.rounds)]
        pure_t, pure_vals = time_engine(
            lambda c, s, d: solve_transportation(c, s, d, tol=1e-12), instances
        )
        if solve_transportation_f64 is None:
            print(f"{size:>6} {pure_t * 1e3:>12.3f} {'-':>14} {'-':>8}")
            continue
        comp_t, comp_vals = time_engine(solve_transportation_f64, instances)
        for a, b in zip(pure_vals, comp_vals):
            if abs(a - b) > 1e-9 * max(1.0, abs(a), abs(b)):
                disagreements += 1
        print(
            f"{size:>6} {pure_t * 1e3:>12.3f} {comp_t * 1e3:>14.3f} "
            f"{pure_t / comp_t:>7.1f}x"
        )
    if disagreements:
        print(f"ERROR: engines disagreed on {disagreements} instances")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())