#!/usr/bin/env python3
"""Compare the jit-compiled kernels against the pure-numpy fallback.

The same deterministic planning workload runs once per backend, each in
a fresh subprocess so compilation state cannot leak between modes
(MRA_NO_NUMBA=1 selects the fallback).  Prints a per-task timing table
with speedups; compile/warmup time is excluded by running each task's
first instance before the clock starts.

Usage:
    python3 benchmarks/backend_compare.py [--repeats N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def build_workload():
    from mrastar import baselines as B
    from mrastar import search as S
    from mrastar import synthetic as syn
    from mrastar.maps_io import gen_scenarios

    cfg = S.PlannerConfig(w1=3.0, w2=3.0)

    def plan_2d():
        for i in range(20):
            grid = syn.random_grid((64, 64), 0.30, seed=100 + i)
            sc = gen_scenarios(grid, 1, seed=100 + i)[0]
            S.plan(S.Problem(grid, sc.start, sc.goal, ladder=[1, 7, 21]), cfg)

    def plan_corridor():
        for seed in range(10):
            grid, start, goal = syn.corridor_instance(seed)
            S.plan(S.Problem(grid, start, goal, ladder=[1, 7]), cfg)

    def plan_3d():
        for i in range(5):
            grid = syn.random_grid((20, 20, 20), 0.25, seed=200 + i)
            sc = gen_scenarios(grid, 1, seed=200 + i)[0]
            S.plan(S.Problem(grid, sc.start, sc.goal, ladder=[1, 9]), cfg)

    def oracle():
        for i in range(5):
            grid = syn.random_grid((128, 128), 0.30, seed=300 + i)
            sc = gen_scenarios(grid, 1, seed=300 + i)[0]
            B.dijkstra_optimal(grid, sc.start, sc.goal)

    return [
        ("plan 2d 64x64 multi-res x20", plan_2d),
        ("plan 2d corridor x10", plan_corridor),
        ("plan 3d 20^3 x5", plan_3d),
        ("dijkstra oracle 128x128 x5", oracle),
    ]


def run_worker(repeats: int) -> None:
    timings = {}
    for name, task in build_workload():
        task()  # warmup: jit compilation, allocator, caches
        best = min(_timed(task) for _ in range(repeats))
        timings[name] = best
    json.dump(timings, sys.stdout)


def _timed(task) -> float:
    t0 = time.perf_counter()
    task()
    return time.perf_counter() - t0


def run_backend(label: str, no_numba: bool, repeats: int) -> dict:
    env = dict(os.environ)
    if no_numba:
        env["MRA_NO_NUMBA"] = "1"
    else:
        env.pop("MRA_NO_NUMBA", None)
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--repeats", str(repeats)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=3,
                    help="timed repetitions per task; the best is kept")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)

    if args.worker:
        run_worker(args.repeats)
        return 0

    fast = run_backend("numba", no_numba=False, repeats=args.repeats)
    slow = run_backend("numpy", no_numba=True, repeats=args.repeats)

    width = max(len(k) for k in fast)
    print(f"{'task':<{width}}  {'numba':>9}  {'numpy':>9}  {'speedup':>8}")
    for name in fast:
        a, b = fast[name], slow[name]
        print(f"{name:<{width}}  {a:>8.3f}s  {b:>8.3f}s  {b / a:>7.1f}x")
    ta, tb = sum(fast.values()), sum(slow.values())
    print(f"{'total':<{width}}  {ta:>8.3f}s  {tb:>8.3f}s  {tb / ta:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
