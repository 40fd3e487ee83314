"""Benchmark harness: run planners over scenario sets, aggregate, sweep.

Used by the CLI and the acceptance tests alike.  Rows are deterministic
for fixed seeds except for their timing fields.
"""

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .baselines import wa_union, weighted_astar
from .errors import InvalidProblemError
from .grid import Cell, GridMap, ResolutionLadder
from .maps_io import BenchRow, gen_scenarios
from .search import PlannerConfig, PlanResult, Problem, plan

ALGOS = ("mra", "wa-high", "wa-low", "wa-mr", "astar")


@dataclass(frozen=True)
class BenchTask:
    map_id: str
    grid: GridMap
    scenario: int
    start: Cell
    goal: Cell
    seed: int


def worker_count() -> int:
    """Worker cap from MRA_THREADS; defaults to 1 so timing studies stay
    deterministic."""
    try:
        n = int(os.environ.get("MRA_THREADS", "1"))
    except ValueError:
        return 1
    return max(1, n)


def run_algo(
    algo: str,
    grid: GridMap,
    start: Cell,
    goal: Cell,
    ladder: ResolutionLadder,
    config: PlannerConfig,
) -> PlanResult:
    """Run one named planner on one query.

    mra: the multi-resolution planner over the full ladder.
    wa-high: weighted A* on the unit lattice with w = w1.
    wa-low: weighted A* on the coarsest ladder scale with w = w1.
    wa-mr: weighted A* over the union action space with w = w1.
    astar: plain A* on the unit lattice.
    Raises InvalidProblemError when the query violates the planner's
    preconditions (notably wa-low with endpoints off its sublattice).
    """
    if algo == "mra":
        return plan(Problem(grid, start, goal, ladder), config)
    if algo == "wa-high":
        return weighted_astar(
            grid, start, goal, multiplier=1, w=config.w1, timeout=config.timeout
        )
    if algo == "wa-low":
        return weighted_astar(
            grid,
            start,
            goal,
            multiplier=ladder.multipliers[-1],
            w=config.w1,
            timeout=config.timeout,
        )
    if algo == "wa-mr":
        return wa_union(grid, start, goal, ladder, w=config.w1, timeout=config.timeout)
    if algo == "astar":
        return weighted_astar(grid, start, goal, multiplier=1, w=1.0, timeout=config.timeout)
    raise ValueError(f"unknown algo {algo!r}; choose from {ALGOS}")


def _run_one(args) -> BenchRow:
    task, algo, ladder, config = args
    try:
        result = run_algo(algo, task.grid, task.start, task.goal, ladder, config)
    except InvalidProblemError:
        return BenchRow.invalid(task.map_id, algo, task.scenario, task.seed)
    return BenchRow.from_result(task.map_id, algo, task.scenario, task.seed, result)


def make_tasks(
    maps: list[tuple[str, GridMap]], scenarios_per_map: int, seed: int
) -> list[BenchTask]:
    """Sample scenarios for each map; map index offsets the seed so maps
    get distinct but reproducible scenario sets."""
    tasks = []
    for idx, (map_id, grid) in enumerate(maps):
        scens = gen_scenarios(grid, scenarios_per_map, seed + idx, map_id=map_id)
        for sc in scens:
            tasks.append(BenchTask(map_id, grid, sc.index, sc.start, sc.goal, seed + idx))
    return tasks


def run_bench(
    tasks: list[BenchTask],
    algos: list[str],
    ladder: ResolutionLadder,
    config: PlannerConfig,
) -> list[BenchRow]:
    """Run every algo on every task; rows come back sorted by
    (map, algo, scenario) regardless of worker scheduling."""
    jobs = [(task, algo, ladder, config) for task in tasks for algo in algos]
    workers = worker_count()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_one, jobs, chunksize=4))
    else:
        rows = [_run_one(job) for job in jobs]
    rows.sort(key=lambda r: (r.map_id, r.algo, r.scenario))
    return rows


SUMMARY_CSV_FIELDS = (
    "algo",
    "subset",
    "instances",
    "solved",
    "success_rate_pct",
    "mean_time_s",
    "mean_cost",
    "mean_expansions",
    "time_ratio_vs_mra",
    "cost_ratio_vs_mra",
    "expansions_ratio_vs_mra",
)


def _mean(values) -> float | None:
    values = list(values)
    if not values:
        return None
    return sum(values) / len(values)


def summarize(rows: list[BenchRow]) -> list[dict]:
    """Per-algo aggregates over two subsets: "all" runs, and "common"
    (instances solved by every algo present).  Ratio columns divide the
    baseline's common-subset mean by mra's (> 1 means mra is better on
    time/expansions); they are empty when mra is absent."""
    algos = sorted({r.algo for r in rows})
    by_instance: dict[tuple[str, int], dict[str, BenchRow]] = {}
    for r in rows:
        by_instance.setdefault((r.map_id, r.scenario), {})[r.algo] = r
    common_keys = [
        key
        for key, per_algo in sorted(by_instance.items())
        if all(a in per_algo and per_algo[a].status == "solved" for a in algos)
    ]

    def aggregate(algo: str, subset_rows: list[BenchRow], subset: str) -> dict:
        solved = [r for r in subset_rows if r.status == "solved"]
        return {
            "algo": algo,
            "subset": subset,
            "instances": len(subset_rows),
            "solved": len(solved),
            "success_rate_pct": (
                100.0 * len(solved) / len(subset_rows) if subset_rows else 0.0
            ),
            "mean_time_s": _mean(r.time_s for r in subset_rows if r.status != "invalid"),
            "mean_cost": _mean(r.cost for r in solved),
            "mean_expansions": _mean(sum(r.expansions) for r in solved),
        }

    out = []
    for algo in algos:
        mine = [r for r in rows if r.algo == algo]
        common = [by_instance[key][algo] for key in common_keys]
        out.append(aggregate(algo, mine, "all"))
        out.append(aggregate(algo, common, "common"))

    mra_common = next(
        (s for s in out if s["algo"] == "mra" and s["subset"] == "common"), None
    )
    for s in out:
        for field, ratio_field in (
            ("mean_time_s", "time_ratio_vs_mra"),
            ("mean_cost", "cost_ratio_vs_mra"),
            ("mean_expansions", "expansions_ratio_vs_mra"),
        ):
            s[ratio_field] = None
            if (
                s["subset"] == "common"
                and mra_common is not None
                and s["algo"] != "mra"
                and s[field] is not None
                and mra_common[field]
            ):
                s[ratio_field] = s[field] / mra_common[field]
    return out


def write_summary_csv(summary: list[dict], path: str) -> None:
    def fmt(key: str, value) -> str:
        if value is None:
            return ""
        if key == "success_rate_pct":
            return f"{value:.2f}"
        if key in ("instances", "solved"):
            return str(value)
        return f"{value:.6f}"

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_CSV_FIELDS)
        for s in summary:
            writer.writerow([s["algo"], s["subset"]] + [
                fmt(k, s[k]) for k in SUMMARY_CSV_FIELDS[2:]
            ])


def run_sweep(
    tasks: list[BenchTask],
    vary: str,
    values: list[float],
    base_config: PlannerConfig,
    ladder: ResolutionLadder,
    repeats: int = 1,
) -> list[dict]:
    """Run the multi-resolution planner over tasks once per parameter
    value; returns one aggregate dict per value (mean planning time over
    all runs, mean cost over solved ones).  With repeats > 1 each task's
    time is the minimum across repeats, taming scheduler noise."""
    if vary not in ("w1", "w2"):
        raise ValueError(f"vary must be w1 or w2, got {vary!r}")
    out = []
    for value in values:
        config = replace(base_config, **{vary: float(value)})
        times = []
        costs = []
        solved = 0
        for task in tasks:
            best = math.inf
            result = None
            for _ in range(max(1, repeats)):
                result = plan(Problem(task.grid, task.start, task.goal, ladder), config)
                best = min(best, result.wall_time)
            times.append(best)
            if result.status == "solved":
                solved += 1
                costs.append(result.cost)
        out.append(
            {
                "param": vary,
                "value": float(value),
                "instances": len(tasks),
                "solved": solved,
                "mean_time_s": _mean(times),
                "mean_cost": _mean(costs),
            }
        )
    return out


SWEEP_CSV_FIELDS = ("param", "value", "instances", "solved", "mean_time_s", "mean_cost")


def write_sweep_csv(rows: list[dict], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_CSV_FIELDS)
        for r in rows:
            writer.writerow(
                [
                    r["param"],
                    f"{r['value']:g}",
                    r["instances"],
                    r["solved"],
                    f"{r['mean_time_s']:.6f}" if r["mean_time_s"] is not None else "",
                    f"{r['mean_cost']:.6f}" if r["mean_cost"] is not None else "",
                ]
            )
