"""Experiment orchestration: seeded study plans, aggregation, CSV export.

A plan names one benchmark (or constrained problem), a list of algorithm
configs, and a run count.  Run r of algorithm index a draws its own generator
from (master_seed, a, r), so records are identical whether runs execute
sequentially or across worker processes, and re-running a plan reproduces
every file byte for byte.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import benchmarks, constrained
from .baselines import GaConfig, PsoConfig, ga_run, pso_run
from .constrained import (ConstrainedProblem, constrained_fpa_run,
                          constrained_ga_run, constrained_pso_run)
from .core import RunRecord, derive_stream
from .fpa import FpaConfig, fpa_run
from .sampling import LevyConfig

ALGORITHMS = ("fpa", "ga", "pso")


@dataclass
class ExperimentPlan:
    """One benchmark (or constrained problem), several algorithms, many runs."""

    benchmark: str
    algorithms: List[Tuple[str, object]]
    runs: int = 100
    master_seed: int = 0
    trace_stride: int = 1
    dim: Optional[int] = None            # override the registry dimension
    tolerance: Optional[float] = None    # override the success tolerance

    def validate(self):
        if self.runs < 1:
            raise ValueError(f"runs must be at least 1, got {self.runs}")
        if self.trace_stride < 1:
            raise ValueError(f"trace_stride must be at least 1, got {self.trace_stride}")
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        for alg_id, cfg in self.algorithms:
            key = alg_id.lower()
            if key not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {alg_id!r}; available: {', '.join(ALGORITHMS)}")
            expected = {"fpa": FpaConfig, "ga": GaConfig, "pso": PsoConfig}[key]
            if not isinstance(cfg, expected):
                raise ValueError(f"algorithm {alg_id!r} needs a {expected.__name__}")
            cfg.validate()
        resolve_target(self.benchmark)  # raises on unknown names


def resolve_target(name: str, dim: Optional[int] = None):
    """A benchmark spec or a constrained problem for a plan's benchmark field."""
    key = name.lower().strip()
    if key in constrained.PROBLEMS:
        problem = constrained.lookup_problem(key)
        if dim is not None and dim != problem.space.dim:
            raise ValueError(f"{name} is fixed at {problem.space.dim} variables")
        return problem
    if dim is not None:
        return benchmarks.build(key, dim)
    return benchmarks.lookup(key)


def _run_one(task: tuple) -> RunRecord:
    (benchmark, dim, tolerance, alg_id, cfg, master_seed,
     alg_index, run_index, trace_stride) = task
    rng = derive_stream(master_seed, alg_index, run_index)
    key = alg_id.lower()

    target = resolve_target(benchmark, dim)
    if isinstance(target, ConstrainedProblem):
        if tolerance is not None:
            target.objective = dataclasses.replace(target.objective,
                                                   target_tolerance=tolerance)
        runner = {"fpa": constrained_fpa_run, "ga": constrained_ga_run,
                  "pso": constrained_pso_run}[key]
        return runner(target, cfg, rng, trace_stride=trace_stride,
                      algorithm=key, run_index=run_index)

    obj = target.objective
    if tolerance is not None:
        obj = dataclasses.replace(obj, target_tolerance=tolerance)
    runner = {"fpa": fpa_run, "ga": ga_run, "pso": pso_run}[key]
    return runner(target.space, obj, cfg, rng, trace_stride=trace_stride,
                  algorithm=key, run_index=run_index)


def run_experiment(plan: ExperimentPlan, workers: int = 1) -> List[RunRecord]:
    """Execute the plan; records are ordered by (algorithm index, run index)."""
    plan.validate()
    tasks = [
        (plan.benchmark, plan.dim, plan.tolerance, alg_id, cfg,
         plan.master_seed, alg_index, run_index, plan.trace_stride)
        for alg_index, (alg_id, cfg) in enumerate(plan.algorithms)
        for run_index in range(plan.runs)
    ]
    if workers <= 1:
        return [_run_one(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, tasks))


@dataclass
class Summary:
    """Comparison-table statistics for one algorithm on one benchmark.

    Iteration and evaluation statistics cover successful runs only (failed
    runs have censored counts); success_rate covers all runs.  With no
    successes the statistics are NaN.
    """

    benchmark: str
    dim: int
    algorithm: str
    mean_iterations: float
    std_iterations: float
    success_rate: float
    mean_evaluations: float
    runs: int = 0
    successes: int = 0


def summarize(records: Sequence[RunRecord], algorithm: str,
              benchmark: str = "", dim: int = 0) -> Summary:
    """Mean/std of iterations over successful runs, success rate over all."""
    key = algorithm.lower()
    mine = [r for r in records if r.algorithm == key]
    if not mine:
        raise ValueError(f"no records for algorithm {algorithm!r}")
    hits = [r for r in mine if r.success]
    if hits:
        iters = np.array([r.iterations for r in hits], dtype=float)
        evals = np.array([r.evaluations for r in hits], dtype=float)
        mean_it = float(np.mean(iters))
        std_it = float(np.std(iters, ddof=1)) if iters.size > 1 else math.nan
        mean_ev = float(np.mean(evals))
    else:
        mean_it = std_it = mean_ev = math.nan
    return Summary(
        benchmark=benchmark,
        dim=dim,
        algorithm=key,
        mean_iterations=mean_it,
        std_iterations=std_it,
        success_rate=len(hits) / len(mine),
        mean_evaluations=mean_ev,
        runs=len(mine),
        successes=len(hits),
    )


def censored_mean_iterations(records: Sequence[RunRecord], algorithm: str) -> float:
    """Mean iterations over ALL runs of one algorithm, failures included.

    Failed runs contribute their full (capped) iteration count, so the value
    is always defined and comparable across algorithms with different success
    rates; the comparison-ordering check uses this.
    """
    key = algorithm.lower()
    iters = [r.iterations for r in records if r.algorithm == key]
    if not iters:
        raise ValueError(f"no records for algorithm {algorithm!r}")
    return float(np.mean(iters))


def error_curve(records: Sequence[RunRecord], f_star: float) -> List[Tuple[int, float]]:
    """Mean |best - f_star| over runs on the union iteration grid.

    Traces are step functions: a run holds its last recorded best value
    forward, so short runs stay defined on the shared grid.
    """
    if f_star is None:
        raise ValueError("error_curve needs a known f_star")
    if not records:
        raise ValueError("error_curve needs at least one record")
    grid = sorted({t for r in records for t, _ in r.trace})
    grid_arr = np.array(grid)
    total = np.zeros(len(grid))
    for r in records:
        its = np.array([t for t, _ in r.trace])
        vals = np.array([abs(v - f_star) for _, v in r.trace])
        idx = np.searchsorted(its, grid_arr, side="right") - 1
        # traces start at iteration 0, so every grid point has a predecessor
        total += vals[np.clip(idx, 0, len(vals) - 1)]
    mean = total / len(records)
    return [(int(t), float(v)) for t, v in zip(grid, mean)]


def fit_log_slope(curve: Sequence[Tuple[int, float]], burn_in_fraction: float = 0.1,
                  floor: float = 1e-9) -> Tuple[float, float]:
    """Least-squares slope and R^2 of log(error) vs iteration.

    The fit skips the initial transient (burn_in_fraction of the iteration
    range) and any points at or below the numerical floor where the error has
    already collapsed onto the target.
    """
    pts = [(t, v) for t, v in curve if math.isfinite(v) and v > floor]
    if not pts:
        raise ValueError("no usable points above the floor")
    t_max = max(t for t, _ in pts)
    start = burn_in_fraction * t_max
    pts = [(t, v) for t, v in pts if t >= start]
    if len(pts) < 3:
        raise ValueError("too few points after burn-in to fit a slope")
    t = np.array([p[0] for p in pts], dtype=float)
    y = np.log(np.array([p[1] for p in pts]))
    slope, intercept = np.polyfit(t, y, 1)
    fitted = slope * t + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), r2


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_summary_csv(summaries: Sequence[Summary], path: str):
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["benchmark", "dim", "algorithm", "mean_iters",
                             "std_iters", "success_rate", "mean_evals"])
            for s in summaries:
                writer.writerow([s.benchmark, s.dim, s.algorithm,
                                 _fmt(s.mean_iterations), _fmt(s.std_iterations),
                                 _fmt(s.success_rate), _fmt(s.mean_evaluations)])
    except OSError as exc:
        raise OSError(f"could not write summary CSV to {path}: {exc}") from exc


def read_summary_csv(path: str) -> List[dict]:
    with open(path, newline="") as fh:
        return [
            {"benchmark": row["benchmark"], "dim": int(row["dim"]),
             "algorithm": row["algorithm"], "mean_iters": float(row["mean_iters"]),
             "std_iters": float(row["std_iters"]),
             "success_rate": float(row["success_rate"]),
             "mean_evals": float(row["mean_evals"])}
            for row in csv.DictReader(fh)
        ]


def write_trace_csv(records: Sequence[RunRecord], path: str):
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["algorithm", "run", "iteration", "best_value"])
            for r in records:
                for t, v in r.trace:
                    writer.writerow([r.algorithm, r.run_index, t, _fmt(float(v))])
    except OSError as exc:
        raise OSError(f"could not write trace CSV to {path}: {exc}") from exc


def read_trace_csv(path: str) -> List[dict]:
    with open(path, newline="") as fh:
        return [
            {"algorithm": row["algorithm"], "run": int(row["run"]),
             "iteration": int(row["iteration"]), "best_value": float(row["best_value"])}
            for row in csv.DictReader(fh)
        ]


def write_curve_csv(curves: Dict[str, Sequence[Tuple[int, float]]], path: str):
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["algorithm", "iteration", "mean_abs_error"])
            for algorithm, curve in curves.items():
                for t, v in curve:
                    writer.writerow([algorithm, t, _fmt(float(v))])
    except OSError as exc:
        raise OSError(f"could not write curve CSV to {path}: {exc}") from exc


def read_curve_csv(path: str) -> List[dict]:
    with open(path, newline="") as fh:
        return [
            {"algorithm": row["algorithm"], "iteration": int(row["iteration"]),
             "mean_abs_error": float(row["mean_abs_error"])}
            for row in csv.DictReader(fh)
        ]


def write_metadata(path: str, plan: ExperimentPlan, extra: Optional[dict] = None):
    """Seed, configs and aggregation conventions, next to the data files."""
    payload = {
        "benchmark": plan.benchmark,
        "runs": plan.runs,
        "master_seed": plan.master_seed,
        "trace_stride": plan.trace_stride,
        "dim": plan.dim,
        "tolerance": plan.tolerance,
        "algorithms": [
            {"id": alg_id, "config": dataclasses.asdict(cfg)}
            for alg_id, cfg in plan.algorithms
        ],
        "conventions": {
            "summary_statistics": "successful runs only; NaN when none",
            "success_rate": "successes over all runs",
            "evaluations": "population size times (iterations + 1)",
            "error_curve": "mean absolute gap to the target, forward-filled",
            "stream_derivation": "per run, from (master_seed, algorithm_index, run_index)",
        },
    }
    if extra:
        payload.update(extra)
    try:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=False)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"could not write metadata to {path}: {exc}") from exc


def default_configs(max_iterations: int, n: int = 25, p: float = 0.8,
                    lam: float = 1.5, scale: float = 0.1,
                    stop_on_target: bool = True) -> List[Tuple[str, object]]:
    """The three standard algorithm configs used by the comparison studies."""
    return [
        ("fpa", FpaConfig(n=n, p=p, levy=LevyConfig(lam=lam, scale=scale),
                          max_iterations=max_iterations, stop_on_target=stop_on_target)),
        ("ga", GaConfig(n=n, max_iterations=max_iterations, stop_on_target=stop_on_target)),
        ("pso", PsoConfig(n=n, max_iterations=max_iterations, stop_on_target=stop_on_target)),
    ]


def comparison_study(runs: int = 20, master_seed: int = 0,
                     max_iterations: int = 50_000, trace_stride: int = 100,
                     workers: int = 1, tolerance: Optional[float] = None,
                     benchmarks_subset: Optional[Sequence[str]] = None,
                     n: int = 25, p: float = 0.8, lam: float = 1.5,
                     scale: float = 0.1):
    """All ten benchmarks times the three algorithms.

    Returns (records by benchmark name, summaries in table order).
    """
    names = tuple(benchmarks_subset) if benchmarks_subset else benchmarks.TABLE_ORDER
    records_by_benchmark = {}
    summaries = []
    for name in names:
        spec = benchmarks.lookup(name)
        plan = ExperimentPlan(
            benchmark=name,
            algorithms=default_configs(max_iterations, n=n, p=p, lam=lam, scale=scale),
            runs=runs,
            master_seed=master_seed,
            trace_stride=trace_stride,
            tolerance=tolerance,
        )
        records = run_experiment(plan, workers=workers)
        records_by_benchmark[name] = records
        for alg in ALGORITHMS:
            summaries.append(summarize(records, alg, benchmark=name, dim=spec.dim))
    return records_by_benchmark, summaries
