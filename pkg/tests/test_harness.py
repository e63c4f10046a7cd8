"""Experiment harness: plans, statistics, curves, CSV formats."""

import json
import math

import numpy as np
import pytest

from fpabench.baselines import GaConfig, PsoConfig
from fpabench.constrained import ConstrainedProblem
from fpabench.core import RunRecord
from fpabench.fpa import FpaConfig
from fpabench.harness import (ExperimentPlan, Summary, censored_mean_iterations,
                              comparison_study, default_configs, error_curve,
                              fit_log_slope, read_curve_csv, read_summary_csv,
                              read_trace_csv, resolve_target, run_experiment,
                              summarize, write_curve_csv, write_metadata,
                              write_summary_csv, write_trace_csv)


def _record(algorithm, run_index, iterations, success, best=0.0, trace=None):
    return RunRecord(
        algorithm=algorithm, run_index=run_index, iterations=iterations,
        evaluations=25 * (iterations + 1), success=success, best_value=best,
        best_position=np.zeros(2),
        trace=trace or [(0, 10.0), (iterations, best)],
    )


def test_summarize_all_successes():
    records = [_record("fpa", i, 10, True) for i in range(3)]
    s = summarize(records, "fpa", benchmark="dejong", dim=4)
    assert s.mean_iterations == 10.0
    assert s.std_iterations == 0.0
    assert s.success_rate == 1.0
    assert s.mean_evaluations == 25 * 11
    assert (s.runs, s.successes) == (3, 3)


def test_summarize_mixed_runs_uses_successes_only():
    records = [_record("fpa", 0, 8, True), _record("fpa", 1, 12, True),
               _record("fpa", 2, 500, False)]
    s = summarize(records, "fpa")
    assert s.mean_iterations == 10.0
    assert s.std_iterations == pytest.approx(2.8284271247461903)
    assert s.success_rate == pytest.approx(2 / 3)
    assert s.mean_evaluations == 25 * 11


def test_summarize_no_successes_gives_nan_statistics():
    records = [_record("ga", i, 500, False) for i in range(4)]
    s = summarize(records, "ga")
    assert math.isnan(s.mean_iterations)
    assert math.isnan(s.std_iterations)
    assert math.isnan(s.mean_evaluations)
    assert s.success_rate == 0.0


def test_summarize_single_success_has_nan_std():
    s = summarize([_record("fpa", 0, 10, True)], "fpa")
    assert s.mean_iterations == 10.0
    assert math.isnan(s.std_iterations)


def test_summarize_unknown_algorithm_rejected():
    with pytest.raises(ValueError):
        summarize([_record("fpa", 0, 1, True)], "pso")


def test_censored_mean_counts_failures_at_their_cap():
    records = [_record("fpa", 0, 100, True), _record("fpa", 1, 1000, False),
               _record("ga", 0, 1000, False)]
    assert censored_mean_iterations(records, "fpa") == 550.0
    assert censored_mean_iterations(records, "ga") == 1000.0
    with pytest.raises(ValueError):
        censored_mean_iterations(records, "pso")


def test_error_curve_single_run_is_exact():
    rec = _record("fpa", 0, 3, True, best=1.0, trace=[(0, 5.0), (3, 1.0)])
    assert error_curve([rec], 0.0) == [(0, 5.0), (3, 1.0)]


def test_error_curve_forward_fills_on_the_union_grid():
    a = _record("fpa", 0, 2, True, best=2.0, trace=[(0, 4.0), (2, 2.0)])
    b = _record("fpa", 1, 3, True, best=0.0, trace=[(0, 6.0), (3, 0.0)])
    curve = error_curve([a, b], 0.0)
    assert curve == [(0, 5.0), (2, 4.0), (3, 1.0)]


def test_error_curve_measures_distance_not_sign():
    rec = _record("fpa", 0, 1, True, best=-3.0, trace=[(0, -1.0), (1, -3.0)])
    assert error_curve([rec], -4.0) == [(0, 3.0), (1, 1.0)]


def test_error_curve_input_validation():
    with pytest.raises(ValueError):
        error_curve([], 0.0)
    with pytest.raises(ValueError):
        error_curve([_record("fpa", 0, 1, True)], None)


def test_fit_log_slope_recovers_an_exact_exponential():
    curve = [(t, 10.0 ** (-t / 100.0)) for t in range(0, 1001, 10)]
    slope, r2 = fit_log_slope(curve)
    assert slope == pytest.approx(-math.log(10) / 100.0, rel=1e-9)
    assert r2 == pytest.approx(1.0)


def test_fit_log_slope_skips_burn_in_and_floor():
    # garbage during the first tenth and zeros at the tail must not break the fit
    curve = [(0, 1e6), (50, 1e6)] + [(t, math.exp(-t / 50.0)) for t in range(100, 1100, 100)]
    curve += [(2000, 0.0)]
    slope, r2 = fit_log_slope(curve, burn_in_fraction=0.1)
    assert slope == pytest.approx(-1 / 50.0, rel=1e-6)
    assert r2 == pytest.approx(1.0)
    with pytest.raises(ValueError):
        fit_log_slope([(0, 0.0), (1, 0.0)])


def test_resolve_target_benchmarks_and_problems():
    assert resolve_target("dejong").dim == 256
    assert resolve_target("dejong", 8).dim == 8
    assert resolve_target("sphere").name == "dejong"
    problem = resolve_target("pressure-vessel")
    assert isinstance(problem, ConstrainedProblem)
    assert resolve_target("pressure-vessel", 4).space.dim == 4
    with pytest.raises(ValueError):
        resolve_target("pressure-vessel", 5)
    with pytest.raises(KeyError):
        resolve_target("nosuch")


def test_plan_validation_errors():
    good = ExperimentPlan("dejong", default_configs(10), runs=2)
    good.validate()
    with pytest.raises(ValueError):
        ExperimentPlan("dejong", default_configs(10), runs=0).validate()
    with pytest.raises(ValueError):
        ExperimentPlan("dejong", default_configs(10), trace_stride=0).validate()
    with pytest.raises(ValueError):
        ExperimentPlan("dejong", []).validate()
    with pytest.raises(ValueError):
        ExperimentPlan("dejong", [("nosuch", FpaConfig())]).validate()
    with pytest.raises(ValueError):
        ExperimentPlan("dejong", [("ga", FpaConfig())]).validate()
    with pytest.raises(KeyError):
        ExperimentPlan("nosuch", default_configs(10)).validate()


def _tiny_plan(**kwargs):
    defaults = dict(
        benchmark="dejong",
        algorithms=default_configs(30, stop_on_target=False),
        runs=3, master_seed=7, trace_stride=1, dim=4,
    )
    defaults.update(kwargs)
    return ExperimentPlan(**defaults)


def test_run_experiment_order_and_labels():
    records = run_experiment(_tiny_plan())
    assert len(records) == 9
    assert [r.algorithm for r in records] == ["fpa"] * 3 + ["ga"] * 3 + ["pso"] * 3
    assert [r.run_index for r in records] == [0, 1, 2] * 3
    assert all(r.evaluations == 25 * 31 for r in records)


def test_run_experiment_is_reproducible():
    a = run_experiment(_tiny_plan())
    b = run_experiment(_tiny_plan())
    for x, y in zip(a, b):
        assert x.trace == y.trace
        assert np.array_equal(x.best_position, y.best_position)


def test_concurrent_execution_matches_sequential_exactly():
    a = run_experiment(_tiny_plan())
    b = run_experiment(_tiny_plan(), workers=2)
    for x, y in zip(a, b):
        assert x.algorithm == y.algorithm and x.run_index == y.run_index
        assert x.trace == y.trace
        assert x.best_value == y.best_value
        assert np.array_equal(x.best_position, y.best_position)


def test_tolerance_override_loosens_success():
    strict = run_experiment(_tiny_plan(algorithms=default_configs(30)))
    loose = run_experiment(_tiny_plan(algorithms=default_configs(30), tolerance=1e6))
    assert all(r.success for r in loose)
    assert all(r.iterations == 0 for r in loose)
    assert sum(r.success for r in strict) <= sum(r.success for r in loose)


def test_summary_csv_round_trip(tmp_path):
    path = str(tmp_path / "summary.csv")
    summaries = [
        Summary("dejong", 256, "fpa", 8198.25, 21.5, 1.0, 204981.25, 20, 20),
        Summary("dejong", 256, "ga", math.nan, math.nan, 0.0, math.nan, 20, 0),
    ]
    write_summary_csv(summaries, path)
    rows = read_summary_csv(path)
    with open(path) as fh:
        header = fh.readline().strip()
    assert header == "benchmark,dim,algorithm,mean_iters,std_iters,success_rate,mean_evals"
    assert rows[0]["mean_iters"] == 8198.25
    assert rows[0]["dim"] == 256
    assert math.isnan(rows[1]["mean_iters"])
    assert rows[1]["success_rate"] == 0.0


def test_trace_csv_round_trip(tmp_path):
    path = str(tmp_path / "trace.csv")
    records = [
        _record("fpa", 0, 2, True, best=0.5, trace=[(0, 4.0), (2, 0.5)]),
        _record("fpa", 1, 1, False, best=math.inf, trace=[(0, math.inf), (1, math.inf)]),
    ]
    write_trace_csv(records, path)
    rows = read_trace_csv(path)
    with open(path) as fh:
        header = fh.readline().strip()
    assert header == "algorithm,run,iteration,best_value"
    assert rows[0] == {"algorithm": "fpa", "run": 0, "iteration": 0, "best_value": 4.0}
    assert rows[-1]["best_value"] == math.inf


def test_curve_csv_round_trip(tmp_path):
    path = str(tmp_path / "curve.csv")
    write_curve_csv({"fpa": [(0, 5.0), (10, 0.125)]}, path)
    rows = read_curve_csv(path)
    with open(path) as fh:
        header = fh.readline().strip()
    assert header == "algorithm,iteration,mean_abs_error"
    assert rows == [
        {"algorithm": "fpa", "iteration": 0, "mean_abs_error": 5.0},
        {"algorithm": "fpa", "iteration": 10, "mean_abs_error": 0.125},
    ]


def test_float_formatting_round_trips_exactly(tmp_path):
    # repr-formatted floats parse back bit for bit
    value = 0.1 + 0.2
    path = str(tmp_path / "c.csv")
    write_curve_csv({"x": [(1, value)]}, path)
    assert read_curve_csv(path)[0]["mean_abs_error"] == value


def test_metadata_sidecar(tmp_path):
    path = str(tmp_path / "run.meta.json")
    plan = _tiny_plan()
    write_metadata(path, plan, extra={"command": "test"})
    with open(path) as fh:
        payload = json.load(fh)
    assert payload["benchmark"] == "dejong"
    assert payload["master_seed"] == 7
    assert payload["command"] == "test"
    assert [a["id"] for a in payload["algorithms"]] == ["fpa", "ga", "pso"]
    assert payload["algorithms"][0]["config"]["levy"]["scale"] == 0.1
    assert "conventions" in payload


def test_summarize_is_permutation_invariant():
    records = [_record("fpa", 0, 8, True), _record("fpa", 1, 12, True),
               _record("fpa", 2, 30, False), _record("ga", 0, 5, True)]
    forward = summarize(records, "fpa", benchmark="dejong", dim=2)
    backward = summarize(records[::-1], "fpa", benchmark="dejong", dim=2)
    assert forward == backward


def test_empty_writes_are_header_only(tmp_path):
    spath = str(tmp_path / "s.csv")
    tpath = str(tmp_path / "t.csv")
    cpath = str(tmp_path / "c.csv")
    write_summary_csv([], spath)
    write_trace_csv([], tpath)
    write_curve_csv({}, cpath)
    assert open(spath).read().splitlines() == [
        "benchmark,dim,algorithm,mean_iters,std_iters,success_rate,mean_evals"]
    assert open(tpath).read().splitlines() == ["algorithm,run,iteration,best_value"]
    assert open(cpath).read().splitlines() == ["algorithm,iteration,mean_abs_error"]
    assert read_summary_csv(spath) == []
    assert read_trace_csv(tpath) == []


def test_default_configs_shapes():
    configs = default_configs(123, n=10)
    assert [alg for alg, _ in configs] == ["fpa", "ga", "pso"]
    assert all(cfg.n == 10 and cfg.max_iterations == 123 for _, cfg in configs)
    assert isinstance(configs[0][1], FpaConfig)
    assert isinstance(configs[1][1], GaConfig)
    assert isinstance(configs[2][1], PsoConfig)


def test_comparison_study_smoke():
    records_by_benchmark, summaries = comparison_study(
        runs=2, master_seed=0, max_iterations=5, trace_stride=1,
        benchmarks_subset=["easom", "shubert"])
    assert set(records_by_benchmark) == {"easom", "shubert"}
    assert len(records_by_benchmark["easom"]) == 6
    assert len(summaries) == 6
    assert summaries[0].benchmark == "easom" and summaries[0].algorithm == "fpa"
