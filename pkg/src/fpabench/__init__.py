"""Flower-pollination global optimization with GA/PSO baselines and a
benchmark harness.

The public surface: the search-space and run-record types in `core`, the
heavy-tailed step sampler in `sampling`, the pollination engine in `fpa`, the
two baselines in `baselines`, the ten-function registry in `benchmarks`, the
constrained vessel problem in `constrained`, and the seeded experiment
harness in `harness`.  `service` wraps it all in an HTTP app and `cli` is the
command-line client.
"""

__version__ = "0.1.0"

from .baselines import GaConfig, PsoConfig, ga_run, pso_run
from .benchmarks import BenchmarkSpec, build, evaluate_all_at_optima, lookup
from .constrained import (ConstrainedProblem, PressureVesselSolution,
                          constrained_fpa_run, constrained_ga_run,
                          constrained_pso_run, feasibility_better,
                          lookup_problem, pressure_vessel_problem,
                          pv_constraints, pv_objective, violation)
from .core import (Candidate, EvalCounter, Objective, Population, RunRecord,
                   SearchSpace, better, derive_stream, init_population)
from .fpa import (FpaConfig, StepStats, fpa_run, fpa_step, global_pollination,
                  local_pollination)
from .harness import (ExperimentPlan, Summary, censored_mean_iterations,
                      comparison_study, error_curve, fit_log_slope,
                      run_experiment, summarize)
from .sampling import LevyConfig, levy_step_vector, mantegna_sigma, uniform_unit

__all__ = [
    "__version__",
    "BenchmarkSpec", "Candidate", "ConstrainedProblem", "EvalCounter",
    "ExperimentPlan", "FpaConfig", "GaConfig", "LevyConfig", "Objective",
    "Population", "PressureVesselSolution", "PsoConfig", "RunRecord",
    "SearchSpace", "StepStats", "Summary",
    "better", "build", "censored_mean_iterations", "comparison_study",
    "constrained_fpa_run", "constrained_ga_run", "constrained_pso_run",
    "derive_stream", "error_curve", "evaluate_all_at_optima",
    "feasibility_better", "fit_log_slope", "fpa_run", "fpa_step", "ga_run",
    "global_pollination", "init_population", "levy_step_vector",
    "local_pollination", "lookup", "lookup_problem", "mantegna_sigma",
    "pressure_vessel_problem", "pso_run", "pv_constraints", "pv_objective",
    "run_experiment", "summarize", "uniform_unit", "violation",
]
