"""HTTP service exposing the optimization studies.

The CLI talks to this app in-process by default; `uvicorn
fpabench.service.app:app` serves the same API over the network.  Endpoints
run synchronously and return complete results, so responses for large plans
take as long as the underlying study.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__, benchmarks, constrained, harness
from ..baselines import GaConfig, PsoConfig
from ..core import RunRecord
from ..fpa import FpaConfig
from ..sampling import LevyConfig
from .models import (AlgorithmParams, BenchmarkInfo, BenchmarksResponse,
                     CurveRequest, CurveResponse, HealthResponse, ProblemInfo,
                     RunRecordModel, RunRequest, RunResponse, SummaryModel,
                     Table1Request, Table1Response, VesselAlgorithmResult,
                     VesselRequest, VesselResponse, finite_or_none)


def _record_model(r: RunRecord) -> RunRecordModel:
    return RunRecordModel(
        algorithm=r.algorithm,
        run_index=r.run_index,
        iterations=r.iterations,
        evaluations=r.evaluations,
        success=r.success,
        best_value=finite_or_none(r.best_value),
        best_position=[float(v) for v in r.best_position],
        trace=[(t, finite_or_none(v)) for t, v in r.trace],
    )


def _summary_model(s: harness.Summary) -> SummaryModel:
    return SummaryModel(
        benchmark=s.benchmark,
        dim=s.dim,
        algorithm=s.algorithm,
        mean_iters=finite_or_none(s.mean_iterations),
        std_iters=finite_or_none(s.std_iterations),
        success_rate=s.success_rate,
        mean_evals=finite_or_none(s.mean_evaluations),
        runs=s.runs,
        successes=s.successes,
    )


def _curve_points(curve) -> list:
    return [(t, finite_or_none(v)) for t, v in curve]


def _algorithm_config(alg: str, params: AlgorithmParams, max_iterations: int,
                      stop_on_target: bool = True):
    key = alg.lower().strip()
    if key == "fpa":
        return key, FpaConfig(n=params.n, p=params.p,
                              levy=LevyConfig(lam=params.lam, scale=params.scale),
                              max_iterations=max_iterations,
                              stop_on_target=stop_on_target)
    if key == "ga":
        return key, GaConfig(n=params.n, max_iterations=max_iterations,
                             stop_on_target=stop_on_target)
    if key == "pso":
        return key, PsoConfig(n=params.n, max_iterations=max_iterations,
                              stop_on_target=stop_on_target)
    raise HTTPException(status_code=400,
                        detail=f"unknown algorithm {alg!r}; available: fpa, ga, pso")


def _run_plan(plan: harness.ExperimentPlan) -> list:
    try:
        return harness.run_experiment(plan)
    except (KeyError, ValueError) as exc:
        detail = exc.args[0] if exc.args else str(exc)
        raise HTTPException(status_code=400, detail=str(detail)) from exc


def create_app() -> FastAPI:
    app = FastAPI(title="fpabench", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.get("/benchmarks", response_model=BenchmarksResponse)
    def list_benchmarks() -> BenchmarksResponse:
        infos = [
            BenchmarkInfo(
                name=spec.name,
                dim=spec.dim,
                low=float(spec.space.lower[0]),
                high=float(spec.space.upper[0]),
                f_star=spec.f_star,
            )
            for spec in benchmarks.REGISTRY.values()
        ]
        problems = []
        for name in sorted(constrained.PROBLEMS):
            problem = constrained.lookup_problem(name)
            problems.append(ProblemInfo(
                name=problem.name,
                dim=problem.space.dim,
                lower=[float(v) for v in problem.space.lower],
                upper=[float(v) for v in problem.space.upper],
                f_star=problem.f_star,
                constraints=len(problem.constraints),
            ))
        return BenchmarksResponse(benchmarks=infos, constrained=problems)

    @app.post("/run", response_model=RunResponse)
    def run(req: RunRequest) -> RunResponse:
        alg_id, cfg = _algorithm_config(req.algorithm, req, req.max_iterations)
        plan = harness.ExperimentPlan(
            benchmark=req.benchmark,
            algorithms=[(alg_id, cfg)],
            runs=req.runs,
            master_seed=req.seed,
            trace_stride=req.trace_stride,
            dim=req.dim,
            tolerance=req.tol,
        )
        records = _run_plan(plan)
        try:
            target = harness.resolve_target(req.benchmark, req.dim)
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc.args[0])) from exc
        summary = harness.summarize(records, alg_id, benchmark=req.benchmark,
                                    dim=target.space.dim)
        return RunResponse(
            records=[_record_model(r) for r in records],
            summary=_summary_model(summary),
        )

    @app.post("/table1", response_model=Table1Response)
    def table1(req: Table1Request) -> Table1Response:
        try:
            _, summaries = harness.comparison_study(
                runs=req.runs,
                master_seed=req.seed,
                max_iterations=req.max_iterations,
                trace_stride=req.trace_stride,
                tolerance=req.tol,
                n=req.n, p=req.p, lam=req.lam, scale=req.scale,
            )
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc.args[0])) from exc
        return Table1Response(summaries=[_summary_model(s) for s in summaries])

    @app.post("/vessel", response_model=VesselResponse)
    def vessel(req: VesselRequest) -> VesselResponse:
        problem = constrained.pressure_vessel_problem()
        results = []
        for alg in req.algorithms:
            alg_id, cfg = _algorithm_config(alg, req, req.max_iterations,
                                            stop_on_target=False)
            plan = harness.ExperimentPlan(
                benchmark=problem.name,
                algorithms=[(alg_id, cfg)],
                runs=req.runs,
                master_seed=req.seed,
                trace_stride=req.trace_stride,
            )
            records = _run_plan(plan)
            feasible = [r for r in records if np.isfinite(r.best_value)]
            if feasible:
                best = min(feasible, key=lambda r: r.best_value)
                best_value, best_position = best.best_value, best.best_position
                is_feasible = True
            else:
                best_value, best_position = float("inf"), records[0].best_position
                is_feasible = False
            curve = harness.error_curve(records, problem.f_star)
            results.append(VesselAlgorithmResult(
                algorithm=alg_id,
                best_value=finite_or_none(best_value),
                best_position=[float(v) for v in best_position],
                feasible=is_feasible,
                success_rate=sum(r.success for r in records) / len(records),
                curve=_curve_points(curve),
            ))
        return VesselResponse(
            results=results,
            target_value=constrained.VESSEL_KNOWN_VALUE,
            target_point=list(constrained.VESSEL_KNOWN_POINT),
        )

    @app.post("/curve", response_model=CurveResponse)
    def curve(req: CurveRequest) -> CurveResponse:
        try:
            target = harness.resolve_target(req.benchmark, req.dim)
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc.args[0])) from exc
        f_star = target.f_star
        if f_star is None:
            raise HTTPException(status_code=400,
                                detail=f"{req.benchmark} has no reference optimum for curves")
        curves = {}
        for alg in req.algorithms:
            alg_id, cfg = _algorithm_config(alg, req, req.max_iterations)
            plan = harness.ExperimentPlan(
                benchmark=req.benchmark,
                algorithms=[(alg_id, cfg)],
                runs=req.runs,
                master_seed=req.seed,
                trace_stride=req.trace_stride,
                dim=req.dim,
                tolerance=req.tol,
            )
            records = _run_plan(plan)
            curves[alg_id] = _curve_points(harness.error_curve(records, f_star))
        return CurveResponse(curves=curves, f_star=float(f_star))

    return app


app = create_app()
