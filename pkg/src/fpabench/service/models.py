"""Request and response shapes for the HTTP service.

JSON has no tokens for the non-finite floats that show up in results (NaN
statistics when nothing succeeded, infinite best values before a feasible
point exists), so every field that can be non-finite is Optional and carries
None instead; clients that need the sentinel convert None back.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


def finite_or_none(value: float) -> Optional[float]:
    return float(value) if math.isfinite(value) else None


class HealthResponse(BaseModel):
    status: str
    version: str


class BenchmarkInfo(BaseModel):
    name: str
    dim: int
    low: float
    high: float
    f_star: Optional[float] = None


class ProblemInfo(BaseModel):
    name: str
    dim: int
    lower: List[float]
    upper: List[float]
    f_star: Optional[float] = None
    constraints: int = 0


class BenchmarksResponse(BaseModel):
    benchmarks: List[BenchmarkInfo]
    constrained: List[ProblemInfo]


class AlgorithmParams(BaseModel):
    """Knobs shared by every study endpoint; defaults are the standard setup."""

    n: int = Field(default=25, ge=2)
    p: float = Field(default=0.8, ge=0.0, le=1.0)
    lam: float = Field(default=1.5, gt=0.0, le=2.0)
    scale: float = Field(default=0.1, gt=0.0)


class RunRequest(AlgorithmParams):
    benchmark: str
    algorithm: str = "fpa"
    runs: int = Field(default=5, ge=1)
    seed: int = Field(default=0, ge=0)
    tol: Optional[float] = Field(default=None, gt=0.0)
    max_iterations: int = Field(default=500_000, ge=1)
    trace_stride: int = Field(default=1, ge=1)
    dim: Optional[int] = Field(default=None, ge=1)


class RunRecordModel(BaseModel):
    algorithm: str
    run_index: int
    iterations: int
    evaluations: int
    success: bool
    best_value: Optional[float]
    best_position: List[float]
    trace: List[Tuple[int, Optional[float]]]


class SummaryModel(BaseModel):
    benchmark: str
    dim: int
    algorithm: str
    mean_iters: Optional[float]
    std_iters: Optional[float]
    success_rate: float
    mean_evals: Optional[float]
    runs: int
    successes: int


class RunResponse(BaseModel):
    records: List[RunRecordModel]
    summary: SummaryModel


class Table1Request(AlgorithmParams):
    runs: int = Field(default=20, ge=1)
    seed: int = Field(default=0, ge=0)
    max_iterations: int = Field(default=50_000, ge=1)
    trace_stride: int = Field(default=100, ge=1)
    tol: Optional[float] = Field(default=None, gt=0.0)


class Table1Response(BaseModel):
    summaries: List[SummaryModel]


class VesselRequest(AlgorithmParams):
    runs: int = Field(default=40, ge=1)
    seed: int = Field(default=0, ge=0)
    max_iterations: int = Field(default=3000, ge=1)
    algorithms: List[str] = Field(default_factory=lambda: ["fpa"])
    trace_stride: int = Field(default=1, ge=1)


class VesselAlgorithmResult(BaseModel):
    algorithm: str
    best_value: Optional[float]
    best_position: List[float]
    feasible: bool
    success_rate: float
    curve: List[Tuple[int, Optional[float]]]


class VesselResponse(BaseModel):
    results: List[VesselAlgorithmResult]
    target_value: float
    target_point: List[float]


class CurveRequest(AlgorithmParams):
    benchmark: str
    algorithms: List[str] = Field(default_factory=lambda: ["fpa"])
    runs: int = Field(default=5, ge=1)
    seed: int = Field(default=0, ge=0)
    tol: Optional[float] = Field(default=None, gt=0.0)
    max_iterations: int = Field(default=500_000, ge=1)
    trace_stride: int = Field(default=1, ge=1)
    dim: Optional[int] = Field(default=None, ge=1)


class CurveResponse(BaseModel):
    curves: Dict[str, List[Tuple[int, Optional[float]]]]
    f_star: float
