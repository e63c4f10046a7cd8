"""HTTP API tests, run in-process against the FastAPI app."""

import pytest
from fastapi.testclient import TestClient

import fpabench
from fpabench.benchmarks import TABLE_ORDER
from fpabench.service.app import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["version"] == fpabench.__version__


def test_benchmarks_listing(client):
    resp = client.get("/benchmarks")
    assert resp.status_code == 200
    body = resp.json()
    names = [row["name"] for row in body["benchmarks"]]
    assert names == list(TABLE_ORDER)
    by_name = {row["name"]: row for row in body["benchmarks"]}
    assert by_name["dejong"]["dim"] == 256
    assert by_name["dejong"]["low"] == -5.12
    assert by_name["dejong"]["f_star"] == 0.0
    assert by_name["easom"]["f_star"] == -1.0

    problems = body["constrained"]
    assert len(problems) == 1
    vessel = problems[0]
    assert vessel["name"] == "pressure-vessel"
    assert vessel["dim"] == 4
    assert vessel["constraints"] == 4
    assert abs(vessel["f_star"] - 6059.714) < 1e-2
    assert len(vessel["lower"]) == 4 and len(vessel["upper"]) == 4


def test_run_small_plan(client):
    req = {"benchmark": "easom", "algorithm": "fpa", "runs": 3, "seed": 0,
           "max_iterations": 400, "trace_stride": 50}
    resp = client.post("/run", json=req)
    assert resp.status_code == 200
    body = resp.json()
    records = body["records"]
    assert len(records) == 3
    for rec in records:
        assert rec["algorithm"] == "fpa"
        assert rec["evaluations"] == 25 * (rec["iterations"] + 1)
        assert len(rec["best_position"]) == 2
        values = [v for _, v in rec["trace"] if v is not None]
        assert all(b <= a for a, b in zip(values, values[1:]))
    summary = body["summary"]
    assert summary["benchmark"] == "easom"
    assert summary["dim"] == 2
    assert summary["algorithm"] == "fpa"
    assert summary["runs"] == 3
    assert 0.0 <= summary["success_rate"] <= 1.0


def test_run_is_deterministic(client):
    req = {"benchmark": "shubert", "algorithm": "pso", "runs": 2, "seed": 7,
           "max_iterations": 50, "trace_stride": 10}
    a = client.post("/run", json=req).json()
    b = client.post("/run", json=req).json()
    assert a == b


def test_run_no_success_maps_nan_to_null(client):
    # Two hopeless runs on the 256-d bowl: statistics over zero successes
    # are NaN internally and must arrive as JSON null, not break encoding.
    req = {"benchmark": "dejong", "algorithm": "ga", "runs": 2, "seed": 0,
           "max_iterations": 3, "trace_stride": 1}
    resp = client.post("/run", json=req)
    assert resp.status_code == 200
    summary = resp.json()["summary"]
    assert summary["success_rate"] == 0.0
    assert summary["mean_iters"] is None
    assert summary["std_iters"] is None
    assert summary["mean_evals"] is None


def test_run_tolerance_override(client):
    req = {"benchmark": "ackley", "algorithm": "fpa", "runs": 2, "seed": 0,
           "max_iterations": 100, "trace_stride": 1, "tol": 1e6}
    body = client.post("/run", json=req).json()
    for rec in body["records"]:
        assert rec["success"] is True
        assert rec["iterations"] == 0
        assert rec["evaluations"] == 25


def test_run_dim_override(client):
    req = {"benchmark": "dejong", "algorithm": "fpa", "runs": 2, "seed": 0,
           "dim": 4, "max_iterations": 200, "trace_stride": 50}
    body = client.post("/run", json=req).json()
    assert body["summary"]["dim"] == 4
    assert len(body["records"][0]["best_position"]) == 4


def test_run_unknown_benchmark_is_400(client):
    req = {"benchmark": "nope", "algorithm": "fpa", "runs": 1,
           "max_iterations": 10}
    resp = client.post("/run", json=req)
    assert resp.status_code == 400
    assert "available" in resp.json()["detail"]


def test_run_unknown_algorithm_is_400(client):
    req = {"benchmark": "easom", "algorithm": "annealing", "runs": 1,
           "max_iterations": 10}
    resp = client.post("/run", json=req)
    assert resp.status_code == 400
    assert "unknown algorithm" in resp.json()["detail"]


@pytest.mark.parametrize("bad", [
    {"p": 1.5},
    {"runs": 0},
    {"lam": 3.0},
    {"scale": 0.0},
    {"max_iterations": 0},
    {"seed": -1},
])
def test_run_invalid_params_are_422(client, bad):
    req = {"benchmark": "easom", "algorithm": "fpa", "runs": 1,
           "max_iterations": 10}
    req.update(bad)
    assert client.post("/run", json=req).status_code == 422


def test_table1_tiny(client):
    req = {"runs": 2, "seed": 0, "max_iterations": 3, "trace_stride": 1}
    resp = client.post("/table1", json=req)
    assert resp.status_code == 200
    summaries = resp.json()["summaries"]
    assert len(summaries) == 3 * len(TABLE_ORDER)
    first = summaries[:3]
    assert [s["benchmark"] for s in first] == [TABLE_ORDER[0]] * 3
    assert [s["algorithm"] for s in first] == ["fpa", "ga", "pso"]
    for s in summaries:
        assert s["runs"] == 2


def test_vessel_tiny(client):
    req = {"runs": 2, "seed": 0, "max_iterations": 50,
           "algorithms": ["fpa", "ga"], "trace_stride": 10}
    resp = client.post("/vessel", json=req)
    assert resp.status_code == 200
    body = resp.json()
    assert abs(body["target_value"] - 6059.714) < 1e-3
    assert len(body["target_point"]) == 4
    assert [r["algorithm"] for r in body["results"]] == ["fpa", "ga"]
    for result in body["results"]:
        assert len(result["best_position"]) == 4
        assert result["feasible"] is True
        assert result["best_value"] is not None
        assert result["curve"], "expected a non-empty mean-error curve"
        assert 0.0 <= result["success_rate"] <= 1.0


def test_curve_tiny(client):
    req = {"benchmark": "easom", "algorithms": ["fpa", "pso"], "runs": 2,
           "seed": 0, "max_iterations": 60, "trace_stride": 10}
    resp = client.post("/curve", json=req)
    assert resp.status_code == 200
    body = resp.json()
    assert body["f_star"] == -1.0
    assert set(body["curves"]) == {"fpa", "pso"}
    for points in body["curves"].values():
        values = [v for _, v in points if v is not None]
        assert values
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_curve_unknown_benchmark_is_400(client):
    req = {"benchmark": "nope", "algorithms": ["fpa"], "runs": 1,
           "max_iterations": 10}
    assert client.post("/curve", json=req).status_code == 400
