"""Command-line client for the optimization service.

Every subcommand builds a request, sends it to the HTTP app (in-process by
default, or to a remote `--server` URL), and renders the response: aligned
tables on stdout, CSV files plus a JSON metadata sidecar when `--out` is
given.  Flag values override config-file values, which override defaults.

Exit codes: 0 on success, 2 for usage errors, 3 for invalid values, 4 for
runtime failures.
"""

from __future__ import annotations

import argparse
import asyncio
import math
import sys
from typing import List, Optional

import httpx
import numpy as np

from . import harness
from .core import RunRecord

USAGE_EXIT = 2
VALIDATION_EXIT = 3
RUNTIME_EXIT = 4

# dest -> coercion for config-file values; also the set of accepted file keys
_FIELD_TYPES = {
    "benchmark": str, "algorithm": str, "runs": int, "seed": int, "n": int,
    "p": float, "lam": float, "scale": float, "tol": float, "max_iters": int,
    "trace_stride": int, "dim": int, "out": str, "server": str,
}
_KEY_ALIASES = {"lambda": "lam", "max-iters": "max_iters", "trace-stride": "trace_stride",
                "config-file": None}  # config-file inside a config file is rejected

_DEFAULTS = {
    "run": {"algorithm": "fpa", "runs": 5, "seed": 0, "n": 25, "p": 0.8,
            "lam": 1.5, "scale": 0.1, "tol": None, "max_iters": 500_000,
            "trace_stride": 1, "dim": None, "benchmark": None, "out": None,
            "server": None},
    "table1": {"runs": 20, "seed": 0, "n": 25, "p": 0.8, "lam": 1.5,
               "scale": 0.1, "tol": None, "max_iters": 50_000,
               "trace_stride": 100, "out": None, "server": None},
    "vessel": {"algorithm": "fpa", "runs": 40, "seed": 0, "n": 25, "p": 0.8,
               "lam": 1.5, "scale": 0.1, "max_iters": 3000, "trace_stride": 1,
               "out": None, "server": None},
    "curve": {"algorithm": "fpa", "runs": 5, "seed": 0, "n": 25, "p": 0.8,
              "lam": 1.5, "scale": 0.1, "tol": None, "max_iters": 500_000,
              "trace_stride": 1, "dim": None, "benchmark": None, "out": None,
              "server": None},
    "list-benchmarks": {"server": None},
}


class ValidationFailure(Exception):
    pass


class RuntimeFailure(Exception):
    pass


def _add_common(parser: argparse.ArgumentParser, *names: str):
    flags = {
        "benchmark": (["--benchmark"], {"type": str, "help": "benchmark or problem name"}),
        "algorithm": (["--algorithm"], {"type": str, "help": "fpa, ga or pso"}),
        "runs": (["--runs"], {"type": int, "help": "independent runs"}),
        "seed": (["--seed"], {"type": int, "help": "master seed"}),
        "n": (["--n"], {"type": int, "help": "population size"}),
        "p": (["--p"], {"type": float, "help": "global-move switch probability"}),
        "lam": (["--lambda"], {"type": float, "dest": "lam",
                               "help": "heavy-tail exponent of the step distribution"}),
        "scale": (["--scale"], {"type": float, "help": "step scale factor"}),
        "tol": (["--tol"], {"type": float, "help": "success tolerance override"}),
        "max_iters": (["--max-iters"], {"type": int, "dest": "max_iters",
                                        "help": "iteration cap per run"}),
        "trace_stride": (["--trace-stride"], {"type": int, "dest": "trace_stride",
                                              "help": "record every k-th iteration"}),
        "dim": (["--dim"], {"type": int, "help": "dimension override"}),
        "out": (["--out"], {"type": str, "help": "output CSV path"}),
    }
    for name in names:
        args, kwargs = flags[name]
        parser.add_argument(*args, default=None, **kwargs)
    parser.add_argument("--config-file", type=str, default=None,
                        help="key=value file supplying flag defaults")
    parser.add_argument("--server", type=str, default=None,
                        help="remote service URL (default: run in-process)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpabench",
        description="Pollination-versus-baselines optimization benchmarks.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    run = sub.add_parser("run", help="run one algorithm on one benchmark")
    _add_common(run, "benchmark", "algorithm", "runs", "seed", "n", "p", "lam",
                "scale", "tol", "max_iters", "trace_stride", "dim", "out")

    table1 = sub.add_parser("table1", help="all ten benchmarks x fpa/ga/pso")
    _add_common(table1, "runs", "seed", "n", "p", "lam", "scale", "tol",
                "max_iters", "trace_stride", "out")

    vessel = sub.add_parser("vessel", help="constrained vessel-design study")
    _add_common(vessel, "algorithm", "runs", "seed", "n", "p", "lam", "scale",
                "max_iters", "trace_stride", "out")

    curve = sub.add_parser("curve", help="mean-error convergence curve")
    _add_common(curve, "benchmark", "algorithm", "runs", "seed", "n", "p",
                "lam", "scale", "tol", "max_iters", "trace_stride", "dim", "out")

    lb = sub.add_parser("list-benchmarks", help="dump the registry")
    lb.add_argument("--config-file", type=str, default=None)
    lb.add_argument("--server", type=str, default=None)
    return parser


def _read_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ValidationFailure(f"cannot read config file {path}: {exc}")
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationFailure(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        key = _KEY_ALIASES.get(key, key.replace("-", "_"))
        if key is None or key not in _FIELD_TYPES:
            raise ValidationFailure(f"{path}:{lineno}: unknown key {line.split('=')[0].strip()!r}")
        caster = _FIELD_TYPES[key]
        try:
            values[key] = caster(value.strip())
        except ValueError:
            raise ValidationFailure(
                f"{path}:{lineno}: cannot parse {value.strip()!r} as {caster.__name__}")
    return values


def _merge(args: argparse.Namespace) -> dict:
    """Apply precedence: explicit flags, then config file, then defaults."""
    defaults = _DEFAULTS[args.command]
    from_file = _read_config_file(args.config_file) if args.config_file else {}
    merged = {}
    for key, default in defaults.items():
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            merged[key] = flag_value
        elif key in from_file:
            merged[key] = from_file[key]
        else:
            merged[key] = default
    return merged


def _validate(cfg: dict, command: str):
    checks = [
        ("runs", lambda v: v >= 1, "runs must be at least 1"),
        ("seed", lambda v: 0 <= v < 2 ** 64, "seed must be in [0, 2^64)"),
        ("n", lambda v: v >= 2, "population size must be at least 2"),
        ("p", lambda v: 0.0 <= v <= 1.0, "p must be in [0, 1]"),
        ("lam", lambda v: 0.0 < v <= 2.0, "lambda must be in (0, 2]"),
        ("scale", lambda v: v > 0.0, "scale must be positive"),
        ("tol", lambda v: v > 0.0, "tol must be positive"),
        ("max_iters", lambda v: v >= 1, "max-iters must be at least 1"),
        ("trace_stride", lambda v: v >= 1, "trace-stride must be at least 1"),
        ("dim", lambda v: v >= 1, "dim must be at least 1"),
    ]
    for key, ok, message in checks:
        value = cfg.get(key)
        if value is not None and not ok(value):
            raise ValidationFailure(f"{message} (got {value})")
    if "algorithm" in cfg:
        allowed = {"fpa", "ga", "pso"}
        if command == "vessel":
            allowed.add("all")
        if cfg["algorithm"].lower() not in allowed:
            raise ValidationFailure(
                f"algorithm must be one of {', '.join(sorted(allowed))} (got {cfg['algorithm']})")
    if command in ("run", "curve") and not cfg.get("benchmark"):
        raise ValidationFailure("a benchmark name is required (--benchmark)")


async def _request(server: Optional[str], method: str, path: str,
                   payload: Optional[dict] = None) -> dict:
    if server:
        client = httpx.AsyncClient(base_url=server.rstrip("/"), timeout=None)
    else:
        from .service.app import create_app
        transport = httpx.ASGITransport(app=create_app())
        client = httpx.AsyncClient(transport=transport,
                                   base_url="http://fpabench.internal", timeout=None)
    try:
        async with client:
            response = await client.request(method, path, json=payload)
    except httpx.HTTPError as exc:
        raise RuntimeFailure(f"service request failed: {exc}")
    if response.status_code in (400, 422):
        try:
            detail = response.json().get("detail")
        except ValueError:
            detail = response.text
        raise ValidationFailure(f"service rejected the request: {detail}")
    if response.status_code != 200:
        raise RuntimeFailure(f"service error {response.status_code}: {response.text[:500]}")
    return response.json()


def _inf(value: Optional[float]) -> float:
    return math.inf if value is None else float(value)


def _nan(value: Optional[float]) -> float:
    return math.nan if value is None else float(value)


def _record_from_json(d: dict) -> RunRecord:
    return RunRecord(
        algorithm=d["algorithm"],
        run_index=d["run_index"],
        iterations=d["iterations"],
        evaluations=d["evaluations"],
        success=d["success"],
        best_value=_inf(d["best_value"]),
        best_position=np.asarray(d["best_position"], dtype=float),
        trace=[(int(t), _inf(v)) for t, v in d["trace"]],
    )


def _summary_from_json(d: dict) -> harness.Summary:
    return harness.Summary(
        benchmark=d["benchmark"],
        dim=d["dim"],
        algorithm=d["algorithm"],
        mean_iterations=_nan(d["mean_iters"]),
        std_iterations=_nan(d["std_iters"]),
        success_rate=d["success_rate"],
        mean_evaluations=_nan(d["mean_evals"]),
        runs=d["runs"],
        successes=d["successes"],
    )


def _write_metadata(out: str, cfg: dict, command: str):
    algorithms = cfg.get("algorithms") or [cfg.get("algorithm", "fpa")]
    stop = command not in ("vessel",)
    plan = harness.ExperimentPlan(
        benchmark=cfg.get("benchmark", "pressure-vessel" if command == "vessel" else ""),
        algorithms=[
            harness.default_configs(cfg["max_iters"], n=cfg["n"], p=cfg["p"],
                                    lam=cfg["lam"], scale=cfg["scale"],
                                    stop_on_target=stop)[("fpa", "ga", "pso").index(a)]
            for a in algorithms
        ],
        runs=cfg["runs"],
        master_seed=cfg["seed"],
        trace_stride=cfg["trace_stride"],
        dim=cfg.get("dim"),
        tolerance=cfg.get("tol"),
    )
    harness.write_metadata(out + ".meta.json", plan, extra={"command": command})


def _fmt_cell(mean: float, std: float, rate: float) -> str:
    if math.isnan(mean):
        return f"no hits ({rate:.0%})"
    std_text = "n/a" if math.isnan(std) else f"{std:.0f}"
    return f"{mean:.0f} +/- {std_text} ({rate:.0%})"


def _cmd_run(cfg: dict) -> int:
    payload = {
        "benchmark": cfg["benchmark"], "algorithm": cfg["algorithm"],
        "runs": cfg["runs"], "seed": cfg["seed"], "n": cfg["n"], "p": cfg["p"],
        "lam": cfg["lam"], "scale": cfg["scale"], "tol": cfg["tol"],
        "max_iterations": cfg["max_iters"], "trace_stride": cfg["trace_stride"],
        "dim": cfg["dim"],
    }
    data = asyncio.run(_request(cfg["server"], "POST", "/run", payload))
    summary = _summary_from_json(data["summary"])
    cell = _fmt_cell(summary.mean_iterations, summary.std_iterations, summary.success_rate)
    print(f"{summary.benchmark} (d={summary.dim}) {summary.algorithm}: {cell} iterations")
    if not math.isnan(summary.mean_evaluations):
        print(f"mean evaluations over successes: {summary.mean_evaluations:.0f}")
    best = min((r for r in data["records"]), key=lambda r: _inf(r["best_value"]))
    print(f"best value: {_inf(best['best_value'])!r} (run {best['run_index']})")
    if cfg["out"]:
        records = [_record_from_json(r) for r in data["records"]]
        harness.write_trace_csv(records, cfg["out"])
        _write_metadata(cfg["out"], dict(cfg, algorithms=[cfg["algorithm"]]), "run")
        print(f"trace CSV written to {cfg['out']}")
    return 0


def _cmd_table1(cfg: dict) -> int:
    payload = {
        "runs": cfg["runs"], "seed": cfg["seed"], "n": cfg["n"], "p": cfg["p"],
        "lam": cfg["lam"], "scale": cfg["scale"], "tol": cfg["tol"],
        "max_iterations": cfg["max_iters"], "trace_stride": cfg["trace_stride"],
    }
    data = asyncio.run(_request(cfg["server"], "POST", "/table1", payload))
    summaries = [_summary_from_json(s) for s in data["summaries"]]

    by_benchmark = {}
    for s in summaries:
        by_benchmark.setdefault((s.benchmark, s.dim), {})[s.algorithm] = s
    rows = []
    for (name, dim), cells in by_benchmark.items():
        row = [f"{name} (d={dim})"]
        for alg in ("ga", "pso", "fpa"):
            s = cells[alg]
            row.append(_fmt_cell(s.mean_iterations, s.std_iterations, s.success_rate))
        rows.append(row)
    headers = ["Function", "GA", "PSO", "FPA"]
    widths = [max(len(headers[i]), *(len(r[i]) for r in rows)) for i in range(4)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    if cfg["out"]:
        harness.write_summary_csv(summaries, cfg["out"])
        _write_metadata(cfg["out"], dict(cfg, benchmark="all", algorithms=["fpa", "ga", "pso"]),
                        "table1")
        print(f"summary CSV written to {cfg['out']}")
    return 0


def _cmd_vessel(cfg: dict) -> int:
    algorithms = ["fpa", "ga", "pso"] if cfg["algorithm"].lower() == "all" else [cfg["algorithm"]]
    payload = {
        "runs": cfg["runs"], "seed": cfg["seed"], "n": cfg["n"], "p": cfg["p"],
        "lam": cfg["lam"], "scale": cfg["scale"],
        "max_iterations": cfg["max_iters"], "algorithms": algorithms,
        "trace_stride": cfg["trace_stride"],
    }
    data = asyncio.run(_request(cfg["server"], "POST", "/vessel", payload))
    print(f"reference: f = {data['target_value']} at {tuple(data['target_point'])}")
    for result in data["results"]:
        name = result["algorithm"]
        if result["feasible"]:
            pos = ", ".join(f"{v:.4f}" for v in result["best_position"])
            print(f"{name}: best f = {_inf(result['best_value']):.6f} at ({pos}) "
                  f"[feasible, success rate {result['success_rate']:.0%}]")
        else:
            print(f"{name}: no feasible solution found")
    if cfg["out"]:
        curves = {r["algorithm"]: [(int(t), _inf(v)) for t, v in r["curve"]]
                  for r in data["results"]}
        harness.write_curve_csv(curves, cfg["out"])
        _write_metadata(cfg["out"], dict(cfg, benchmark="pressure-vessel",
                                         algorithms=algorithms, tol=None), "vessel")
        print(f"curve CSV written to {cfg['out']}")
    return 0


def _cmd_curve(cfg: dict) -> int:
    payload = {
        "benchmark": cfg["benchmark"], "algorithms": [cfg["algorithm"]],
        "runs": cfg["runs"], "seed": cfg["seed"], "n": cfg["n"], "p": cfg["p"],
        "lam": cfg["lam"], "scale": cfg["scale"], "tol": cfg["tol"],
        "max_iterations": cfg["max_iters"], "trace_stride": cfg["trace_stride"],
        "dim": cfg["dim"],
    }
    data = asyncio.run(_request(cfg["server"], "POST", "/curve", payload))
    for name, points in data["curves"].items():
        finite = [(t, v) for t, v in points if v is not None]
        last_t, last_v = finite[-1] if finite else (0, math.nan)
        print(f"{name}: {len(points)} curve points, final mean error {last_v!r} at iteration {last_t}")
    if cfg["out"]:
        curves = {name: [(int(t), _inf(v)) for t, v in points]
                  for name, points in data["curves"].items()}
        harness.write_curve_csv(curves, cfg["out"])
        _write_metadata(cfg["out"], dict(cfg, algorithms=[cfg["algorithm"]]), "curve")
        print(f"curve CSV written to {cfg['out']}")
    return 0


def _cmd_list(cfg: dict) -> int:
    data = asyncio.run(_request(cfg["server"], "GET", "/benchmarks"))
    print(f"{'name':<14}{'dim':>5}  {'bounds':<22}{'target':>24}")
    for b in data["benchmarks"]:
        bounds = f"[{b['low']:g}, {b['high']:g}]"
        target = "n/a" if b["f_star"] is None else repr(b["f_star"])
        print(f"{b['name']:<14}{b['dim']:>5}  {bounds:<22}{target:>24}")
    for prob in data["constrained"]:
        bounds = ", ".join(f"[{lo:g}, {hi:g}]" for lo, hi in zip(prob["lower"], prob["upper"]))
        print(f"{prob['name']:<14}{prob['dim']:>5}  {bounds}  "
              f"{prob['constraints']} constraints, target {prob['f_star']!r}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    try:
        cfg = _merge(args)
        _validate(cfg, args.command)
        handler = {
            "run": _cmd_run,
            "table1": _cmd_table1,
            "vessel": _cmd_vessel,
            "curve": _cmd_curve,
            "list-benchmarks": _cmd_list,
        }[args.command]
        return handler(cfg)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_EXIT
    except RuntimeFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_EXIT


if __name__ == "__main__":
    sys.exit(main())
