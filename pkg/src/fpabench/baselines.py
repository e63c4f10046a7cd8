"""Real-coded GA and gbest PSO comparators.

Both consume exactly n objective evaluations per iteration, and both report
the best-so-far value in their traces, so comparisons against the pollination
engine are evaluation-fair and every run record obeys the same monotone-trace
contract.  Operator choices beyond the headline parameters (tournament
selection, blend crossover, Gaussian mutation scale, the inertia schedule,
velocity clamping) are conventional textbook variants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (Candidate, EvalCounter, Objective, RngStream, RunRecord,
                   SearchSpace, Trace)


@dataclass
class GaConfig:
    n: int = 25
    crossover_prob: float = 0.95
    mutation_prob: float = 0.05
    mutation_scale: float = 0.1  # Gaussian std as a fraction of per-axis box width
    max_iterations: int = 500_000
    stop_on_target: bool = True

    def validate(self):
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ValueError(f"crossover_prob must be in [0, 1], got {self.crossover_prob}")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError(f"mutation_prob must be in [0, 1], got {self.mutation_prob}")
        if self.mutation_scale <= 0:
            raise ValueError("mutation_scale must be positive")
        if self.n < 2:
            raise ValueError(f"population size must be at least 2, got {self.n}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be at least 1, got {self.max_iterations}")


@dataclass
class PsoConfig:
    n: int = 25
    c1: float = 2.0
    c2: float = 2.0
    inertia_start: float = 0.9
    inertia_end: float = 0.4
    vmax_fraction: float = 0.5
    max_iterations: int = 500_000
    stop_on_target: bool = True

    def validate(self):
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("acceleration coefficients must be non-negative")
        if not 0.0 < self.inertia_end <= self.inertia_start:
            raise ValueError("inertia must satisfy 0 < inertia_end <= inertia_start")
        if self.vmax_fraction <= 0:
            raise ValueError("vmax_fraction must be positive")
        if self.n < 2:
            raise ValueError(f"population size must be at least 2, got {self.n}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be at least 1, got {self.max_iterations}")


def _check_target(stop_on_target: bool, obj: Objective):
    if stop_on_target and obj.known_target is None:
        raise ValueError("stop_on_target requires a known_target on the objective")


def tournament_pick(values: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """Binary tournament: for each (a, b) index pair keep the lower value; a wins ties."""
    a, b = pairs[:, 0], pairs[:, 1]
    return np.where(values[a] <= values[b], a, b)


def ga_run(space: SearchSpace, obj: Objective, cfg: GaConfig, rng: RngStream,
           trace_stride: int = 1, algorithm: str = "ga", run_index: int = 0) -> RunRecord:
    """Generational real-coded GA with binary tournaments, blend crossover,
    per-gene Gaussian mutation and single-survivor elitism.

    Each generation evaluates exactly n children (ceil(n/2) parent pairs, the
    spare child dropped when n is odd); the previous best then displaces the
    worst child without costing an evaluation.
    """
    cfg.validate()
    _check_target(cfg.stop_on_target, obj)

    n, d = cfg.n, space.dim
    width = space.width
    counter = EvalCounter()

    pop = space.lower + rng.random((n, d)) * width
    values = obj.rows(pop)
    counter.tick(n)
    best_i = int(np.argmin(values))
    best = Candidate(pop[best_i].copy(), float(values[best_i]), counter.count)

    trace = Trace(trace_stride)
    trace.record(0, best.value)

    pairs = (n + 1) // 2
    iterations = 0
    if not (cfg.stop_on_target and obj.hit(best.value)):
        for t in range(1, cfg.max_iterations + 1):
            parent_idx = tournament_pick(values, rng.integers(0, n, size=(2 * pairs, 2)))
            mothers = pop[parent_idx[:pairs]]
            fathers = pop[parent_idx[pairs:]]

            cross = rng.random(pairs) < cfg.crossover_prob
            alpha = rng.random(pairs)[:, None]
            first = np.where(cross[:, None], alpha * mothers + (1.0 - alpha) * fathers, mothers)
            second = np.where(cross[:, None], alpha * fathers + (1.0 - alpha) * mothers, fathers)
            children = np.concatenate([first, second])[:n]

            mutate = rng.random((2 * pairs, d))[:n] < cfg.mutation_prob
            noise = rng.standard_normal((2 * pairs, d))[:n] * (cfg.mutation_scale * width)
            children = space.clamp(np.where(mutate, children + noise, children))

            child_values = obj.rows(children)
            counter.tick(n)

            # elitism: previous best displaces the worst child, no extra eval
            worst = int(np.argmax(child_values))
            children[worst] = best.position
            child_values[worst] = best.value
            pop, values = children, child_values

            best_i = int(np.argmin(values))
            if values[best_i] < best.value:
                best = Candidate(pop[best_i].copy(), float(values[best_i]), counter.count)
            iterations = t
            trace.record(t, best.value)
            if cfg.stop_on_target and obj.hit(best.value):
                break

    return RunRecord(
        algorithm=algorithm,
        run_index=run_index,
        iterations=iterations,
        evaluations=counter.count,
        success=obj.hit(best.value),
        best_value=best.value,
        best_position=best.position.copy(),
        trace=trace.close(iterations, best.value),
    )


def pso_inertia(cfg: PsoConfig, iteration: int) -> float:
    """Inertia weight at a 1-based iteration, sliding linearly start -> end."""
    if iteration < 1:
        raise ValueError("iteration is 1-based")
    frac = min(iteration, cfg.max_iterations) / cfg.max_iterations
    return cfg.inertia_start - (cfg.inertia_start - cfg.inertia_end) * frac


def pso_velocity(x: np.ndarray, v: np.ndarray, pbest: np.ndarray, gbest: np.ndarray,
                 w: float, c1: float, c2: float, vmax: np.ndarray,
                 rng: RngStream) -> np.ndarray:
    """One clamped velocity update for a whole swarm at inertia w."""
    r1 = rng.random(x.shape)
    r2 = rng.random(x.shape)
    v = w * v + c1 * r1 * (pbest - x) + c2 * r2 * (gbest - x)
    return np.clip(v, -vmax, vmax)


def pso_run(space: SearchSpace, obj: Objective, cfg: PsoConfig, rng: RngStream,
            trace_stride: int = 1, algorithm: str = "pso", run_index: int = 0) -> RunRecord:
    """Standard gbest-topology PSO with linearly decreasing inertia.

    Velocities start at zero and are clamped to vmax_fraction of the box
    width per axis; positions are clamped to the box.  The trace reports the
    best value seen so far, which the returned best candidate also carries.
    """
    cfg.validate()
    _check_target(cfg.stop_on_target, obj)

    n, d = cfg.n, space.dim
    vmax = cfg.vmax_fraction * space.width
    counter = EvalCounter()

    x = space.lower + rng.random((n, d)) * space.width
    v = np.zeros((n, d))
    values = obj.rows(x)
    counter.tick(n)

    pbest = x.copy()
    pbest_values = values.copy()
    best_i = int(np.argmin(values))
    best = Candidate(x[best_i].copy(), float(values[best_i]), counter.count)

    trace = Trace(trace_stride)
    trace.record(0, best.value)

    iterations = 0
    if not (cfg.stop_on_target and obj.hit(best.value)):
        for t in range(1, cfg.max_iterations + 1):
            w = pso_inertia(cfg, t)
            v = pso_velocity(x, v, pbest, best.position, w, cfg.c1, cfg.c2, vmax, rng)
            x = space.clamp(x + v)
            values = obj.rows(x)
            counter.tick(n)

            improved = values < pbest_values
            pbest[improved] = x[improved]
            pbest_values[improved] = values[improved]

            best_i = int(np.argmin(pbest_values))
            if pbest_values[best_i] < best.value:
                best = Candidate(pbest[best_i].copy(), float(pbest_values[best_i]), counter.count)
            iterations = t
            trace.record(t, best.value)
            if cfg.stop_on_target and obj.hit(best.value):
                break

    return RunRecord(
        algorithm=algorithm,
        run_index=run_index,
        iterations=iterations,
        evaluations=counter.count,
        success=obj.hit(best.value),
        best_value=best.value,
        best_position=best.position.copy(),
        trace=trace.close(iterations, best.value),
    )
