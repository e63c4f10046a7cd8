"""Flower pollination engine.

Each flower carries one candidate solution.  Per sweep, every flower either
takes a global move (a heavy-tailed step toward the population best, taken
with probability p) or a local move (a uniform step along the difference of
two randomly chosen flowers).  Proposals are clamped to the box, evaluated,
and accepted only on strict improvement; the population best is recomputed
after the full sweep.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (Candidate, EvalCounter, Objective, Population, RngStream,
                   RunRecord, SearchSpace, Trace, init_population)
from .sampling import LevyConfig, levy_step_vector, uniform_unit


@dataclass
class FpaConfig:
    n: int = 25
    p: float = 0.8
    levy: LevyConfig = field(default_factory=LevyConfig)
    max_iterations: int = 500_000
    stop_on_target: bool = True

    def validate(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"switch probability must be in [0, 1], got {self.p}")
        if self.n < 2:
            raise ValueError(f"population size must be at least 2, got {self.n}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be at least 1, got {self.max_iterations}")
        self.levy.validate()


@dataclass
class StepStats:
    """Per-sweep move bookkeeping, filled in by fpa_step when passed."""

    global_moves: int = 0
    local_moves: int = 0
    accepted: int = 0


def global_pollination(x: Candidate, gbest: Candidate, cfg: FpaConfig,
                       space: SearchSpace, rng: RngStream) -> np.ndarray:
    """Move x toward the best flower with a heavy-tailed per-coordinate step."""
    if x.position.shape != gbest.position.shape:
        raise ValueError("candidate dimensions differ")
    step = levy_step_vector(cfg.levy, x.position.size, rng)
    return space.clamp(x.position + step * (gbest.position - x.position))


def local_pollination(x: Candidate, xj: Candidate, xk: Candidate,
                      space: SearchSpace, rng: RngStream) -> np.ndarray:
    """Move x along the difference of two flowers, scaled by one uniform draw."""
    if not (x.position.shape == xj.position.shape == xk.position.shape):
        raise ValueError("candidate dimensions differ")
    eps = uniform_unit(rng)
    return space.clamp(x.position + eps * (xj.position - xk.position))


def fpa_step(pop: Population, cfg: FpaConfig, obj: Objective, space: SearchSpace,
             rng: RngStream, counter: EvalCounter | None = None,
             stats: StepStats | None = None) -> Population:
    """One full sweep over the population; consumes exactly n evaluations.

    Flowers are visited in index order and replacements are committed
    immediately, so later flowers can pick up earlier improvements through
    the local move's j/k lookups.  The best is fixed during the sweep and
    recomputed afterwards.  Ties keep the incumbent.
    """
    counter = counter if counter is not None else EvalCounter()
    members = pop.members
    n = len(members)
    gbest = pop.best
    for i in range(n):
        if rng.random() < cfg.p:
            proposal = global_pollination(members[i], gbest, cfg, space, rng)
            if stats is not None:
                stats.global_moves += 1
        else:
            j, k = rng.integers(0, n, size=2)
            proposal = local_pollination(members[i], members[j], members[k], space, rng)
            if stats is not None:
                stats.local_moves += 1
        value = float(obj.evaluate(proposal))
        stamp = counter.tick()
        if value < members[i].value:
            members[i] = Candidate(proposal, value, stamp)
            if stats is not None:
                stats.accepted += 1
    new_best = min(members, key=lambda c: c.value)
    best = Candidate(new_best.position.copy(), new_best.value, new_best.evals_stamp)
    return Population(members=members, best=best)


def fpa_run(space: SearchSpace, obj: Objective, cfg: FpaConfig, rng: RngStream,
            trace_stride: int = 1, algorithm: str = "fpa", run_index: int = 0) -> RunRecord:
    """Run the pollination loop until the target is hit or iterations run out."""
    cfg.validate()
    if cfg.stop_on_target and obj.known_target is None:
        raise ValueError("stop_on_target requires a known_target on the objective")

    counter = EvalCounter()
    pop = init_population(space, obj, cfg.n, rng, counter)
    trace = Trace(trace_stride)
    trace.record(0, pop.best.value)

    iterations = 0
    if not (cfg.stop_on_target and obj.hit(pop.best.value)):
        for t in range(1, cfg.max_iterations + 1):
            pop = fpa_step(pop, cfg, obj, space, rng, counter)
            iterations = t
            trace.record(t, pop.best.value)
            if cfg.stop_on_target and obj.hit(pop.best.value):
                break

    return RunRecord(
        algorithm=algorithm,
        run_index=run_index,
        iterations=iterations,
        evaluations=counter.count,
        success=obj.hit(pop.best.value),
        best_value=pop.best.value,
        best_position=pop.best.position.copy(),
        trace=trace.close(iterations, pop.best.value),
    )
