"""Shared building blocks: search spaces, objectives, populations, RNG streams.

Everything downstream (the pollination engine, the GA/PSO baselines, the
experiment harness) works against these types.  All positions and values are
64-bit floats; minimization is the canonical direction, maximization problems
are negated before they get here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

RngStream = np.random.Generator

_SEED_LIMIT = 2**64


def derive_stream(seed: int, *key: int) -> RngStream:
    """Build an independent generator keyed by (seed, *key).

    The same (seed, key) always reproduces the same draw sequence, and
    different keys give statistically independent streams, so per-run
    streams can be handed out as (master_seed, algorithm_index, run_index).
    """
    if not 0 <= int(seed) < _SEED_LIMIT:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    if any(k < 0 for k in key):
        raise ValueError(f"stream key parts must be non-negative, got {key}")
    entropy = [int(seed)] + [int(k) for k in key]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned box of feasible positions."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lower, dtype=float))
        hi = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("lower and upper must be 1-D vectors of equal length")
        if lo.size < 1:
            raise ValueError("dimension must be at least 1")
        if not np.all(lo < hi):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def box(cls, dim: int, low: float, high: float) -> "SearchSpace":
        """Hypercube [low, high]^dim."""
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def clamp(self, x: np.ndarray) -> np.ndarray:
        """Project x onto the box, coordinate by coordinate."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {x.shape[-1]}")
        return np.minimum(np.maximum(x, self.lower), self.upper)

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass
class Objective:
    """A deterministic scalar objective, plus an optional success target.

    ``evaluate`` maps one position vector to a float.  ``evaluate_batch``,
    when set, maps an (n, dim) array to an (n,) array and must agree with
    ``evaluate`` row by row; the batched baselines use it to avoid Python
    overhead.  A run counts as a success when the best value comes within
    ``target_tolerance`` (absolute) of ``known_target``.
    """

    evaluate: Callable[[np.ndarray], float]
    known_target: Optional[float] = None
    target_tolerance: float = 1e-5
    evaluate_batch: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        if self.target_tolerance <= 0:
            raise ValueError("target_tolerance must be positive")

    def rows(self, x: np.ndarray) -> np.ndarray:
        """Evaluate every row of an (n, dim) array."""
        if self.evaluate_batch is not None:
            return np.asarray(self.evaluate_batch(x), dtype=float)
        return np.array([self.evaluate(row) for row in x], dtype=float)

    def hit(self, value: float) -> bool:
        """True when value is within tolerance of the known target."""
        if self.known_target is None:
            return False
        return abs(value - self.known_target) <= self.target_tolerance


class EvalCounter:
    """Running count of objective evaluations within one run."""

    __slots__ = ("count",)

    def __init__(self, count: int = 0):
        self.count = count

    def tick(self, k: int = 1) -> int:
        self.count += k
        return self.count


@dataclass
class Candidate:
    """One evaluated position; evals_stamp is the counter value when scored."""

    position: np.ndarray
    value: float
    evals_stamp: int = 0


@dataclass
class Population:
    """Fixed-size set of candidates plus the best one found among them."""

    members: list
    best: Candidate

    @property
    def n(self) -> int:
        return len(self.members)


def better(a: Candidate, b: Candidate) -> Candidate:
    """Greedy choice between two candidates; the incumbent a wins ties."""
    return a if a.value <= b.value else b


def init_population(space: SearchSpace, obj: Objective, n: int, rng: RngStream,
                    counter: Optional[EvalCounter] = None) -> Population:
    """Draw n candidates uniformly in the box and score them.

    Advances the evaluation counter by n.  The population best is the
    minimum-value member (first such member on ties).
    """
    if n < 2:
        raise ValueError(f"population size must be at least 2, got {n}")
    counter = counter if counter is not None else EvalCounter()
    positions = rng.uniform(space.lower, space.upper, size=(n, space.dim))
    members = [
        Candidate(positions[i], float(obj.evaluate(positions[i])), counter.tick())
        for i in range(n)
    ]
    best = min(members, key=lambda c: c.value)
    return Population(members=members, best=Candidate(best.position.copy(), best.value, best.evals_stamp))


@dataclass
class RunRecord:
    """Outcome of a single optimization run.

    The trace holds (iteration, best_value) pairs, always including
    iteration 0 (the initial population) and the final iteration; values are
    non-increasing.  evaluations equals n * (iterations + 1) for every
    algorithm in this package.
    """

    algorithm: str
    run_index: int
    iterations: int
    evaluations: int
    success: bool
    best_value: float
    best_position: np.ndarray
    trace: list = field(default_factory=list)


class Trace:
    """Strided (iteration, best_value) recorder for run records."""

    def __init__(self, stride: int = 1):
        if stride < 1:
            raise ValueError("trace stride must be at least 1")
        self.stride = stride
        self.points = []

    def record(self, iteration: int, value: float):
        if iteration % self.stride == 0:
            self.points.append((iteration, float(value)))

    def close(self, iteration: int, value: float) -> list:
        """Make sure the final iteration is present, then return the points."""
        if not self.points or self.points[-1][0] != iteration:
            self.points.append((iteration, float(value)))
        return self.points
