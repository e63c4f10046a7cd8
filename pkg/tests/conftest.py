"""Shared fixtures and statistical helpers for the test suite."""

import numpy as np
import pytest

from fpabench.core import Objective, SearchSpace


def fit_tail_exponent(magnitudes: np.ndarray, lo: float = 10.0, hi: float = 1e3,
                      points: int = 30) -> float:
    """Slope of the empirical log-log survival function over [lo, hi].

    For draws with P(|X| > t) ~ t^(-alpha) the fitted value approaches
    alpha as the sample grows.
    """
    thresholds = np.logspace(np.log10(lo), np.log10(hi), points)
    survival = np.array([(magnitudes > t).mean() for t in thresholds])
    keep = survival > 0
    slope, _ = np.polyfit(np.log10(thresholds[keep]), np.log10(survival[keep]), 1)
    return -float(slope)


@pytest.fixture
def sphere_2d():
    """A tiny quadratic problem with known optimum at the origin."""
    space = SearchSpace.box(2, -5.12, 5.12)
    obj = Objective(
        evaluate=lambda x: float(np.sum(x * x)),
        known_target=0.0,
        target_tolerance=1e-5,
        evaluate_batch=lambda x: np.sum(x * x, axis=-1),
    )
    return space, obj
