"""Benchmark registry: formulas at known optima, domains, construction rules.

Derived constants (Schwefel argmin, Michalewicz per-coordinate optima,
Shubert minimizers) were computed by scripts/derive_constants.py with
mpmath/scipy oracles before the functions were implemented.
"""

import numpy as np
import pytest

from fpabench.benchmarks import (MICHALEWICZ_ARGMIN_16, REGISTRY, SHUBERT_ARGMIN,
                                 TABLE_ORDER, build, evaluate_all_at_optima, lookup)
from fpabench.core import derive_stream

EXPECTED_DIMS = {
    "michalewicz": 16, "rosenbrock": 16, "dejong": 256, "schwefel": 128,
    "ackley": 128, "rastrigin": 16, "easom": 2, "griewank": 16,
    "yang": 16, "shubert": 2,
}
EXPECTED_BOUNDS = {
    "michalewicz": (0.0, np.pi), "rosenbrock": (-5.0, 5.0),
    "dejong": (-5.12, 5.12), "schwefel": (-500.0, 500.0),
    "ackley": (-32.768, 32.768), "rastrigin": (-5.12, 5.12),
    "easom": (-100.0, 100.0), "griewank": (-600.0, 600.0),
    "yang": (-2 * np.pi, 2 * np.pi), "shubert": (-10.0, 10.0),
}


def test_registry_has_the_ten_functions_in_table_order():
    assert TABLE_ORDER == ("michalewicz", "rosenbrock", "dejong", "schwefel",
                           "ackley", "rastrigin", "easom", "griewank",
                           "yang", "shubert")


def test_registry_dims_and_bounds():
    for name, spec in REGISTRY.items():
        assert spec.dim == EXPECTED_DIMS[name]
        low, high = EXPECTED_BOUNDS[name]
        assert spec.space.lower[0] == pytest.approx(low)
        assert spec.space.upper[0] == pytest.approx(high)


def test_every_stored_minimizer_reproduces_its_target():
    for row in evaluate_all_at_optima():
        assert row["gap"] <= 1e-9, row


def test_exact_zero_minima_at_the_origin():
    for name in ("dejong", "ackley", "griewank", "rastrigin", "yang"):
        spec = lookup(name)
        value = spec.objective.evaluate(np.zeros(spec.dim))
        assert abs(value) <= 1e-12, name


def test_rosenbrock_is_zero_at_ones_and_nonnegative():
    spec = lookup("rosenbrock")
    assert spec.objective.evaluate(np.ones(16)) == 0.0
    pts = derive_stream(0).uniform(-5, 5, size=(1000, 16))
    assert np.all(spec.objective.rows(pts) >= 0.0)


def test_easom_minimum_at_pi_pi():
    spec = lookup("easom")
    assert spec.objective.evaluate(np.array([np.pi, np.pi])) == pytest.approx(-1.0, abs=1e-12)


def test_michalewicz_2d_matches_published_constants():
    spec = build("michalewicz", 2)
    value = spec.objective.evaluate(np.array([2.20319, 1.57049]))
    assert abs(value - (-1.8013)) <= 1e-4
    assert abs(spec.f_star - (-1.8013)) <= 1e-4


def test_michalewicz_16_target_is_the_sum_of_coordinate_minima():
    spec = lookup("michalewicz")
    x = np.asarray(MICHALEWICZ_ARGMIN_16)
    per_dim = -np.sin(x) * np.sin(np.arange(1, 17) * x**2 / np.pi) ** 20
    assert spec.f_star == pytest.approx(float(per_dim.sum()), abs=1e-12)


def test_schwefel_matches_published_constants_at_published_point():
    spec = lookup("schwefel")
    value = spec.objective.evaluate(np.full(128, 420.9687))
    assert abs(value - (-418.9829 * 128)) <= 1e-2 * 128


def test_shubert_reaches_published_minimum():
    spec = lookup("shubert")
    value = spec.objective.evaluate(np.asarray(SHUBERT_ARGMIN))
    assert abs(value - (-186.7309)) <= 1e-3


def test_shubert_has_exactly_18_global_minima():
    # f(x, y) factorizes into g(x) g(y); the global value is only reached by
    # pairing a deepest minimum of g with a highest maximum of g, so counting
    # those 1-D extrema on a dense grid counts the 2-D global minima.
    spec = lookup("shubert")
    t = np.linspace(-10.0, 10.0, 400_001)
    i = np.arange(1.0, 6.0)[:, None]
    g = np.sum(i * np.cos((i + 1) * t + i), axis=0)
    deep = _count_local_extrema(t, g, g.min(), 1e-3, minima=True)
    high = _count_local_extrema(t, g, g.max(), 1e-3, minima=False)
    assert deep == 3 and high == 3
    assert 2 * deep * high == 18
    # the factor extrema multiply out to the published value
    assert abs(g.min() * g.max() - (-186.7309)) <= 1e-3
    # and a sample cross pair indeed evaluates to the global value
    x = t[np.argmin(g)]
    y = t[np.argmax(g)]
    assert abs(spec.objective.evaluate(np.array([x, y])) - spec.f_star) <= 1e-3


def _count_local_extrema(t, g, level, tol, minima):
    near = np.abs(g - level) <= abs(level) * tol
    # count contiguous index clusters
    idx = np.flatnonzero(near)
    return int(np.sum(np.diff(idx) > 1) + 1) if idx.size else 0


def test_yang_is_finite_and_nonnegative_on_samples():
    spec = lookup("yang")
    pts = derive_stream(1).uniform(-2 * np.pi, 2 * np.pi, size=(100_000, 16))
    values = spec.objective.rows(pts)
    assert np.all(np.isfinite(values))
    assert np.all(values >= 0.0)


def test_batch_and_scalar_evaluation_agree_everywhere():
    rng = derive_stream(2)
    for spec in REGISTRY.values():
        pts = rng.uniform(spec.space.lower, spec.space.upper, size=(50, spec.dim))
        loop = np.array([spec.objective.evaluate(p) for p in pts])
        assert np.allclose(loop, spec.objective.rows(pts), rtol=0, atol=0)


def test_lookup_alias_and_errors():
    assert lookup("sphere").name == "dejong"
    assert lookup(" Ackley ").name == "ackley"
    with pytest.raises(KeyError, match="available"):
        lookup("nosuch")


def test_build_at_default_dim_returns_the_registry_entry():
    assert build("easom", 2) is lookup("easom")
    assert build("dejong", 256) is lookup("dejong")


def test_build_at_other_dims():
    spec = build("dejong", 8)
    assert spec.dim == 8 and spec.f_star == 0.0 and spec.paper_dim == 256
    spec = build("michalewicz", 4)
    assert spec.dim == 4
    assert spec.objective.evaluate(spec.x_star) == pytest.approx(spec.f_star, abs=1e-12)
    spec = build("schwefel", 4)
    assert abs(spec.objective.evaluate(spec.x_star) - spec.f_star) <= 1e-9


def test_build_rejects_undefined_dimensions():
    with pytest.raises(ValueError):
        build("easom", 3)
    with pytest.raises(ValueError):
        build("shubert", 4)
    with pytest.raises(ValueError):
        build("michalewicz", 17)
    with pytest.raises(ValueError):
        build("rosenbrock", 1)
    with pytest.raises(ValueError):
        build("dejong", 0)
