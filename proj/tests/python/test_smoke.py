import json

import numpy as np
import pytest

import regcoreset as rc


def test_ridge_scalar():
    res = rc.solve(np.eye(1), np.array([2.0]), "ridge", 1.0)
    assert res.converged
    assert res.solution == pytest.approx([1.0], abs=1e-8)
    assert res.objective_value == pytest.approx(2.0, abs=1e-8)


def test_prox_scalar():
    assert rc.prox_squared_l1(np.array([3.0]), 0.5) == pytest.approx([1.5])


def test_statistical_dimension_matches_leverage_total():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((40, 3))
    sd = rc.statistical_dimension(np.linalg.svd(a, compute_uv=False), 1.0)
    scores = rc.ridge_leverage_scores(a, 1.0)
    assert scores.total == pytest.approx(sd, abs=1e-10)
    assert scores.values.shape == (40,)


def test_coreset_pipeline():
    a = rc.generate_ng_matrix(300, 4, 0.1, seed=1)
    b = rc.generate_response(a, np.ones(4), 1e-5, seed=2)
    scores = rc.ridge_leverage_scores(np.column_stack([a, b]), 0.5)
    c = rc.build_coreset(a, b, scores, 60, seed=3)
    assert len(c) == 60
    assert c.rows.shape == (60, 5)
    doc = json.loads(c.to_json())
    assert doc["r"] == 60
    report = rc.verify_coreset(a, b, c, "ridge", 0.5, queries=50)
    assert report.queries_checked == 50
    assert report.max_relative_deviation >= 0.0


def test_rlad_scores_and_median():
    res = rc.solve(np.ones((3, 1)), np.array([1.0, 2.0, 9.0]), "rlad", 0.0)
    assert res.solution[0] == pytest.approx(2.0, abs=1e-4)
    rng = np.random.default_rng(1)
    s = rc.rlad_sensitivity_bounds(rng.standard_normal((30, 3)), 0.5, seed=2)
    assert np.all(s.values > 0)


def test_counterexample():
    w = rc.demonstrate_violation(np.eye(2), np.eye(2)[:1], 2.0, 1.0, 2.0, 1.0, 1.0, 0.1)
    assert w is not None
    assert w.direction == "undershoot"
    assert w.alpha == pytest.approx(1.01 * 1.1 / 0.9, rel=1e-9)
    assert rc.counterexample_alpha(0.1, 0.3, 1.0, 1.0, 1.0, 2.0, 1.0) == pytest.approx(2.02)


def test_errors_are_value_errors():
    with pytest.raises(rc.Error):
        rc.sample_size(2.0, 1.5, 0.1, 3)
    with pytest.raises(ValueError):
        rc.generate_ng_matrix(100, 5)
    with pytest.raises(rc.Error):
        rc.solve(np.eye(2), np.ones(2), "nope", 1.0)


def test_small_experiment_is_deterministic():
    config = json.dumps({"n": 300, "d": 4, "ng_alpha": 0.01, "sample_sizes": [20], "trials_per_cell": 3,
                         "threads": 1})
    first = rc.run_experiment(config, "csv")
    assert first == rc.run_experiment(config, "csv")
    assert first.splitlines()[0] == "label,uniform@0.5,ridge_leverage@0.5"
    table = json.loads(rc.run_sparsity(config))
    assert table["rows"] == ["lasso", "modified_lasso", "ridge"]
