"""Tests for the seeded Monte Carlo harness."""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from fcar.montecarlo import (
    FORECAST_METHODS,
    SEED_STRIDE,
    MonteCarloReport,
    replication_seed,
    run_cell,
)


def test_replication_seeds_stride_and_wrap():
    assert replication_seed(0, 0) == 0
    assert replication_seed(0, 1) == 2654435761
    assert replication_seed(5, 2) == 5 + 2 * SEED_STRIDE
    assert replication_seed(2 ** 64 - 1, 1) == SEED_STRIDE - 1


def test_run_cell_reports_every_method_and_lag():
    report = run_cell("sine", 60, 4, reps=2, horizon=2, n_paths=10)
    assert isinstance(report, MonteCarloReport)
    assert report.kind == "sine" and report.n == 60 and report.p == 4
    assert report.reps == 2 and report.horizon == 2
    assert report.methods == FORECAST_METHODS
    for method in FORECAST_METHODS:
        vec = report.rmpe[method]
        assert vec.shape == (2,)
        assert np.all(np.isfinite(vec)) and np.all(vec >= 0.0)
    assert sorted(report.efficiency) == [1, 2, 3, 4]
    for gamma in range(1, 5):
        eff = report.efficiency[gamma]
        assert eff.shape == (2,)
        assert np.all(eff > 0.0)


def test_run_cell_is_deterministic():
    a = run_cell("setar", 60, 4, reps=2, methods=("naive",), horizon=2)
    b = run_cell("setar", 60, 4, reps=2, methods=("naive",), horizon=2)
    assert_array_equal(a.rmpe["naive"], b.rmpe["naive"])
    for gamma in a.efficiency:
        assert_array_equal(a.efficiency[gamma], b.efficiency[gamma])


def test_worker_count_does_not_change_results():
    serial = run_cell("sine", 60, 4, reps=2, horizon=2, n_paths=10, workers=1)
    parallel = run_cell("sine", 60, 4, reps=2, horizon=2, n_paths=10, workers=2)
    for method in FORECAST_METHODS:
        assert_array_equal(serial.rmpe[method], parallel.rmpe[method])
    for gamma in serial.efficiency:
        assert_array_equal(serial.efficiency[gamma], parallel.efficiency[gamma])


def test_single_step_multistage_matches_naive():
    report = run_cell("sine", 60, 4, reps=2, methods=("naive", "multistage"),
                      horizon=1)
    assert_allclose(report.rmpe["multistage"], report.rmpe["naive"], atol=1e-12)


def test_efficiency_does_not_depend_on_the_horizon():
    short = run_cell("sine", 60, 4, reps=2, methods=("naive",), horizon=1)
    longer = run_cell("sine", 60, 4, reps=2, methods=("naive",), horizon=3)
    for gamma in short.efficiency:
        assert_array_equal(short.efficiency[gamma], longer.efficiency[gamma])


def test_run_cell_validates_inputs():
    with pytest.raises(ValueError):
        run_cell("sine", 60, 4, reps=0)
    with pytest.raises(ValueError):
        run_cell("sine", 60, 4, reps=1.5)
    with pytest.raises(ValueError, match="unknown forecast methods"):
        run_cell("sine", 60, 4, reps=1, methods=("naive", "typo"))
