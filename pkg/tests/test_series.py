"""Series construction and lag-frame extraction."""

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from fcar.errors import (
    EmptySeries,
    NonFiniteValue,
    NonMonotoneTimestamps,
    SeriesTooShort,
)
from fcar.series import delay_range, lag_frame, make_series


def test_make_series_wraps_values():
    ts = make_series([1.0, 2.0, 3.0])
    assert ts.n == 3
    assert_array_equal(ts.values, [1.0, 2.0, 3.0])


def test_make_series_copies_input():
    raw = np.array([1.0, 2.0, 3.0])
    ts = make_series(raw)
    raw[0] = 99.0
    assert ts.values[0] == 1.0


def test_make_series_rejects_empty():
    with pytest.raises(EmptySeries):
        make_series([])


def test_make_series_reports_first_nonfinite_index():
    with pytest.raises(NonFiniteValue) as exc:
        make_series([1.0, np.nan, np.inf])
    assert exc.value.index == 1


def test_make_series_accepts_increasing_timestamps():
    ts = make_series([1.0, 2.0], timestamps=[0.0, 5.0])
    assert_array_equal(ts.timestamps, [0.0, 5.0])


def test_make_series_rejects_nonmonotone_timestamps():
    with pytest.raises(NonMonotoneTimestamps):
        make_series([1.0, 2.0, 3.0], timestamps=[0.0, 2.0, 2.0])


def test_lag_frame_index_arithmetic():
    frame = lag_frame(make_series([1.0, 2.0, 3.0, 4.0, 5.0]), p=2, d=1)
    assert frame.t0 == 3
    assert_array_equal(frame.response, [3.0, 4.0, 5.0])
    assert_array_equal(frame.regressors[:, 0], [2.0, 3.0, 4.0])
    assert_array_equal(frame.regressors[:, 1], [1.0, 2.0, 3.0])
    assert_array_equal(frame.delay, [2.0, 3.0, 4.0])


def test_lag_frame_delay_beyond_order():
    frame = lag_frame(make_series([1.0, 2.0, 3.0, 4.0, 5.0]), p=1, d=3)
    assert frame.t0 == 4
    assert_array_equal(frame.response, [4.0, 5.0])
    assert_array_equal(frame.delay, [1.0, 2.0])


def test_lag_frame_rejects_short_series():
    with pytest.raises(SeriesTooShort):
        lag_frame(make_series([1.0, 2.0, 3.0, 4.0]), p=4, d=1)


@pytest.mark.parametrize("p,d", [(0, 1), (-1, 1), (2, 0), (2, -3)])
def test_lag_frame_rejects_nonpositive_orders(p, d):
    with pytest.raises(ValueError):
        lag_frame(make_series(np.arange(1.0, 20.0)), p=p, d=d)


def test_lag_frame_round_trip():
    rng = np.random.default_rng(0)
    values = rng.standard_normal(40)
    frame = lag_frame(make_series(values), p=3, d=2)
    n_eff = frame.response.shape[0]
    for i in range(n_eff):
        t = frame.t0 + i  # 1-based time index of row i
        assert frame.response[i] == values[t - 1]
        for alpha in range(1, 4):
            assert frame.regressors[i, alpha - 1] == values[t - 1 - alpha]
        assert frame.delay[i] == values[t - 1 - 2]


def test_lag_frame_is_deterministic():
    values = np.random.default_rng(1).standard_normal(30)
    f1 = lag_frame(make_series(values), p=2, d=1)
    f2 = lag_frame(make_series(values), p=2, d=1)
    assert_array_equal(f1.response, f2.response)
    assert_array_equal(f1.regressors, f2.regressors)
    assert_array_equal(f1.delay, f2.delay)


def test_delay_range_is_min_max():
    frame = lag_frame(make_series([1.0, 2.0, 3.0, 4.0, 5.0]), p=2, d=1)
    assert delay_range(frame) == (2.0, 4.0)


def test_delay_range_handles_negative_values():
    frame = lag_frame(make_series([-1.5, 0.0, 2.5, 1.0, -0.5]), p=1, d=1)
    assert delay_range(frame) == (-1.5, 2.5)


def test_delay_range_flags_constant_delay():
    frame = lag_frame(make_series([1.0, 1.0, 1.0, 1.0, 2.0]), p=1, d=2)
    assert not frame.degenerate_delay
    with pytest.warns(RuntimeWarning):
        a, b = delay_range(frame)
    assert a == b == 1.0
    assert frame.degenerate_delay
