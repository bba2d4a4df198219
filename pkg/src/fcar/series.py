"""Time-series container and lagged regression frames.

A univariate series ``X_1..X_n`` is turned into the regression layout used
by every estimator in this package: response ``X_t``, regressor columns
``X_{t-1}..X_{t-p}`` and the smoothing variable ``U_t = X_{t-d}``, with the
first ``max(p, d)`` observations consumed as pre-sample lags.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateDelay,
    EmptySeries,
    NonFiniteValue,
    NonMonotoneTimestamps,
    SeriesTooShort,
)

__all__ = ["TimeSeries", "RegressionFrame", "make_series", "lag_frame", "delay_range"]


@dataclass(frozen=True)
class TimeSeries:
    """Validated univariate series.

    Attributes
    ----------
    values : ndarray of shape (n,)
        Observations as float64, finite, in time order.
    timestamps : ndarray or None
        Optional strictly increasing labels, one per observation.
    """

    values: np.ndarray
    timestamps: np.ndarray | None = None

    @property
    def n(self) -> int:
        """Number of observations."""
        return self.values.shape[0]

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class RegressionFrame:
    """Lagged design extracted from a series.

    Rows correspond to times ``t = t0..n`` (1-based), so there are
    ``n_eff = n - max(p, d)`` of them.

    Attributes
    ----------
    response : ndarray of shape (n_eff,)
        ``X_t``.
    regressors : ndarray of shape (n_eff, p)
        Column ``alpha-1`` holds ``X_{t-alpha}``.
    delay : ndarray of shape (n_eff,)
        Smoothing variable ``U_t = X_{t-d}``.
    p, d : int
        Autoregressive order and delay lag.
    t0 : int
        First usable time index, 1-based: ``max(p, d) + 1``.
    degenerate_delay : bool
        True when every delay value coincides (set by :func:`delay_range`).
    """

    response: np.ndarray
    regressors: np.ndarray
    delay: np.ndarray
    p: int
    d: int
    t0: int
    degenerate_delay: bool = field(default=False, compare=False)

    @property
    def n_eff(self) -> int:
        """Number of usable rows."""
        return self.response.shape[0]


def make_series(values, timestamps=None) -> TimeSeries:
    """Validate raw observations into a :class:`TimeSeries`.

    Parameters
    ----------
    values : array-like of shape (n,)
        Observations; copied to a float64 vector.
    timestamps : array-like of shape (n,), optional
        Labels that must be strictly increasing.

    Returns
    -------
    TimeSeries

    Raises
    ------
    EmptySeries
        If ``values`` is empty.
    NonFiniteValue
        If any observation is NaN or infinite (reports the first index).
    NonMonotoneTimestamps
        If timestamps are supplied but not strictly increasing, or their
        length differs from ``values``.
    """
    arr = np.array(values, dtype=float, copy=True).reshape(-1)
    if arr.size == 0:
        raise EmptySeries("series has no observations")
    bad = ~np.isfinite(arr)
    if bad.any():
        raise NonFiniteValue(int(np.flatnonzero(bad)[0]))
    ts = None
    if timestamps is not None:
        ts = np.asarray(timestamps)
        if ts.shape != arr.shape:
            raise NonMonotoneTimestamps(
                f"got {ts.shape[0] if ts.ndim == 1 else ts.shape} timestamps "
                f"for {arr.size} observations"
            )
        if ts.size > 1 and np.any(ts[1:] <= ts[:-1]):
            raise NonMonotoneTimestamps("timestamps must be strictly increasing")
        ts = ts.copy()
    return TimeSeries(values=arr, timestamps=ts)


def lag_frame(series: TimeSeries, p: int, d: int) -> RegressionFrame:
    """Build the lagged regression frame for orders ``(p, d)``.

    Parameters
    ----------
    series : TimeSeries
        Input observations ``X_1..X_n``.
    p : int
        Autoregressive order, at least 1.
    d : int
        Delay lag of the smoothing variable, at least 1.

    Returns
    -------
    RegressionFrame
        With ``n - max(p, d)`` rows: response ``X_t``, regressor columns
        ``X_{t-alpha}`` for ``alpha = 1..p`` and delay ``X_{t-d}``.

    Raises
    ------
    SeriesTooShort
        If ``n <= max(p, d) + p``, which would leave fewer rows than
        regressor columns.
    ValueError
        If ``p`` or ``d`` is not a positive integer.
    """
    if int(p) != p or p < 1:
        raise ValueError(f"p must be a positive integer, got {p!r}")
    if int(d) != d or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    p, d = int(p), int(d)
    x = series.values
    n = x.shape[0]
    m = max(p, d)
    if n <= m + p:
        raise SeriesTooShort(m + p, n)
    # Row i (0-based) is time t = m + 1 + i in 1-based series indexing.
    response = x[m:]
    n_eff = response.shape[0]
    regressors = np.empty((n_eff, p))
    for alpha in range(1, p + 1):
        regressors[:, alpha - 1] = x[m - alpha : n - alpha]
    delay = x[m - d : n - d]
    return RegressionFrame(
        response=response,
        regressors=regressors,
        delay=delay.copy(),
        p=p,
        d=d,
        t0=m + 1,
    )


def delay_range(frame: RegressionFrame) -> tuple[float, float]:
    """Empirical support ``[a, b]`` of the delay variable.

    Parameters
    ----------
    frame : RegressionFrame

    Returns
    -------
    (float, float)
        Minimum and maximum of the observed delay values.

    Warns
    -----
    RuntimeWarning
        When all delay values coincide; the frame is then marked
        ``degenerate_delay`` and downstream fitting will refuse it.
    """
    a = float(np.min(frame.delay))
    b = float(np.max(frame.delay))
    if a == b:
        warnings.warn(
            f"all delay values equal {a!r}; no smoothing support",
            RuntimeWarning,
            stacklevel=2,
        )
        object.__setattr__(frame, "degenerate_delay", True)
    return a, b
