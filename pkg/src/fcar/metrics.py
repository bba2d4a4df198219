"""Evaluation statistics: prediction error, oracle efficiency, densities.

Everything here is a pure function of arrays; the Monte Carlo layer and
the CLI assemble reports from them.
"""

from __future__ import annotations

import warnings

import numpy as np

from .errors import DegenerateSample, ShapeMismatch

__all__ = ["rmpe", "rspe", "efficiency", "kde", "silverman_bandwidth"]


def rmpe(forecasts, actuals) -> np.ndarray:
    """Root mean prediction error per horizon.

    Parameters
    ----------
    forecasts, actuals : array-like of shape (reps, horizon)
        One row per Monte Carlo replication.

    Returns
    -------
    ndarray of shape (horizon,)
        ``sqrt(mean_i (forecast[i, M] - actual[i, M])^2)`` per column.

    Raises
    ------
    ShapeMismatch
        If the two matrices differ in shape.
    """
    f = np.atleast_2d(np.asarray(forecasts, dtype=float))
    a = np.atleast_2d(np.asarray(actuals, dtype=float))
    if f.shape != a.shape:
        raise ShapeMismatch(f"forecasts {f.shape} vs actuals {a.shape}")
    err = f - a
    return np.sqrt(np.mean(err * err, axis=0))


def rspe(forecast, actual) -> np.ndarray:
    """Per-horizon root squared prediction error of a single forecast.

    Equals ``|forecast - actual|`` elementwise, which is :func:`rmpe`
    restricted to one replication.

    Raises
    ------
    ShapeMismatch
        If the two vectors differ in length.
    """
    f = np.asarray(forecast, dtype=float).reshape(-1)
    a = np.asarray(actual, dtype=float).reshape(-1)
    if f.shape != a.shape:
        raise ShapeMismatch(f"forecast {f.shape} vs actual {a.shape}")
    return np.abs(f - a)


def efficiency(oracle_vals, sbll_vals, true_vals) -> float:
    """Oracle efficiency of a backfitted coefficient estimate.

    ``sqrt(sum (oracle - truth)^2 / sum (sbll - truth)^2)`` over a common
    set of evaluation points: 1 means the backfitted estimator matches
    the benchmark that knows the other coefficient functions.

    Parameters
    ----------
    oracle_vals, sbll_vals, true_vals : array-like of shape (m,)

    Returns
    -------
    float
        ``inf`` (with a RuntimeWarning) when the backfitted errors sum
        to zero.

    Raises
    ------
    ShapeMismatch
        If the vectors differ in length.
    """
    o = np.asarray(oracle_vals, dtype=float).reshape(-1)
    s = np.asarray(sbll_vals, dtype=float).reshape(-1)
    t = np.asarray(true_vals, dtype=float).reshape(-1)
    if not (o.shape == s.shape == t.shape):
        raise ShapeMismatch(f"lengths {o.shape[0]}, {s.shape[0]}, {t.shape[0]} differ")
    num = float(np.sum((o - t) ** 2))
    den = float(np.sum((s - t) ** 2))
    if den == 0.0:
        warnings.warn("backfitted fit is exact; efficiency reported as inf",
                      RuntimeWarning, stacklevel=2)
        return float("inf")
    return float(np.sqrt(num / den))


def silverman_bandwidth(samples) -> float:
    """Rule-of-thumb density bandwidth ``1.06 sd n^(-1/5)``.

    Raises
    ------
    DegenerateSample
        With fewer than two samples or zero spread.
    """
    s = np.asarray(samples, dtype=float).reshape(-1)
    if s.shape[0] < 2:
        raise DegenerateSample(f"need at least 2 samples, got {s.shape[0]}")
    sd = float(np.std(s, ddof=1))
    if sd == 0.0:
        raise DegenerateSample("samples have zero spread")
    return 1.06 * sd * s.shape[0] ** (-0.2)


def kde(samples, grid) -> np.ndarray:
    """Gaussian kernel density estimate on a grid.

    Parameters
    ----------
    samples : array-like of shape (m,)
        At least two values with positive spread.
    grid : array-like of shape (g,)
        Points at which to evaluate the density.

    Returns
    -------
    ndarray of shape (g,)
        Density values; integrates to 1 (within quadrature error) over a
        grid covering the samples plus four bandwidths.
    """
    s = np.asarray(samples, dtype=float).reshape(-1)
    g = np.asarray(grid, dtype=float).reshape(-1)
    bw = silverman_bandwidth(s)
    z = (g[:, None] - s[None, :]) / bw
    dens = np.exp(-0.5 * z * z).sum(axis=1) / (s.shape[0] * bw * np.sqrt(2.0 * np.pi))
    return dens
