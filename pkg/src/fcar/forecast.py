"""Multi-step forecasting strategies for a fitted FCAR model.

Three ways to push the recursion past the end of the sample:

* ``naive`` plugs each point forecast back in and re-evaluates the fitted
  coefficient functions, ignoring noise.
* ``bootstrap`` simulates many full noisy paths, resampling centred
  residuals, and averages them per horizon.
* ``multistage`` refits the entire two-stage estimator on the sample
  augmented with its own forecasts before every step.

All of them keep the recursion inside the observed data: the delay
argument is clamped to the fitted support, and appended path values are
confined to the observed value range. The coefficient functions are only
identified where delay values were seen, so an excursion outside that
region would multiply lags by pure extrapolation, which can snowball
over a long horizon. Steps where either clamp fired are recorded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TimeSeries, make_series

__all__ = [
    "ForecastResult",
    "forecast_naive",
    "forecast_bootstrap",
    "forecast_multistage",
]


@dataclass(frozen=True)
class ForecastResult:
    """Point forecasts over a horizon.

    Attributes
    ----------
    points : ndarray of shape (horizon,)
        Forecast of ``X_{n+1}..X_{n+horizon}``.
    clamped : ndarray of bool, shape (horizon,)
        True where a delay argument fell outside the fitted support or a
        path value left the observed range, and was clamped back.
    method : str
        Name of the strategy that produced the forecast.
    paths : ndarray of shape (n_paths, horizon) or None
        Simulated paths (bootstrap only).
    """

    points: np.ndarray
    clamped: np.ndarray
    method: str
    paths: np.ndarray | None = None

    @property
    def horizon(self) -> int:
        """Number of forecast steps."""
        return self.points.shape[0]


def _check_horizon(horizon: int) -> int:
    if int(horizon) != horizon or horizon < 1:
        raise ValueError(f"horizon must be a positive integer, got {horizon!r}")
    return int(horizon)


def forecast_naive(fit, horizon: int) -> ForecastResult:
    """Iterated plug-in forecast.

    Each step evaluates the fitted coefficient functions at the (possibly
    clamped) delay value taken from the extended path, combines them with
    the trailing lags, and appends the result, confined to the observed
    value range.

    Parameters
    ----------
    fit : SBLLForecaster
        A fitted estimator.
    horizon : int
        Number of steps ahead.

    Returns
    -------
    ForecastResult
    """
    horizon = _check_horizon(horizon)
    p, d = fit.frame_.p, fit.frame_.d
    x = np.concatenate([fit.series_.values, np.empty(horizon)])
    n = fit.series_.n
    lo, hi = float(x[:n].min()), float(x[:n].max())
    clamped = np.zeros(horizon, dtype=bool)
    for j in range(1, horizon + 1):
        t = n + j - 1  # 0-based index of X_{n+j}
        u = x[t - d : t - d + 1]
        coef, _, was_clamped = fit.evaluate(u)
        lags = x[t - p : t][::-1]
        value = float(coef[0] @ lags)
        x[t] = min(max(value, lo), hi)
        clamped[j - 1] = bool(was_clamped[0]) or x[t] != value
    return ForecastResult(points=x[n:].copy(), clamped=clamped, method="naive")


def forecast_bootstrap(fit, horizon: int, n_paths: int = 500, seed: int = 0) -> ForecastResult:
    """Residual-bootstrap forecast: average of simulated noisy paths.

    Each path repeats the naive recursion but adds a centred in-sample
    residual, resampled with replacement, at every step; path values are
    confined to the observed range like the naive recursion. Path ``b``
    draws from its own generator seeded by ``(seed, b)``, so results do
    not depend on evaluation order or worker count. The point forecast
    per horizon is the mean over paths.

    Parameters
    ----------
    fit : SBLLForecaster
        A fitted estimator.
    horizon : int
        Number of steps ahead.
    n_paths : int
        Number of bootstrap paths, at least 1.
    seed : int
        Base seed for the per-path generators.

    Returns
    -------
    ForecastResult
        With ``paths`` holding the full ``(n_paths, horizon)`` matrix.
    """
    horizon = _check_horizon(horizon)
    if int(n_paths) != n_paths or n_paths < 1:
        raise ValueError(f"n_paths must be a positive integer, got {n_paths!r}")
    n_paths = int(n_paths)
    p, d = fit.frame_.p, fit.frame_.d
    n = fit.series_.n

    res = fit.residuals_
    res = res - res.mean()
    draws = np.empty((n_paths, horizon))
    for b in range(n_paths):
        rng = np.random.default_rng([int(seed), b])
        draws[b] = res[rng.integers(0, res.shape[0], size=horizon)]

    x = np.empty((n_paths, n + horizon))
    x[:, :n] = fit.series_.values
    lo, hi = float(x[0, :n].min()), float(x[0, :n].max())
    clamped = np.zeros(horizon, dtype=bool)
    for j in range(1, horizon + 1):
        t = n + j - 1
        u = x[:, t - d]
        coef, _, was_clamped = fit.evaluate(u)
        lags = x[:, t - p : t][:, ::-1]
        values = np.sum(coef * lags, axis=1) + draws[:, j - 1]
        x[:, t] = np.clip(values, lo, hi)
        clamped[j - 1] = bool(was_clamped.any()) or bool((x[:, t] != values).any())

    paths = x[:, n:].copy()
    # Mean over paths, written as first path plus mean deviation so that
    # identical paths (zero residual spread) average to themselves exactly.
    points = paths[0] + np.mean(paths - paths[0], axis=0)
    return ForecastResult(points=points, clamped=clamped, method="bootstrap", paths=paths)


def forecast_multistage(series, p: int, d: int, horizon: int,
                        h: float | None = None, n_knots: int | None = None) -> ForecastResult:
    """Refit-per-step forecast.

    Before each step the full two-stage estimator is refit on the series
    augmented with all forecasts made so far, and only a one-step naive
    forecast is taken from it. Step one therefore coincides exactly with
    the naive forecast at horizon one. Appended forecasts are confined
    to the observed value range, which also keeps each refit's delay
    support anchored to the data actually seen.

    Parameters
    ----------
    series : TimeSeries or array-like
        Observations the original fit used.
    p, d : int
        Model orders, matching the original fit.
    horizon : int
        Number of steps ahead.
    h : float, optional
        Fixed bandwidth; default re-derives the rule of thumb on every
        augmented sample.
    n_knots : int, optional
        Fixed interior knot count; default re-derives the usual rate on
        every augmented sample.

    Returns
    -------
    ForecastResult
    """
    from .estimator import SBLLForecaster

    horizon = _check_horizon(horizon)
    if not isinstance(series, TimeSeries):
        series = make_series(series)
    x = np.concatenate([series.values, np.empty(horizon)])
    n = series.n
    lo, hi = float(x[:n].min()), float(x[:n].max())
    clamped = np.zeros(horizon, dtype=bool)
    for j in range(1, horizon + 1):
        t = n + j - 1
        step_fit = SBLLForecaster(p=p, d=d, h=h, n_knots=n_knots).fit(x[:t])
        u = x[t - d : t - d + 1]
        coef, _, was_clamped = step_fit.evaluate(u)
        lags = x[t - p : t][::-1]
        value = float(coef[0] @ lags)
        x[t] = min(max(value, lo), hi)
        clamped[j - 1] = bool(was_clamped[0]) or x[t] != value
    return ForecastResult(points=x[n:].copy(), clamped=clamped, method="multistage")
