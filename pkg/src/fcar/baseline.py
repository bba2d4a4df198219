"""Linear autoregressive baseline with AIC order selection.

The comparison model every nonlinear fit is judged against: conditional
least squares of ``X_t`` on an intercept and ``q`` lags, with the order
picked by AIC over a common sample so candidate criteria are comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import SeriesTooShort
from .forecast import ForecastResult, _check_horizon
from .series import TimeSeries, make_series
from .spline import solve_lambda

__all__ = ["ArModel", "fit_ar_ls", "select_ar_order", "forecast_ar", "LinearAR"]


@dataclass(frozen=True)
class ArModel:
    """Least-squares AR(q) fit.

    Attributes
    ----------
    order : int
        Number of lags ``q``.
    intercept : float
    coefficients : ndarray of shape (q,)
    sigma2 : float
        Residual variance ``RSS / n_eff``.
    aic : float
        ``n_eff * ln(RSS / (n_eff - q - 1)) + 2 (q + 1)``: the criterion
        uses the degrees-of-freedom-corrected residual variance (as in
        R's ``ar.ols``), which curbs the overfitting a plain
        maximum-likelihood AIC is prone to when many candidate orders
        compete.
    t0 : int
        First fitted time index, 1-based.
    fitted : ndarray of shape (n_eff,)
    residuals : ndarray of shape (n_eff,)
    """

    order: int
    intercept: float
    coefficients: np.ndarray
    sigma2: float
    aic: float
    t0: int
    fitted: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)


def _ar_design(x: np.ndarray, q: int, offset: int) -> tuple[np.ndarray, np.ndarray]:
    """Response and [1, lags] design over ``t = offset+1..n`` (1-based)."""
    n = x.shape[0]
    y = x[offset:]
    D = np.empty((n - offset, q + 1))
    D[:, 0] = 1.0
    for j in range(1, q + 1):
        D[:, j] = x[offset - j : n - j]
    return y, D


def fit_ar_ls(series, q: int, offset: int | None = None) -> ArModel:
    """Conditional least squares AR(q) with intercept.

    Parameters
    ----------
    series : TimeSeries or array-like
    q : int
        Lag order, at least 0; ``q = 0`` reduces to an intercept-only
        model (sample mean, biased sample variance).
    offset : int, optional
        Start the fitted sample at ``t = offset + 1`` instead of
        ``t = q + 1``; used to put candidate orders on a common sample.

    Returns
    -------
    ArModel

    Raises
    ------
    SeriesTooShort
        If ``n <= 2q + 2``.
    """
    if int(q) != q or q < 0:
        raise ValueError(f"q must be a non-negative integer, got {q!r}")
    q = int(q)
    if not isinstance(series, TimeSeries):
        series = make_series(series)
    x = series.values
    n = x.shape[0]
    if n <= 2 * q + 2:
        raise SeriesTooShort(2 * q + 2, n)
    m = q if offset is None else int(offset)
    if m < q:
        raise ValueError(f"offset {m} smaller than order {q}")
    if n - m <= q + 1:
        raise SeriesTooShort(m + q + 2, n)
    y, D = _ar_design(x, q, m)
    coef, _ = solve_lambda(D, y)
    fitted = D @ coef
    residuals = y - fitted
    n_eff = y.shape[0]
    rss = float(residuals @ residuals)
    sigma2 = rss / n_eff
    var_df = rss / (n_eff - q - 1)
    aic = -math.inf if var_df <= 0.0 else n_eff * math.log(var_df) + 2.0 * (q + 1)
    return ArModel(
        order=q,
        intercept=float(coef[0]),
        coefficients=coef[1:].copy(),
        sigma2=sigma2,
        aic=aic,
        t0=m + 1,
        fitted=fitted,
        residuals=residuals,
    )


def select_ar_order(series, q_max: int) -> ArModel:
    """Minimum-AIC AR order over ``q = 1..q_max``.

    All candidates are fit on the common sample ``t = q_max+1..n`` so
    their criteria are comparable; ties go to the smaller order.

    Parameters
    ----------
    series : TimeSeries or array-like
    q_max : int
        Largest order considered, at least 1.

    Returns
    -------
    ArModel
        The winning fit (on the common sample).
    """
    if int(q_max) != q_max or q_max < 1:
        raise ValueError(f"q_max must be a positive integer, got {q_max!r}")
    q_max = int(q_max)
    if not isinstance(series, TimeSeries):
        series = make_series(series)
    best = None
    for q in range(1, q_max + 1):
        model = fit_ar_ls(series, q, offset=q_max)
        if best is None or model.aic < best.aic:
            best = model
    return best


def forecast_ar(model: ArModel, series, horizon: int) -> ForecastResult:
    """Iterated linear prediction from the end of the series.

    Parameters
    ----------
    model : ArModel
    series : TimeSeries or array-like
        Observations the model refers to; forecasts start after the
        last one.
    horizon : int

    Returns
    -------
    ForecastResult
        Linear forecasts never clamp, so all flags are False.
    """
    horizon = _check_horizon(horizon)
    if not isinstance(series, TimeSeries):
        series = make_series(series)
    q = model.order
    x = np.concatenate([series.values, np.empty(horizon)])
    n = series.n
    for j in range(horizon):
        t = n + j
        lags = x[t - q : t][::-1] if q else np.empty(0)
        x[t] = model.intercept + float(model.coefficients @ lags)
    return ForecastResult(
        points=x[n:].copy(),
        clamped=np.zeros(horizon, dtype=bool),
        method="ar",
    )


class LinearAR(BaseEstimator):
    """AIC-selected linear AR baseline with the same API as the FCAR fit.

    Parameters
    ----------
    q_max : int, default=8
        Largest candidate order.

    Attributes
    ----------
    model_ : ArModel
    order_ : int
    intercept_ : float
    coef_ : ndarray of shape (order_,)
    sigma2_ : float
    aic_ : float
    fitted_ : ndarray
    residuals_ : ndarray
    """

    def __init__(self, q_max: int = 8):
        self.q_max = q_max

    def fit(self, y, timestamps=None):
        """Select the order and fit on a univariate series."""
        series = y if isinstance(y, TimeSeries) else make_series(y, timestamps)
        model = select_ar_order(series, self.q_max)
        self.series_ = series
        self.model_ = model
        self.order_ = model.order
        self.intercept_ = model.intercept
        self.coef_ = model.coefficients
        self.sigma2_ = model.sigma2
        self.aic_ = model.aic
        self.fitted_ = model.fitted
        self.residuals_ = model.residuals
        return self

    @property
    def mse_(self) -> float:
        """Mean squared in-sample residual."""
        check_is_fitted(self, "model_")
        r = self.residuals_
        return float(np.mean(r * r))

    def predict(self, horizon: int = 10) -> ForecastResult:
        """Iterated linear forecast from the end of the fitted series."""
        check_is_fitted(self, "model_")
        return forecast_ar(self.model_, self.series_, horizon)
