"""Two-stage estimator for functional-coefficient autoregressions.

The model is ``X_t = sum_a m_a(U_t) X_{t-a} + noise`` with ``U_t = X_{t-d}``.
Stage one fits all coefficient functions jointly by indicator-spline least
squares; stage two re-estimates each one with a local-linear kernel
smoother applied to a pseudo-response from which the other lags' pilot
fits have been removed.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import DegenerateDelay, GammaOutOfRange
from .kernel import local_linear, rot_bandwidth
from .series import TimeSeries, delay_range, lag_frame, make_series
from .spline import (
    SplinePrefit,
    basis_matrix,
    build_knots,
    knot_count,
    pre_estimates,
    pseudo_responses,
    solve_lambda_cells,
)

__all__ = ["SBLLForecaster", "oracle_coefficients"]


class SBLLForecaster(BaseEstimator):
    """Spline-backfitted local-linear forecaster for FCAR models.

    Parameters
    ----------
    p : int, default=2
        Autoregressive order.
    d : int, default=1
        Delay lag of the smoothing variable ``U_t = X_{t-d}``.
    h : float, optional
        Kernel bandwidth for the local-linear stage. Defaults to the
        rule of thumb ``2.5 * sd(U) * n_eff^(-1/5)``.
    n_knots : int, optional
        Interior knot count for the spline stage. Defaults to
        ``min(floor(n^(1/4) ln n), floor(n / 2p) - 1)``.

    Attributes
    ----------
    series_ : TimeSeries
        The fitted observations.
    frame_ : RegressionFrame
        Lagged design extracted from the series.
    support_ : tuple of float
        Empirical delay support ``(a, b)``; evaluation clamps to it.
    n_knots_ : int
        Interior knot count actually used.
    prefit_ : SplinePrefit
        Stage-one constant-spline fit of all coefficient functions.
    pseudo_ : ndarray of shape (n_eff, p)
        Per-lag pseudo-responses feeding the local-linear stage.
    bandwidth_ : float
        Bandwidth actually used by the local-linear stage.
    fitted_ : ndarray of shape (n_eff,)
        In-sample one-step fits (computed on first access).
    residuals_ : ndarray of shape (n_eff,)
        ``response - fitted_`` (computed on first access).

    Examples
    --------
    >>> import numpy as np
    >>> rng = np.random.default_rng(0)
    >>> x = np.zeros(300)
    >>> for t in range(1, 300):
    ...     x[t] = 0.6 * x[t - 1] + 0.1 * rng.standard_normal()
    >>> est = SBLLForecaster(p=1, d=1).fit(x[1:])
    >>> est.predict(horizon=3).points.shape
    (3,)
    """

    def __init__(self, p: int = 2, d: int = 1, h: float | None = None,
                 n_knots: int | None = None):
        self.p = p
        self.d = d
        self.h = h
        self.n_knots = n_knots

    def fit(self, y, timestamps=None):
        """Fit both stages on a univariate series.

        Parameters
        ----------
        y : array-like of shape (n,) or TimeSeries
            Observations in time order.
        timestamps : array-like, optional
            Strictly increasing labels (ignored when ``y`` is already a
            :class:`TimeSeries`).

        Returns
        -------
        self

        Raises
        ------
        SeriesTooShort
            If ``n <= max(p, d) + p``.
        DegenerateDelay
            If every delay value coincides.
        """
        if self.h is not None and not self.h > 0.0:
            raise ValueError(f"bandwidth must be positive, got {self.h!r}")
        if self.n_knots is not None and (int(self.n_knots) != self.n_knots or self.n_knots < 0):
            raise ValueError(f"n_knots must be a non-negative integer, got {self.n_knots!r}")

        series = y if isinstance(y, TimeSeries) else make_series(y, timestamps)
        frame = lag_frame(series, self.p, self.d)
        a, b = delay_range(frame)
        if frame.degenerate_delay:
            raise DegenerateDelay("delay variable is constant; nothing to smooth over")

        n_knots = int(self.n_knots) if self.n_knots is not None else knot_count(series.n, frame.p)
        knots = build_knots(a, b, n_knots)
        B = basis_matrix(frame.delay, knots)
        coef, ridged = solve_lambda_cells(B, frame.regressors, frame.response)
        pre = pre_estimates(B, coef, frame.p)

        self.series_ = series
        self.frame_ = frame
        self.support_ = (a, b)
        self.n_knots_ = n_knots
        self.prefit_ = SplinePrefit(knots=knots, coef=coef.reshape(frame.p, n_knots + 1),
                                    ridged=ridged)
        self.pseudo_ = pseudo_responses(frame, pre)
        self.bandwidth_ = float(self.h) if self.h is not None else rot_bandwidth(frame.delay)
        self._min_rows = max(5, frame.p + 2)
        self._sample_eval = None
        return self

    # ------------------------------------------------------------------
    # coefficient evaluation

    def coefficient(self, gamma: int, u, clamp: bool = True):
        """Evaluate one backfitted coefficient function.

        Parameters
        ----------
        gamma : int
            Lag index, 1-based.
        u : array-like of shape (m,)
            Evaluation points; values outside the delay support are
            clamped to its endpoints when ``clamp`` is true.
        clamp : bool
            Disable to get an ``OutOfSupport``-style :class:`NoSupport`
            failure instead of clamping.

        Returns
        -------
        values : ndarray of shape (m,)
        status : ndarray of shape (m,)
            Per-point fallback codes from :func:`fcar.kernel.local_linear`.
        """
        check_is_fitted(self, "frame_")
        if not 1 <= gamma <= self.frame_.p:
            raise GammaOutOfRange(gamma, self.frame_.p)
        u = np.atleast_1d(np.asarray(u, dtype=float))
        if clamp:
            u = np.clip(u, *self.support_)
        return local_linear(
            u,
            self.frame_.regressors[:, gamma - 1],
            self.frame_.delay,
            self.pseudo_[:, gamma - 1],
            self.bandwidth_,
            self._min_rows,
        )

    def evaluate(self, u):
        """Evaluate all coefficient functions at once.

        Parameters
        ----------
        u : array-like of shape (m,)

        Returns
        -------
        values : ndarray of shape (m, p)
        status : ndarray of shape (m, p)
            Fallback codes per point and lag.
        clamped : ndarray of bool, shape (m,)
            True where the input point lay outside the delay support and
            was moved to the boundary.
        """
        check_is_fitted(self, "frame_")
        u = np.atleast_1d(np.asarray(u, dtype=float))
        a, b = self.support_
        clamped = (u < a) | (u > b)
        uc = np.clip(u, a, b)
        p = self.frame_.p
        values = np.empty((u.shape[0], p))
        status = np.empty((u.shape[0], p), dtype=np.int8)
        for gamma in range(1, p + 1):
            values[:, gamma - 1], status[:, gamma - 1] = self.coefficient(gamma, uc, clamp=False)
        return values, status, clamped

    def coefficients(self, u) -> np.ndarray:
        """Coefficient matrix at ``u``; shorthand for ``evaluate(u)[0]``."""
        return self.evaluate(u)[0]

    # ------------------------------------------------------------------
    # in-sample fit

    def _evaluate_at_sample(self):
        if self._sample_eval is None:
            values, status, _ = self.evaluate(self.frame_.delay)
            self._sample_eval = (values, status)
        return self._sample_eval

    @property
    def coefficients_at_sample_(self) -> np.ndarray:
        """Backfitted coefficient functions at the sample delay values."""
        return self._evaluate_at_sample()[0]

    @property
    def fitted_(self) -> np.ndarray:
        """In-sample one-step-ahead fitted values."""
        values = self._evaluate_at_sample()[0]
        return np.sum(values * self.frame_.regressors, axis=1)

    @property
    def residuals_(self) -> np.ndarray:
        """In-sample residuals ``response - fitted_``."""
        return self.frame_.response - self.fitted_

    @property
    def mse_(self) -> float:
        """Mean squared in-sample residual."""
        r = self.residuals_
        return float(np.mean(r * r))

    # ------------------------------------------------------------------
    # forecasting

    def predict(self, horizon: int = 10, method: str = "naive",
                n_paths: int = 500, seed: int = 0):
        """Multi-step forecast from the end of the fitted series.

        Parameters
        ----------
        horizon : int
            Number of steps ahead.
        method : {"naive", "bootstrap", "multistage"}
            Plug-in iteration, residual-bootstrap path averaging, or
            refit-per-step iteration.
        n_paths : int
            Bootstrap path count (bootstrap method only).
        seed : int
            Bootstrap seed (bootstrap method only).

        Returns
        -------
        ForecastResult
        """
        check_is_fitted(self, "frame_")
        from . import forecast

        if method == "naive":
            return forecast.forecast_naive(self, horizon)
        if method == "bootstrap":
            return forecast.forecast_bootstrap(self, horizon, n_paths=n_paths, seed=seed)
        if method == "multistage":
            return forecast.forecast_multistage(
                self.series_, self.p, self.d, horizon, h=self.h, n_knots=self.n_knots
            )
        raise ValueError(f"unknown forecast method {method!r}")


def oracle_coefficients(frame, true_fns, gamma: int, h: float, u_eval=None):
    """Local-linear fit of one coefficient with the other lags known.

    The pseudo-response subtracts the *true* contributions of every other
    lag, so the smoother sees exactly what it would in the one-shot
    benchmark that knows all remaining coefficient functions. Everything
    else (kernel, bandwidth, fallbacks) matches the backfitted stage.

    Parameters
    ----------
    frame : RegressionFrame
    true_fns : sequence of callables
        ``true_fns[alpha - 1]`` maps delay values to the true coefficient
        of lag ``alpha``; must accept ndarray input.
    gamma : int
        Lag index to estimate, 1-based.
    h : float
        Bandwidth, shared with the estimator under comparison.
    u_eval : array-like, optional
        Evaluation points; defaults to the sample delay values.

    Returns
    -------
    values : ndarray of shape (m,)
    status : ndarray of shape (m,)
    """
    p = frame.p
    if not 1 <= gamma <= p:
        raise GammaOutOfRange(gamma, p)
    if len(true_fns) != p:
        raise ValueError(f"need {p} coefficient functions, got {len(true_fns)}")
    y = frame.response.copy()
    for alpha in range(1, p + 1):
        if alpha == gamma:
            continue
        y -= np.asarray(true_fns[alpha - 1](frame.delay)) * frame.regressors[:, alpha - 1]
    u = frame.delay if u_eval is None else np.asarray(u_eval, dtype=float)
    return local_linear(u, frame.regressors[:, gamma - 1], frame.delay, y, h, max(5, p + 2))
