"""Functional-coefficient autoregression toolkit.

Fit FCAR models ``X_t = sum_a m_a(X_{t-d}) X_{t-a} + noise`` by
spline-backfitted local-linear smoothing, forecast them several steps
ahead (plug-in, residual bootstrap, or refit-per-step), benchmark against
a linear AR baseline, and run seeded Monte Carlo comparisons.
"""

from .baseline import ArModel, LinearAR, fit_ar_ls, forecast_ar, select_ar_order
from .errors import FcarError
from .estimator import SBLLForecaster, oracle_coefficients
from .forecast import (
    ForecastResult,
    forecast_bootstrap,
    forecast_multistage,
    forecast_naive,
)
from .io import load_irradiance_csv, load_series_csv
from .kernel import kernel_moments, local_linear, quartic_kernel, rot_bandwidth
from .metrics import efficiency, kde, rmpe, rspe
from .montecarlo import MonteCarloReport, replication_seed, run_cell
from .series import RegressionFrame, TimeSeries, delay_range, lag_frame, make_series
from .simulate import (
    DgpSpec,
    SimulatedSeries,
    default_spec,
    sigma_het,
    simulate,
    simulate_expar,
    simulate_setar,
    simulate_sine,
)
from .spline import basis_matrix, build_knots, knot_count

__version__ = "0.1.0"

__all__ = [
    "ArModel",
    "DgpSpec",
    "FcarError",
    "ForecastResult",
    "LinearAR",
    "MonteCarloReport",
    "RegressionFrame",
    "SBLLForecaster",
    "SimulatedSeries",
    "TimeSeries",
    "basis_matrix",
    "build_knots",
    "default_spec",
    "delay_range",
    "efficiency",
    "fit_ar_ls",
    "forecast_ar",
    "forecast_bootstrap",
    "forecast_multistage",
    "forecast_naive",
    "kde",
    "kernel_moments",
    "knot_count",
    "lag_frame",
    "load_irradiance_csv",
    "load_series_csv",
    "local_linear",
    "make_series",
    "oracle_coefficients",
    "quartic_kernel",
    "replication_seed",
    "rmpe",
    "rot_bandwidth",
    "rspe",
    "run_cell",
    "select_ar_order",
    "sigma_het",
    "simulate",
    "simulate_expar",
    "simulate_setar",
    "simulate_sine",
    "__version__",
]
