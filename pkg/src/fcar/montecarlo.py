"""Seeded Monte Carlo harness comparing forecast methods per grid cell.

A cell is one (process kind, series length, order) combination. Each
replication simulates ``n + horizon`` values, fits the backfitted
estimator on the first ``n``, forecasts the rest with every requested
method, and scores coefficient recovery against the oracle smoother.
Replication ``i`` derives its seed as ``base + i * 2654435761 (mod 2^64)``
so results are independent of scheduling and worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimator import SBLLForecaster, oracle_coefficients
from .forecast import forecast_multistage
from .metrics import efficiency, rmpe
from .simulate import default_spec, simulate

__all__ = ["MonteCarloReport", "replication_seed", "run_cell", "FORECAST_METHODS"]

FORECAST_METHODS = ("naive", "bootstrap", "multistage")

#: Knuth's multiplicative-hash constant; spaces replication seeds apart.
SEED_STRIDE = 2654435761


def replication_seed(base_seed: int, i: int) -> int:
    """Seed of replication ``i`` under base seed ``base_seed``."""
    return (int(base_seed) + i * SEED_STRIDE) % (1 << 64)


@dataclass(frozen=True)
class MonteCarloReport:
    """Aggregated results of one grid cell.

    Attributes
    ----------
    kind : str
        Process kind ("sine", "expar" or "setar").
    n, p : int
        Series length and order of the cell.
    reps : int
    horizon : int
    base_seed : int
    methods : tuple of str
    rmpe : dict
        Method name -> vector of shape (horizon,).
    efficiency : dict
        Lag index gamma -> vector of shape (reps,), one oracle
        efficiency per replication.
    """

    kind: str
    n: int
    p: int
    reps: int
    horizon: int
    base_seed: int
    methods: tuple
    rmpe: dict
    efficiency: dict


def _run_replication(args):
    kind, n, p, horizon, methods, n_paths, seed = args
    sim = simulate(default_spec(kind, p), n + horizon, seed)
    values = sim.series.values
    train, actuals = values[:n], values[n:]

    est = SBLLForecaster(p=sim.spec.p, d=sim.spec.d).fit(train)
    forecasts = {}
    for method in methods:
        if method == "multistage":
            result = forecast_multistage(est.series_, est.p, est.d, horizon)
        else:
            result = est.predict(horizon=horizon, method=method,
                                 n_paths=n_paths, seed=seed)
        forecasts[method] = result.points

    frame = est.frame_
    sbll_vals = est.coefficients_at_sample_
    eff = {}
    for gamma in range(1, p + 1):
        oracle_vals, _ = oracle_coefficients(frame, sim.true_fns, gamma, est.bandwidth_)
        truth = np.asarray(sim.true_fns[gamma - 1](frame.delay))
        eff[gamma] = efficiency(oracle_vals, sbll_vals[:, gamma - 1], truth)
    return forecasts, actuals, eff


def run_cell(kind: str, n: int, p: int, reps: int, methods=FORECAST_METHODS,
             horizon: int = 10, n_paths: int = 500, base_seed: int = 0,
             workers: int = 1) -> MonteCarloReport:
    """Run all replications of one cell and aggregate.

    Parameters
    ----------
    kind : {"sine", "expar", "setar"}
    n : int
        Training length; each replication simulates ``n + horizon``.
    p : int
        Order (must have stock parameters: 4 or 10).
    reps : int
        Number of replications, at least 1.
    methods : sequence of str
        Subset of ``FORECAST_METHODS``.
    horizon : int
        Forecast steps per replication.
    n_paths : int
        Bootstrap path count.
    base_seed : int
    workers : int
        Process count; results are identical for any value.

    Returns
    -------
    MonteCarloReport

    Raises
    ------
    NonFiniteState
        If any replication's simulation diverges (carries its seed).
    """
    if int(reps) != reps or reps < 1:
        raise ValueError(f"reps must be a positive integer, got {reps!r}")
    methods = tuple(methods)
    unknown = set(methods) - set(FORECAST_METHODS)
    if unknown:
        raise ValueError(f"unknown forecast methods {sorted(unknown)}")
    tasks = [
        (kind, n, p, horizon, methods, n_paths, replication_seed(base_seed, i))
        for i in range(int(reps))
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_replication, tasks))
    else:
        results = [_run_replication(t) for t in tasks]

    forecast_mat = {
        m: np.vstack([res[0][m] for res in results]) for m in methods
    }
    actual_mat = np.vstack([res[1] for res in results])
    rmpe_by_method = {m: rmpe(forecast_mat[m], actual_mat) for m in methods}
    eff_by_gamma = {
        gamma: np.array([res[2][gamma] for res in results])
        for gamma in range(1, p + 1)
    }
    return MonteCarloReport(
        kind=kind,
        n=int(n),
        p=int(p),
        reps=int(reps),
        horizon=int(horizon),
        base_seed=int(base_seed),
        methods=methods,
        rmpe=rmpe_by_method,
        efficiency=eff_by_gamma,
    )
