"""Command-line interface: simulate, fit, forecast, replicate.

Options can also come from a flat ``key=value`` file passed with
``--config``; explicit flags override file entries. Every command that
takes a seed is bit-reproducible: the same invocation writes identical
CSV bytes regardless of run or worker count.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baseline import LinearAR
from .errors import FcarError, ShapeMismatch
from .estimator import SBLLForecaster
from .forecast import forecast_multistage
from .io import load_irradiance_csv, parse_config, write_csv
from .metrics import kde, rspe, silverman_bandwidth
from .montecarlo import FORECAST_METHODS, run_cell
from .svgplot import emit_svg_lines

__all__ = ["main", "RunConfig", "cmd_simulate", "cmd_fit", "cmd_forecast", "cmd_replicate"]

logger = logging.getLogger(__name__)

DGP_KINDS = ("sine", "expar", "setar")
EXAMPLE_KINDS = {1: "sine", 2: "expar", 3: "setar"}
GRID_N = (75, 150, 250, 500)
GRID_P = (4, 10)


# ----------------------------------------------------------------------
# configuration plumbing

def _int_list(text: str) -> list[int]:
    return [int(part) for part in str(text).split(",") if part.strip() != ""]


def _str_list(text: str) -> list[str]:
    return [part.strip() for part in str(text).split(",") if part.strip() != ""]


def _window(text: str) -> tuple[str, str]:
    parts = str(text).split(",")
    if len(parts) != 2:
        raise ValueError(f"window must be START,END, got {text!r}")
    return parts[0].strip(), parts[1].strip()


@dataclass(frozen=True)
class RunConfig:
    """One resolved command invocation: name plus merged option values."""

    command: str
    options: dict

    def __getattr__(self, name):
        try:
            return self.options[name]
        except KeyError:
            raise AttributeError(name) from None


# Per-command option tables: flag, converter, default (REQUIRED marks
# options that must come from the flag or the config file).
_REQUIRED = object()

_COMMON_MODEL = [
    ("h", float, None, "kernel bandwidth override"),
    ("n-knots", int, None, "interior knot count override"),
]

_OPTIONS = {
    "simulate": [
        ("dgp", str, _REQUIRED, f"process kind: {', '.join(DGP_KINDS)}"),
        ("n", _int_list, list(GRID_N), "comma list of series lengths"),
        ("p", _int_list, list(GRID_P), "comma list of orders"),
        ("reps", int, 100, "replications per cell"),
        ("methods", _str_list, list(FORECAST_METHODS), "comma list of forecast methods"),
        ("M", int, 10, "forecast horizon"),
        ("B", int, 500, "bootstrap path count"),
        ("seed", int, 0, "base seed"),
        ("workers", int, 1, "process count for replications"),
        ("out", Path, _REQUIRED, "output directory"),
    ],
    "fit": [
        ("input", Path, _REQUIRED, "input CSV (value, index, or measured/clearsky)"),
        ("p", int, _REQUIRED, "autoregressive order"),
        ("d", int, _REQUIRED, "delay lag"),
        *_COMMON_MODEL,
        ("qmax", int, 8, "largest AR baseline order"),
        ("window", _window, None, "timestamp window START,END"),
        ("out", Path, _REQUIRED, "output directory"),
    ],
    "forecast": [
        ("input", Path, _REQUIRED, "input CSV"),
        ("method", _str_list, _REQUIRED,
         "comma list from naive, bootstrap, multistage, ar"),
        ("M", int, 10, "forecast horizon"),
        ("B", int, 500, "bootstrap path count"),
        ("actuals", Path, None, "CSV of realized future values for RSPE"),
        ("seed", int, 0, "bootstrap seed"),
        ("p", int, 2, "autoregressive order"),
        ("d", int, 5, "delay lag"),
        *_COMMON_MODEL,
        ("qmax", int, 8, "largest AR baseline order"),
        ("window", _window, None, "timestamp window START,END"),
        ("out", Path, _REQUIRED, "output directory"),
    ],
    "replicate": [
        ("example", int, _REQUIRED, "1 (sine), 2 (expar) or 3 (setar)"),
        ("reps", int, 100, "replications per cell"),
        ("M", int, 10, "forecast horizon"),
        ("B", int, 500, "bootstrap path count"),
        ("seed", int, 0, "base seed"),
        ("workers", int, 1, "process count for replications"),
        ("out", Path, _REQUIRED, "output directory"),
    ],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcar",
        description="Functional-coefficient autoregression: fit, forecast, simulate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, table in _OPTIONS.items():
        cmd_parser = sub.add_parser(command)
        cmd_parser.add_argument("--config", type=Path, default=None,
                                help="flat key=value option file; flags override it")
        for flag, _conv, _default, help_text in table:
            cmd_parser.add_argument(f"--{flag}", type=str, default=None,
                                    dest=flag.replace("-", "_"), help=help_text)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge flags over config-file entries over defaults."""
    file_opts = parse_config(args.config) if args.config is not None else {}
    options = {}
    for flag, conv, default, _help in _OPTIONS[args.command]:
        dest = flag.replace("-", "_")
        raw = getattr(args, dest)
        if raw is None:
            raw = file_opts.get(flag, file_opts.get(dest))
        if raw is None:
            if default is _REQUIRED:
                raise ValueError(f"missing required option --{flag}")
            options[dest] = default
        else:
            try:
                options[dest] = conv(raw)
            except (TypeError, ValueError) as exc:
                raise ValueError(f"bad value for --{flag}: {exc}") from exc
    cfg = RunConfig(command=args.command, options=options)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    opts = cfg.options
    if "reps" in opts and opts["reps"] < 1:
        raise ValueError("reps must be at least 1")
    if "M" in opts and opts["M"] < 1:
        raise ValueError("M must be at least 1")
    if "B" in opts and opts["B"] < 1:
        raise ValueError("B must be at least 1")
    if "workers" in opts and opts["workers"] < 1:
        raise ValueError("workers must be at least 1")
    if cfg.command == "simulate":
        if opts["dgp"] not in DGP_KINDS:
            raise ValueError(f"--dgp must be one of {DGP_KINDS}, got {opts['dgp']!r}")
        bad = set(opts["methods"]) - set(FORECAST_METHODS)
        if bad:
            raise ValueError(f"unknown methods {sorted(bad)}")
        for n in opts["n"]:
            for p in opts["p"]:
                if n <= 2 * p:
                    raise ValueError(f"series length {n} too short for p={p} (need n > 2p)")
    if cfg.command == "forecast":
        bad = set(opts["method"]) - set(FORECAST_METHODS) - {"ar"}
        if bad:
            raise ValueError(f"unknown methods {sorted(bad)}")
    if cfg.command == "replicate" and opts["example"] not in EXAMPLE_KINDS:
        raise ValueError("--example must be 1, 2, or 3")


# ----------------------------------------------------------------------
# shared grid driver (simulate and replicate)

def _density_gamma(kind: str, p: int) -> int:
    """Lag whose efficiency density gets plotted for a given process."""
    return min(3, p) if kind == "setar" else p


def _run_grid(kind, ns, ps, reps, methods, horizon, n_paths, seed, workers, out) -> int:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    rmpe_rows = []
    eff_rows = []
    reports = {}
    failures = 0
    for n in ns:
        for p in ps:
            try:
                report = run_cell(kind, n, p, reps, methods=methods, horizon=horizon,
                                  n_paths=n_paths, base_seed=seed, workers=workers)
            except FcarError as exc:
                failures += 1
                logger.error("cell %s n=%d p=%d failed: %s", kind, n, p, exc)
                continue
            reports[(n, p)] = report
            for method in methods:
                for step in range(1, horizon + 1):
                    rmpe_rows.append((kind, n, p, method, step,
                                      report.rmpe[method][step - 1]))
            for gamma in range(1, p + 1):
                for i, value in enumerate(report.efficiency[gamma]):
                    eff_rows.append((kind, n, p, gamma, i, value))
            emit_svg_lines(
                [(method, np.arange(1, horizon + 1), report.rmpe[method])
                 for method in methods],
                out / f"rmpe_{kind}_n{n}_p{p}.svg",
                title=f"{kind} n={n} p={p}", xlabel="M", ylabel="RMPE",
            )
            logger.info("cell %s n=%d p=%d done (%d reps)", kind, n, p, reps)

    write_csv(out / "rmpe.csv", ["dgp", "n", "p", "method", "M", "rmpe"], rmpe_rows)
    write_csv(out / "efficiency.csv", ["dgp", "n", "p", "gamma", "rep", "eff"], eff_rows)

    for p in ps:
        gamma = _density_gamma(kind, p)
        curves = []
        for n in ns:
            report = reports.get((n, p))
            if report is None:
                continue
            samples = report.efficiency[gamma]
            samples = samples[np.isfinite(samples)]
            try:
                bw = silverman_bandwidth(samples)
            except FcarError:
                continue
            grid = np.linspace(samples.min() - 4 * bw, samples.max() + 4 * bw, 256)
            curves.append((f"n={n}", grid, kde(samples, grid)))
        if curves:
            emit_svg_lines(curves, out / f"efficiency_density_{kind}_p{p}_gamma{gamma}.svg",
                           title=f"{kind} p={p}: efficiency of lag {gamma}",
                           xlabel="efficiency", ylabel="density")
    return 1 if failures else 0


def cmd_simulate(cfg: RunConfig) -> int:
    """Monte Carlo grid for one process kind; writes rmpe/efficiency CSVs."""
    return _run_grid(cfg.dgp, cfg.n, cfg.p, cfg.reps, tuple(cfg.methods),
                     cfg.M, cfg.B, cfg.seed, cfg.workers, cfg.out)


def cmd_replicate(cfg: RunConfig) -> int:
    """Full study grid (n in 75..500, p in 4,10, all methods) for one example."""
    kind = EXAMPLE_KINDS[cfg.example]
    return _run_grid(kind, GRID_N, GRID_P, cfg.reps, FORECAST_METHODS,
                     cfg.M, cfg.B, cfg.seed, cfg.workers, cfg.out)


# ----------------------------------------------------------------------
# fit and forecast on a supplied series

def cmd_fit(cfg: RunConfig) -> int:
    """Fit the backfitted model and the AR baseline; write fit.csv."""
    series = load_irradiance_csv(cfg.input, window=cfg.window)
    est = SBLLForecaster(p=cfg.p, d=cfg.d, h=cfg.h, n_knots=cfg.n_knots).fit(series)
    ar = LinearAR(q_max=cfg.qmax).fit(series)

    n = series.n
    fcar_by_t = dict(zip(range(est.frame_.t0, n + 1), est.fitted_))
    ar_by_t = dict(zip(range(ar.model_.t0, n + 1), ar.fitted_))
    rows = [
        (t, series.values[t - 1], fcar_by_t.get(t, ""), ar_by_t.get(t, ""))
        for t in range(1, n + 1)
    ]
    out = Path(cfg.out)
    write_csv(out / "fit.csv", ["t", "observed", "fcar_fitted", "ar_fitted"], rows)
    write_csv(
        out / "fit_summary.csv",
        ["model", "mse", "order", "delay", "bandwidth", "n_knots", "aic"],
        [
            ("fcar", est.mse_, cfg.p, cfg.d, est.bandwidth_, est.n_knots_, ""),
            ("ar", ar.mse_, ar.order_, "", "", "", ar.aic_),
        ],
    )
    emit_svg_lines(
        [
            ("observed", np.arange(1, n + 1), series.values),
            ("fcar fit", np.arange(est.frame_.t0, n + 1), est.fitted_),
            (f"ar({ar.order_}) fit", np.arange(ar.model_.t0, n + 1), ar.fitted_),
        ],
        out / "fit.svg",
        title=f"observed vs fitted (p={cfg.p}, d={cfg.d})", xlabel="t", ylabel="value",
    )
    print(f"fcar(p={cfg.p}, d={cfg.d}) in-sample mse {est.mse_:.6g}")
    print(f"ar({ar.order_}) in-sample mse {ar.mse_:.6g} (aic {ar.aic_:.6g})")
    return 0


def _forecast_one(method, series, cfg):
    if method == "ar":
        return LinearAR(q_max=cfg.qmax).fit(series).predict(cfg.M)
    est = SBLLForecaster(p=cfg.p, d=cfg.d, h=cfg.h, n_knots=cfg.n_knots).fit(series)
    if method == "multistage":
        return forecast_multistage(series, cfg.p, cfg.d, cfg.M, h=cfg.h,
                                   n_knots=cfg.n_knots)
    return est.predict(horizon=cfg.M, method=method, n_paths=cfg.B, seed=cfg.seed)


def cmd_forecast(cfg: RunConfig) -> int:
    """Forecast M steps with each requested method; write forecast.csv."""
    series = load_irradiance_csv(cfg.input, window=cfg.window)
    results = {method: _forecast_one(method, series, cfg) for method in cfg.method}

    out = Path(cfg.out)
    rows = [
        (step, results[method].points[step - 1], bool(results[method].clamped[step - 1]),
         method)
        for method in cfg.method
        for step in range(1, cfg.M + 1)
    ]
    write_csv(out / "forecast.csv", ["M", "point", "clamped", "method"], rows)

    curves = []
    n = series.n
    tail = min(n, 5 * cfg.M)
    curves.append(("observed", np.arange(n - tail + 1, n + 1), series.values[-tail:]))
    horizon_x = np.arange(n + 1, n + cfg.M + 1)

    if cfg.actuals is not None:
        actual_series = load_irradiance_csv(cfg.actuals)
        if actual_series.n < cfg.M:
            raise ShapeMismatch(
                f"actuals file has {actual_series.n} values, need at least {cfg.M}"
            )
        actuals = actual_series.values[: cfg.M]
        table = {method: rspe(results[method].points, actuals) for method in cfg.method}
        rspe_rows = []
        for step in range(1, cfg.M + 1):
            errors = [table[method][step - 1] for method in cfg.method]
            best = cfg.method[int(np.argmin(errors))]
            rspe_rows.append((step, *errors, best))
        write_csv(out / "rspe.csv", ["M", *cfg.method, "best"], rspe_rows)
        curves.append(("actual", horizon_x, actuals))

    for method in cfg.method:
        curves.append((method, horizon_x, results[method].points))
        flagged = " (clamped)" if results[method].clamped.any() else ""
        print(f"{method}: " +
              " ".join(f"{v:.6g}" for v in results[method].points) + flagged)
    emit_svg_lines(curves, out / "forecast.svg", title="forecasts",
                   xlabel="t", ylabel="value")
    return 0


# ----------------------------------------------------------------------

def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        handler = {
            "simulate": cmd_simulate,
            "fit": cmd_fit,
            "forecast": cmd_forecast,
            "replicate": cmd_replicate,
        }[cfg.command]
        return handler(cfg)
    except (FcarError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
