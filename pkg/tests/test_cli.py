"""End-to-end tests of the command-line interface."""

import csv
from pathlib import Path

import pytest

from fcar.cli import build_parser, main, resolve_config
from fcar.errors import FcarError
from fcar.io import write_csv

DATA = Path(__file__).resolve().parent.parent / "data" / "cloudy_day.csv"


def _resolve(argv):
    return resolve_config(build_parser().parse_args(argv))


def _read(path):
    with Path(path).open(newline="") as handle:
        rows = list(csv.reader(handle))
    return rows[0], rows[1:]


# ------------------------------------------------------------ configuration


def test_defaults_fill_unset_options(tmp_path):
    cfg = _resolve(["forecast", "--input", "in.csv", "--method", "naive",
                    "--out", str(tmp_path)])
    assert cfg.command == "forecast"
    assert cfg.p == 2 and cfg.d == 5
    assert cfg.M == 10 and cfg.B == 500 and cfg.seed == 0
    assert cfg.method == ["naive"]
    assert cfg.h is None and cfg.n_knots is None


def test_missing_required_option_is_an_error():
    with pytest.raises(ValueError, match="--out"):
        _resolve(["simulate", "--dgp", "sine"])


def test_config_file_supplies_options_and_flags_win(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("dgp = sine\nreps = 7\nseed = 3\nout = from_file\n")
    cfg = _resolve(["simulate", "--config", str(cfg_file), "--seed", "9"])
    assert cfg.dgp == "sine"
    assert cfg.reps == 7  # from the file
    assert cfg.seed == 9  # flag overrides the file
    assert cfg.out == Path("from_file")


def test_unparseable_option_value():
    with pytest.raises(ValueError, match="bad value for --reps"):
        _resolve(["simulate", "--dgp", "sine", "--reps", "many", "--out", "o"])


@pytest.mark.parametrize("argv, match", [
    (["simulate", "--dgp", "weird", "--out", "o"], "--dgp"),
    (["simulate", "--dgp", "sine", "--reps", "0", "--out", "o"], "reps"),
    (["simulate", "--dgp", "sine", "--methods", "naive,typo", "--out", "o"],
     "unknown methods"),
    (["simulate", "--dgp", "sine", "--n", "8", "--p", "4", "--out", "o"],
     "too short"),
    (["forecast", "--input", "i", "--method", "typo", "--out", "o"],
     "unknown methods"),
    (["replicate", "--example", "9", "--out", "o"], "--example"),
    (["forecast", "--input", "i", "--method", "naive", "--M", "0", "--out", "o"],
     "M must be"),
])
def test_validation_rejects_bad_combinations(argv, match):
    with pytest.raises(ValueError, match=match):
        _resolve(argv)


# ----------------------------------------------------------------- simulate


def test_simulate_writes_grid_outputs(tmp_path):
    rc = main(["simulate", "--dgp", "sine", "--n", "60", "--p", "4",
               "--reps", "2", "--methods", "naive", "--M", "2", "--B", "10",
               "--out", str(tmp_path)])
    assert rc == 0
    header, rows = _read(tmp_path / "rmpe.csv")
    assert header == ["dgp", "n", "p", "method", "M", "rmpe"]
    assert len(rows) == 2  # one cell, one method, two horizons
    assert rows[0][:5] == ["sine", "60", "4", "naive", "1"]
    header, rows = _read(tmp_path / "efficiency.csv")
    assert header == ["dgp", "n", "p", "gamma", "rep", "eff"]
    assert len(rows) == 8  # four lags, two replications
    assert (tmp_path / "rmpe_sine_n60_p4.svg").exists()
    assert (tmp_path / "efficiency_density_sine_p4_gamma4.svg").exists()


def test_simulate_reruns_byte_identically(tmp_path):
    argv = ["simulate", "--dgp", "setar", "--n", "60", "--p", "4", "--reps", "2",
            "--methods", "naive,bootstrap", "--M", "2", "--B", "10"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    for name in ("rmpe.csv", "efficiency.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_simulate_counts_failed_cells(tmp_path, monkeypatch):
    def boom(*args, **kwargs):
        raise FcarError("cell exploded")
    monkeypatch.setattr("fcar.cli.run_cell", boom)
    rc = main(["simulate", "--dgp", "sine", "--n", "60", "--p", "4",
               "--reps", "1", "--out", str(tmp_path)])
    assert rc == 1
    header, rows = _read(tmp_path / "rmpe.csv")  # header still written
    assert rows == []


# ---------------------------------------------------------------------- fit


def test_fit_writes_tables_and_chart(tmp_path, capsys):
    rc = main(["fit", "--input", str(DATA), "--p", "2", "--d", "5",
               "--out", str(tmp_path)])
    assert rc == 0
    header, rows = _read(tmp_path / "fit.csv")
    assert header == ["t", "observed", "fcar_fitted", "ar_fitted"]
    assert len(rows) == 288
    assert rows[0][0] == "1"
    assert rows[0][2] == ""  # before the first fittable index
    assert rows[-1][2] != ""
    header, rows = _read(tmp_path / "fit_summary.csv")
    assert header == ["model", "mse", "order", "delay", "bandwidth", "n_knots", "aic"]
    assert [r[0] for r in rows] == ["fcar", "ar"]
    assert float(rows[0][1]) > 0.0
    assert (tmp_path / "fit.svg").exists()
    out = capsys.readouterr().out
    assert "fcar(p=2, d=5) in-sample mse" in out
    assert "in-sample mse" in out.splitlines()[1]


def test_fit_honours_timestamp_window(tmp_path):
    rc = main(["fit", "--input", str(DATA), "--p", "2", "--d", "5",
               "--window", "08:00,16:00", "--out", str(tmp_path)])
    assert rc == 0
    _, rows = _read(tmp_path / "fit.csv")
    assert len(rows) == 97  # 5-minute stamps, both endpoints included


# ----------------------------------------------------------------- forecast


def test_forecast_writes_points_for_each_method(tmp_path, capsys):
    rc = main(["forecast", "--input", str(DATA), "--method", "naive,ar",
               "--M", "3", "--out", str(tmp_path)])
    assert rc == 0
    header, rows = _read(tmp_path / "forecast.csv")
    assert header == ["M", "point", "clamped", "method"]
    assert len(rows) == 6
    assert [r[3] for r in rows] == ["naive"] * 3 + ["ar"] * 3
    assert [r[0] for r in rows[:3]] == ["1", "2", "3"]
    assert all(r[2] in ("true", "false") for r in rows)
    assert (tmp_path / "forecast.svg").exists()
    out = capsys.readouterr().out
    assert out.startswith("naive:")
    assert "ar:" in out


def test_forecast_scores_against_actuals(tmp_path):
    actuals = tmp_path / "actuals.csv"
    write_csv(actuals, ["value"], [[0.8], [0.75], [0.9], [0.85]])
    rc = main(["forecast", "--input", str(DATA), "--method", "naive,ar",
               "--M", "3", "--actuals", str(actuals), "--out", str(tmp_path)])
    assert rc == 0
    header, rows = _read(tmp_path / "rspe.csv")
    assert header == ["M", "naive", "ar", "best"]
    assert len(rows) == 3
    for row in rows:
        assert row[3] in ("naive", "ar")
        assert min(float(row[1]), float(row[2])) == float(row[1 + ["naive", "ar"].index(row[3])])


def test_forecast_rejects_short_actuals(tmp_path, capsys):
    actuals = tmp_path / "actuals.csv"
    write_csv(actuals, ["value"], [[0.8]])
    rc = main(["forecast", "--input", str(DATA), "--method", "naive",
               "--M", "3", "--actuals", str(actuals), "--out", str(tmp_path)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_bootstrap_forecast_reruns_byte_identically(tmp_path):
    argv = ["forecast", "--input", str(DATA), "--method", "bootstrap",
            "--M", "2", "--B", "8", "--seed", "4"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert (a / "forecast.csv").read_bytes() == (b / "forecast.csv").read_bytes()


# ------------------------------------------------------------- failure paths


@pytest.mark.parametrize("argv", [
    ["fit", "--input", "no_such_file.csv", "--p", "2", "--d", "5", "--out", "o"],
    ["simulate", "--dgp", "weird", "--out", "o"],
    ["replicate", "--example", "9", "--out", "o"],
    ["forecast", "--input", "no_such_file.csv", "--method", "naive", "--out", "o"],
])
def test_errors_exit_with_code_two(argv, tmp_path, capsys):
    rc = main([arg if arg != "o" else str(tmp_path) for arg in argv])
    assert rc == 2
    assert capsys.readouterr().err.splitlines()[-1].startswith("error:")


def test_bad_config_file_exits_with_code_two(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("this line has no equals sign\n")
    rc = main(["simulate", "--config", str(bad), "--out", str(tmp_path)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err
