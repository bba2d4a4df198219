"""CSV ingestion and emission, plus flat key=value configuration files.

Input files are header-first CSVs carrying either a generic ``value``
column, a precomputed clear-sky ``index`` column, or raw ``measured`` and
``clearsky`` irradiance columns whose ratio forms the clear-sky index.
All emitted CSVs use LF line endings and full-precision floats so that
reruns are byte-comparable.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path

import numpy as np

from .errors import EmptyWindow, MissingColumn, ParseError
from .series import TimeSeries, make_series

__all__ = [
    "load_irradiance_csv",
    "load_series_csv",
    "write_csv",
    "format_cell",
    "parse_config",
    "parse_stamp",
]

logger = logging.getLogger(__name__)

#: Clear-sky irradiance at or below this (W/m^2) marks an unusable row.
CLEARSKY_FLOOR = 1.0


def parse_stamp(text: str):
    """Parse a timestamp cell into a comparable value.

    Numeric strings become floats; ``HH:MM`` and ``HH:MM:SS`` clock times
    become seconds since midnight; anything else is returned verbatim so
    lexicographic comparison (fine for ISO-8601) still works.
    """
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    parts = text.split(":")
    if len(parts) in (2, 3):
        try:
            nums = [float(q) for q in parts]
        except ValueError:
            return text
        return 3600.0 * nums[0] + 60.0 * nums[1] + (nums[2] if len(nums) == 3 else 0.0)
    return text


def _in_window(stamp, window) -> bool:
    lo, hi = window
    try:
        return lo <= stamp <= hi
    except TypeError:
        # Mixed types (number vs string): compare textually.
        return str(lo) <= str(stamp) <= str(hi)


def _parse_cell(row: dict, key: str, line_no: int) -> float:
    raw = row.get(key)
    if raw is None or raw.strip() == "":
        raise ParseError(line_no, f"empty {key!r} cell")
    try:
        return float(raw)
    except ValueError:
        raise ParseError(line_no, f"bad {key!r} value {raw.strip()!r}") from None


def load_irradiance_csv(path, window=None) -> TimeSeries:
    """Load a clear-sky index series from a CSV file.

    Parameters
    ----------
    path : str or Path
        CSV with a header. Recognised columns (case-insensitive):
        ``value`` (generic series), ``index`` (precomputed clear-sky
        index, passed through), or ``measured`` with ``clearsky`` (index
        computed as their ratio). An optional ``timestamp`` column
        supports windowing.
    window : tuple, optional
        ``(start, end)`` bounds compared against the parsed timestamps
        (numbers, ``HH:MM`` clock times, or plain strings).

    Returns
    -------
    TimeSeries
        Rows with clear-sky irradiance at or below 1 W/m^2 are dropped
        (the count is logged). Timestamps are attached when they are
        numeric/clock-like and strictly increasing.

    Raises
    ------
    MissingColumn
        If no usable value column is present, or ``window`` was given
        without a timestamp column.
    ParseError
        On an unreadable numeric cell (reports the 1-based line).
    EmptyWindow
        If no rows survive windowing and filtering.
    """
    path = Path(path)
    with path.open(newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyWindow(f"{path} is empty") from None
        names = [h.strip().lower() for h in header]
        rows = [dict(zip(names, row)) for row in reader]

    if "value" in names:
        mode = "value"
    elif "index" in names:
        mode = "index"
    elif "measured" in names:
        if "clearsky" not in names:
            raise MissingColumn("clearsky")
        mode = "ratio"
    else:
        raise MissingColumn("value, index, or measured")

    has_stamp = "timestamp" in names
    if window is not None and not has_stamp:
        raise MissingColumn("timestamp")
    if window is not None:
        window = (parse_stamp(str(window[0])), parse_stamp(str(window[1])))

    values = []
    stamps = []
    dropped = 0
    for i, row in enumerate(rows):
        line_no = i + 2  # header is line 1
        stamp = parse_stamp(row["timestamp"]) if has_stamp else None
        if window is not None and not _in_window(stamp, window):
            continue
        if mode == "value":
            values.append(_parse_cell(row, "value", line_no))
        elif mode == "index":
            values.append(_parse_cell(row, "index", line_no))
        else:
            clearsky = _parse_cell(row, "clearsky", line_no)
            if clearsky <= CLEARSKY_FLOOR:
                dropped += 1
                continue
            values.append(_parse_cell(row, "measured", line_no) / clearsky)
        stamps.append(stamp)

    if dropped:
        logger.info("dropped %d rows with clear-sky irradiance <= %g W/m^2",
                    dropped, CLEARSKY_FLOOR)
    if not values:
        raise EmptyWindow(f"no usable rows in {path}" +
                          (" within the requested window" if window else ""))

    timestamps = None
    if has_stamp and all(isinstance(s, float) for s in stamps):
        arr = np.asarray(stamps)
        if arr.size < 2 or np.all(arr[1:] > arr[:-1]):
            timestamps = arr
    return make_series(values, timestamps)


def load_series_csv(path, window=None) -> TimeSeries:
    """Alias of :func:`load_irradiance_csv` for generic value CSVs."""
    return load_irradiance_csv(path, window=window)


def format_cell(value) -> str:
    """Render one CSV cell: full-precision floats, plain ints, bools as
    ``true``/``false``, everything else via ``str``."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, header, rows) -> None:
    """Write rows under a header with LF endings and round-trip floats.

    Parameters
    ----------
    path : str or Path
    header : sequence of str
    rows : iterable of sequences
        Each cell passes through :func:`format_cell`.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(cell) for cell in row])


def parse_config(path) -> dict:
    """Read a flat ``key=value`` configuration file.

    Blank lines and ``#`` comments are ignored; keys and values are
    stripped strings. Values stay unconverted — the CLI applies the same
    parsing it uses for flags, and flags override these entries.

    Raises
    ------
    ParseError
        On a line without ``=``.
    """
    out = {}
    with Path(path).open() as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(line_no, f"expected key=value, got {raw.strip()!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out
