"""Minimal deterministic SVG line charts.

Hand-built markup instead of a plotting library so identical inputs give
byte-identical files: no font metrics, timestamps, or library-version
noise ends up in the output.
"""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["emit_svg_lines"]

WIDTH, HEIGHT = 800, 500
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 200, 40, 60

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
DASHES = ["", "7 4", "2 3", "8 3 2 3", "5 2 1 2", "12 4"]


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    """Round tick positions covering [lo, hi] at a 1/2/5 step."""
    span = hi - lo
    raw = span / max(target, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return ticks


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _label(x: float) -> str:
    return f"{x:.6g}"


def emit_svg_lines(series, path, title: str = "", xlabel: str = "", ylabel: str = "") -> None:
    """Write a standalone SVG line chart.

    Parameters
    ----------
    series : sequence of (name, x, y)
        One or more named lines; each ``x``/``y`` pair holds equal-length
        1-D arrays of finite values (grids may differ between lines).
    path : str or Path
        Output file.
    title, xlabel, ylabel : str
        Optional chart annotations.

    Raises
    ------
    ValueError
        On an empty series set, length mismatch, or non-finite data;
        nothing is written in that case.
    OSError
        If the file cannot be written.
    """
    series = list(series)
    if not series:
        raise ValueError("no series to plot")
    cleaned = []
    for name, x, y in series:
        x = np.asarray(x, dtype=float).reshape(-1)
        y = np.asarray(y, dtype=float).reshape(-1)
        if x.shape != y.shape:
            raise ValueError(f"series {name!r}: x has {x.shape[0]} points, y has {y.shape[0]}")
        if x.size == 0:
            raise ValueError(f"series {name!r} is empty")
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise ValueError(f"series {name!r} contains non-finite values")
        cleaned.append((str(name), x, y))

    xmin = min(float(x.min()) for _, x, _ in cleaned)
    xmax = max(float(x.max()) for _, x, _ in cleaned)
    ymin = min(float(y.min()) for _, _, y in cleaned)
    ymax = max(float(y.max()) for _, _, y in cleaned)
    if xmin == xmax:
        xmin, xmax = xmin - 0.5, xmax + 0.5
    if ymin == ymax:
        ymin, ymax = ymin - 0.5, ymax + 0.5

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + (x - xmin) / (xmax - xmin) * plot_w

    def sy(y):
        return MARGIN_T + plot_h - (y - ymin) / (ymax - ymin) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333333" stroke-width="1"/>',
    ]
    font = 'font-family="sans-serif" font-size="13"'

    for t in _nice_ticks(xmin, xmax):
        px = sx(t)
        out.append(f'<line x1="{_fmt(px)}" y1="{MARGIN_T + plot_h}" x2="{_fmt(px)}" '
                   f'y2="{MARGIN_T + plot_h + 5}" stroke="#333333"/>')
        out.append(f'<text x="{_fmt(px)}" y="{MARGIN_T + plot_h + 20}" {font} '
                   f'text-anchor="middle">{escape(_label(t))}</text>')
    for t in _nice_ticks(ymin, ymax):
        py = sy(t)
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{_fmt(py)}" x2="{MARGIN_L}" '
                   f'y2="{_fmt(py)}" stroke="#333333"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{_fmt(py + 4)}" {font} '
                   f'text-anchor="end">{escape(_label(t))}</text>')

    if title:
        out.append(f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{MARGIN_T - 14}" '
                   'font-family="sans-serif" font-size="16" '
                   f'text-anchor="middle">{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 16}" {font} '
                   f'text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        cx, cy = 20, MARGIN_T + plot_h / 2
        out.append(f'<text x="{cx}" y="{cy:.1f}" {font} text-anchor="middle" '
                   f'transform="rotate(-90 {cx} {cy:.1f})">{escape(ylabel)}</text>')

    for k, (name, x, y) in enumerate(cleaned):
        color = PALETTE[k % len(PALETTE)]
        dash = DASHES[k % len(DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        pts = " ".join(f"{_fmt(sx(xi))},{_fmt(sy(yi))}" for xi, yi in zip(x, y))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   f'stroke-width="1.6"{dash_attr}/>')
        ly = MARGIN_T + 14 + 20 * k
        lx = MARGIN_L + plot_w + 14
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 26}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="1.6"{dash_attr}/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}" {font}>{escape(name)}</text>')

    out.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n")
