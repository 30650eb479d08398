"""Deterministic, self-contained SVG charts for result and gap-trace TSVs.

Hand-rolled SVG so identical inputs give byte-identical files: a linear line
chart of mean distance computations versus k (one series per method), and a
log-log chart of solver gap percent versus seconds.
"""
from __future__ import annotations

import math
from pathlib import Path

WIDTH, HEIGHT = 640, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 30, 30, 50

SERIES_ORDER = ("optimum", "oracle", "aesa", "iaesa2", "gaesa", "random")
SERIES_COLOR = {
    "optimum": "#111111",
    "oracle": "#d62728",
    "aesa": "#1f77b4",
    "iaesa2": "#2ca02c",
    "gaesa": "#9467bd",
    "random": "#ff7f0e",
}
SERIES_LABEL = {
    "optimum": "Optimum",
    "oracle": "Oracle AESA",
    "aesa": "AESA",
    "iaesa2": "iAESA2 (reimplementation)",
    "gaesa": "gAESA",
    "random": "Random",
}


def _read_tsv(path) -> tuple[list[str], list[list[str]]]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0].split("\t")
    rows = [ln.split("\t") for ln in lines[1:] if ln.strip()]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return header, rows


def _mean_value(cell: str) -> float:
    """Aggregated count; bracketed (unproven) cells map to their upper bound."""
    if cell.startswith("["):
        lo, hi = cell.strip("[]").split(",")
        return float(hi)
    return float(cell)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _polyline(points: list[tuple[float, float]], color: str) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return (f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{coords}"/>')


def _frame(x_ticks, y_ticks, x_label, y_label) -> list[str]:
    x0, x1 = MARGIN_L, WIDTH - MARGIN_R
    y0, y1 = HEIGHT - MARGIN_B, MARGIN_T
    parts = [
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="#000000"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#000000"/>',
    ]
    for xv, px in x_ticks:
        parts.append(f'<line x1="{_fmt(px)}" y1="{y0}" x2="{_fmt(px)}" y2="{y0 + 5}" stroke="#000000"/>')
        parts.append(f'<text x="{_fmt(px)}" y="{y0 + 18}" font-size="11" '
                     f'text-anchor="middle" font-family="sans-serif">{xv}</text>')
    for yv, py in y_ticks:
        parts.append(f'<line x1="{x0 - 5}" y1="{_fmt(py)}" x2="{x0}" y2="{_fmt(py)}" stroke="#000000"/>')
        parts.append(f'<text x="{x0 - 8}" y="{_fmt(py + 4)}" font-size="11" '
                     f'text-anchor="end" font-family="sans-serif">{yv}</text>')
    parts.append(f'<text x="{(x0 + x1) // 2}" y="{HEIGHT - 12}" font-size="12" '
                 f'text-anchor="middle" font-family="sans-serif">{x_label}</text>')
    parts.append(f'<text x="16" y="{(y0 + y1) // 2}" font-size="12" text-anchor="middle" '
                 f'font-family="sans-serif" transform="rotate(-90 16 {(y0 + y1) // 2})">{y_label}</text>')
    return parts


def _legend(methods: list[str]) -> list[str]:
    parts = []
    y = MARGIN_T + 10
    for m in methods:
        x = WIDTH - MARGIN_R - 190
        parts.append(f'<line x1="{x}" y1="{y - 4}" x2="{x + 24}" y2="{y - 4}" '
                     f'stroke="{SERIES_COLOR[m]}" stroke-width="2"/>')
        parts.append(f'<text x="{x + 30}" y="{y}" font-size="11" '
                     f'font-family="sans-serif">{SERIES_LABEL[m]}</text>')
        y += 16
    return parts


def render_results_svg(tsv_path, out_path) -> None:
    """Line chart of mean distance computations versus k, one line per method."""
    header, rows = _read_tsv(tsv_path)
    cols = {name: i for i, name in enumerate(header)}
    for needed in ("k", "method", "mean_computations"):
        if needed not in cols:
            raise ValueError(f"{tsv_path}: missing column {needed!r}")
    series: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        k = float(row[cols["k"]])
        method = row[cols["method"]]
        series.setdefault(method, []).append((k, _mean_value(row[cols["mean_computations"]])))

    methods = [m for m in SERIES_ORDER if m in series]
    methods += sorted(set(series) - set(methods))
    ks = sorted({k for pts in series.values() for k, _ in pts})
    ys = [y for pts in series.values() for _, y in pts]
    x_lo, x_hi = min(ks), max(ks)
    y_lo, y_hi = 0.0, max(ys) * 1.05 or 1.0
    x_span = (x_hi - x_lo) or 1.0

    def px(k):
        return MARGIN_L + (k - x_lo) / x_span * (WIDTH - MARGIN_L - MARGIN_R)

    def py(v):
        return HEIGHT - MARGIN_B - v / y_hi * (HEIGHT - MARGIN_T - MARGIN_B)

    y_ticks = [(f"{y_hi * f:.0f}", py(y_hi * f)) for f in (0.0, 0.25, 0.5, 0.75, 1.0)]
    parts = _frame([(f"{k:g}", px(k)) for k in ks], y_ticks,
                   "k (neighbors covered by the radius)", "distance computations")
    for m in methods:
        pts = sorted(series[m])
        color = SERIES_COLOR.get(m, "#555555")
        parts.append(_polyline([(px(k), py(v)) for k, v in pts], color))
    parts.extend(_legend([m for m in methods if m in SERIES_COLOR]))
    _write_svg(parts, out_path)


def render_gap_svg(tsv_path, out_path) -> None:
    """Log-log chart of the solver's relative gap (percent) over time."""
    header, rows = _read_tsv(tsv_path)
    cols = {name: i for i, name in enumerate(header)}
    for needed in ("secs", "gap_percent"):
        if needed not in cols:
            raise ValueError(f"{tsv_path}: missing column {needed!r}")
    pts = []
    for row in rows:
        secs = float(row[cols["secs"]])
        gap = float(row[cols["gap_percent"]])
        if secs > 0 and gap > 0:
            pts.append((math.log10(secs), math.log10(gap)))
    if not pts:
        raise ValueError(f"{tsv_path}: no positive (secs, gap) pairs to plot on log axes")

    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo, x_hi = math.floor(min(xs)), math.ceil(max(xs)) or 1
    y_lo, y_hi = math.floor(min(ys)), math.ceil(max(ys)) or 1
    if x_hi == x_lo:
        x_hi += 1
    if y_hi == y_lo:
        y_hi += 1

    def px(x):
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_L - MARGIN_R)

    def py(y):
        return HEIGHT - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_T - MARGIN_B)

    x_ticks = [(f"1e{e}", px(e)) for e in range(x_lo, x_hi + 1)]
    y_ticks = [(f"1e{e}", py(e)) for e in range(y_lo, y_hi + 1)]
    parts = _frame(x_ticks, y_ticks, "seconds", "gap (percent)")
    parts.append(_polyline([(px(x), py(y)) for x, y in sorted(pts)], "#111111"))
    _write_svg(parts, out_path)


def _write_svg(parts: list[str], out_path) -> None:
    body = "\n".join(parts)
    doc = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
           f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">\n{body}\n</svg>\n')
    Path(out_path).write_text(doc, encoding="utf-8")
