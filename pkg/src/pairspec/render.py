"""Deterministic file emission: CSV tables and standalone SVG plots.

CSV: '.' decimal separator, no locale, 17 significant digits, mandatory
header row, '\\n' line endings.  Identical inputs produce byte-identical
files.

SVG: self-contained vector files, no external stylesheets or fonts beyond
generic families.  1-D data becomes a polyline per series; 2-D data becomes
a run-length-merged cell heatmap with a signed blue/white/red map.  Axis
labels carry their units.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

FLOAT_FMT = "%.17g"

# fixed plot geometry so tests can map data to pixel coordinates
WIDTH = 640
HEIGHT = 400
MARGIN_LEFT = 70.0
MARGIN_RIGHT = 20.0
MARGIN_TOP = 30.0
MARGIN_BOTTOM = 50.0

SERIES_COLORS = ("#1f4e9c", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#148f9c")


def format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return FLOAT_FMT % float(value)
    if isinstance(value, complex):
        raise TypeError("complex values must be split into columns before CSV emission")
    return str(value)


def write_csv(path, header: list[str], rows) -> None:
    """Write a table; the header row is mandatory."""
    if not header:
        raise ValueError("CSV header must be non-empty")
    lines = [",".join(str(h) for h in header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row width {len(row)} does not match header width {len(header)}")
        lines.append(",".join(format_value(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# coordinate mapping


def _span(lo: float, hi: float) -> float:
    return (hi - lo) if hi > lo else 1.0


def _x_pixel(x, xmin, xmax) -> float:
    inner = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    return MARGIN_LEFT + (x - xmin) / _span(xmin, xmax) * inner


def _y_pixel(y, ymin, ymax) -> float:
    inner = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    return HEIGHT - MARGIN_BOTTOM - (y - ymin) / _span(ymin, ymax) * inner


def _fmt_px(v: float) -> str:
    return f"{v:.3f}"


def _axis_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _svg_header(title: str) -> list[str]:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{title}</text>'
        )
    return parts


def _svg_axes(xmin, xmax, ymin, ymax, xlabel, ylabel) -> list[str]:
    parts = []
    x0 = MARGIN_LEFT
    x1 = WIDTH - MARGIN_RIGHT
    y0 = HEIGHT - MARGIN_BOTTOM
    y1 = MARGIN_TOP
    parts.append(
        f'<path d="M {x0:.1f} {y1:.1f} L {x0:.1f} {y0:.1f} L {x1:.1f} {y0:.1f}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    for tick in _axis_ticks(xmin, xmax):
        px = _x_pixel(tick, xmin, xmax)
        parts.append(f'<line x1="{_fmt_px(px)}" y1="{y0:.1f}" x2="{_fmt_px(px)}" y2="{y0 + 4:.1f}" stroke="black"/>')
        parts.append(
            f'<text x="{_fmt_px(px)}" y="{y0 + 16:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{tick:.6g}</text>'
        )
    for tick in _axis_ticks(ymin, ymax):
        py = _y_pixel(tick, ymin, ymax)
        parts.append(f'<line x1="{x0 - 4:.1f}" y1="{_fmt_px(py)}" x2="{x0:.1f}" y2="{_fmt_px(py)}" stroke="black"/>')
        parts.append(
            f'<text x="{x0 - 6:.1f}" y="{_fmt_px(py + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{tick:.3g}</text>'
        )
    parts.append(
        f'<text x="{(x0 + x1) / 2:.1f}" y="{HEIGHT - 12:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>'
    )
    parts.append(
        f'<text x="16" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2:.1f})">{ylabel}</text>'
    )
    return parts


def svg_line_plot(x, series: dict, xlabel="omega (cm^-1)", ylabel="signal (arb. units)", title="") -> str:
    """Polyline plot of one or more series over a shared abscissa."""
    x = np.asarray(x, dtype=float)
    if x.size == 0 or not series:
        raise ValueError("cannot plot empty data")
    ymin = min(float(np.min(np.asarray(v, dtype=float))) for v in series.values())
    ymax = max(float(np.max(np.asarray(v, dtype=float))) for v in series.values())
    if ymax == ymin:
        ymin -= 0.5
        ymax += 0.5
    xmin, xmax = float(x[0]), float(x[-1])
    parts = _svg_header(title)
    parts += _svg_axes(xmin, xmax, ymin, ymax, xlabel, ylabel)
    for idx, (name, values) in enumerate(series.items()):
        values = np.asarray(values, dtype=float)
        if values.shape != x.shape:
            raise ValueError(f"series {name!r} length {values.size} does not match abscissa {x.size}")
        color = SERIES_COLORS[idx % len(SERIES_COLORS)]
        points = " ".join(
            f"{_fmt_px(_x_pixel(xv, xmin, xmax))},{_fmt_px(_y_pixel(yv, ymin, ymax))}"
            for xv, yv in zip(x, values)
        )
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{points}"/>')
        parts.append(
            f'<text x="{WIDTH - MARGIN_RIGHT - 4:.1f}" y="{MARGIN_TOP + 14 + 14 * idx:.1f}" '
            f'text-anchor="end" font-family="sans-serif" font-size="11" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cell_color(value: float, vmax: float) -> str:
    """Signed diverging map: negative blue, zero white, positive red."""
    if vmax <= 0.0:
        t = 0.0
    else:
        t = max(-1.0, min(1.0, value / vmax))
    if t >= 0.0:
        level = int(round(255 * (1.0 - t)))
        return f"#ff{level:02x}{level:02x}"
    level = int(round(255 * (1.0 + t)))
    return f"#{level:02x}{level:02x}ff"


def svg_heatmap(x_axis, y_axis, matrix, xlabel="omega (cm^-1)", ylabel="omega_p (cm^-1)", title="") -> str:
    """Cell heatmap; matrix rows index y_axis, columns index x_axis.

    Adjacent same-color cells in a row are merged into one rectangle, which
    keeps dense scans compact without changing the rendered image.
    """
    x_axis = np.asarray(x_axis, dtype=float)
    y_axis = np.asarray(y_axis, dtype=float)
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        raise ValueError("cannot plot an empty matrix")
    if matrix.shape != (y_axis.size, x_axis.size):
        raise ValueError(f"matrix shape {matrix.shape} does not match axes ({y_axis.size}, {x_axis.size})")
    finite = np.isfinite(matrix)
    if not finite.any():
        raise ValueError("matrix holds no finite values")
    vmax = float(np.max(np.abs(matrix[finite])))
    xmin, xmax = float(x_axis[0]), float(x_axis[-1])
    ymin, ymax = float(y_axis[0]), float(y_axis[-1])
    inner_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    inner_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    cell_w = inner_w / matrix.shape[1]
    cell_h = inner_h / matrix.shape[0]
    parts = _svg_header(title)
    for iy in range(matrix.shape[0]):
        # row iy is drawn with low y values at the bottom; non-finite cells
        # (outside a sheared-coordinate footprint) are left unpainted
        py = HEIGHT - MARGIN_BOTTOM - (iy + 1) * cell_h
        colors = [
            _cell_color(matrix[iy, ix], vmax) if finite[iy, ix] else None
            for ix in range(matrix.shape[1])
        ]
        ix = 0
        while ix < len(colors):
            if colors[ix] is None:
                ix += 1
                continue
            run = ix
            while run + 1 < len(colors) and colors[run + 1] == colors[ix]:
                run += 1
            px = MARGIN_LEFT + ix * cell_w
            width = (run - ix + 1) * cell_w
            parts.append(
                f'<rect x="{_fmt_px(px)}" y="{_fmt_px(py)}" width="{_fmt_px(width)}" '
                f'height="{_fmt_px(cell_h)}" fill="{colors[ix]}"/>'
            )
            ix = run + 1
    parts += _svg_axes(xmin, xmax, ymin, ymax, xlabel, ylabel)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(path, content: str) -> None:
    Path(path).write_text(content, encoding="utf-8")
