"""Self-contained SVG line charts for benchmark sweeps (no plotting deps)."""

from __future__ import annotations

_WIDTH = 640
_HEIGHT = 440
_MARGIN_LEFT = 80
_MARGIN_RIGHT = 24
_MARGIN_TOP = 48
_MARGIN_BOTTOM = 56
_COLORS = ("#d94a4a", "#4a90d9", "#3fa45b", "#a05bd9")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if count < 2:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def render_series_svg(
    xs: list[float],
    series: list[tuple[str, list[float]]],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Line chart with one polyline plus point markers per series.

    Axes auto-scale to the data with 10% padding; a single data point
    degenerates gracefully to markers without a visible line.
    """
    if not xs or not series:
        raise ValueError("nothing to plot")
    for name, values in series:
        if len(values) != len(xs):
            raise ValueError(f"series {name!r} has {len(values)} points for {len(xs)} x values")

    all_y = [v for _, values in series for v in values]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(all_y), max(all_y)
    x_pad = (x_hi - x_lo) * 0.1 or max(abs(x_hi), 1.0) * 0.1
    y_pad = (y_hi - y_lo) * 0.1 or max(abs(y_hi), 1.0) * 0.1
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return _MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>',
        f'<text x="{_WIDTH / 2}" y="24" text-anchor="middle" font-size="15" '
        f'fill="#222">{title}</text>',
    ]

    for y in _ticks(y_lo, y_hi):
        out.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{py(y):.2f}" '
            f'x2="{_MARGIN_LEFT + plot_w}" y2="{py(y):.2f}" '
            f'stroke="#e0e0e0" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{py(y) + 4:.2f}" text-anchor="end" '
            f'font-size="11" fill="#555">{y:.4g}</text>'
        )
    for x in _ticks(x_lo, x_hi):
        out.append(
            f'<text x="{px(x):.2f}" y="{_MARGIN_TOP + plot_h + 18}" '
            f'text-anchor="middle" font-size="11" fill="#555">{x:.4g}</text>'
        )

    for idx, (name, values) in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        points = " ".join(f"{px(x):.2f},{py(v):.2f}" for x, v in zip(xs, values))
        out.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for x, v in zip(xs, values):
            out.append(f'<circle cx="{px(x):.2f}" cy="{py(v):.2f}" r="3" fill="{color}"/>')
        legend_y = _MARGIN_TOP + 8 + 18 * idx
        out.append(
            f'<rect x="{_MARGIN_LEFT + plot_w - 130}" y="{legend_y}" width="12" '
            f'height="12" fill="{color}"/>'
        )
        out.append(
            f'<text x="{_MARGIN_LEFT + plot_w - 112}" y="{legend_y + 10}" '
            f'font-size="12" fill="#222">{name}</text>'
        )

    out.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{_MARGIN_TOP}" x2="{_MARGIN_LEFT}" '
        f'y2="{_MARGIN_TOP + plot_h}" stroke="#222" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{_MARGIN_TOP + plot_h}" '
        f'x2="{_MARGIN_LEFT + plot_w}" y2="{_MARGIN_TOP + plot_h}" '
        f'stroke="#222" stroke-width="1"/>'
    )
    out.append(
        f'<text x="{_MARGIN_LEFT + plot_w / 2}" y="{_HEIGHT - 14}" '
        f'text-anchor="middle" font-size="12" fill="#222">{x_label}</text>'
    )
    out.append(
        f'<text x="20" y="{_MARGIN_TOP + plot_h / 2}" text-anchor="middle" '
        f'font-size="12" fill="#222" '
        f'transform="rotate(-90, 20, {_MARGIN_TOP + plot_h / 2})">{y_label}</text>'
    )
    out.append("</svg>")
    return "\n".join(out)


def format_dat(xs: list[float], series: list[tuple[str, list[float]]]) -> str:
    """Plain-text sidecar with the exact plotted numbers, one row per x."""
    header = "# n " + " ".join(name.replace(" ", "_") for name, _ in series)
    lines = [header]
    for i, x in enumerate(xs):
        cells = [_format_number(x)] + [_format_number(vals[i]) for _, vals in series]
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def _format_number(v: float) -> str:
    f = float(v)
    if f.is_integer() and abs(f) < 2**53:
        return str(int(f))
    return repr(f)
