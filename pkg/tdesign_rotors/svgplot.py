"""Minimal SVG line/point charts with a log-10 y axis.

Used for scaling-study plots; the CSV is the record, the chart is a view.
"""

from __future__ import annotations

import html
import math
from collections.abc import Sequence
from dataclasses import dataclass

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]


@dataclass(frozen=True)
class Series:
    label: str
    x: Sequence[float]
    y: Sequence[float | None]

    def points(self) -> list[tuple[float, float]]:
        """(x, y) pairs with a positive finite y; others cannot go on a log axis."""
        return [
            (float(x), float(y))
            for x, y in zip(self.x, self.y, strict=True)
            if y is not None and math.isfinite(y) and y > 0.0
        ]


class SVG:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.svg = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" xmlns="http://www.w3.org/2000/svg">\n'
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
        )

    def line(
        self, x1: float, y1: float, x2: float, y2: float, stroke: str = "black", extra: str = ""
    ) -> None:
        self.svg += (
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" {extra}/>\n'
        )

    def polyline(self, pts: Sequence[tuple[float, float]], stroke: str) -> None:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        self.svg += (
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="1.5"/>\n'
        )

    def circle(self, x: float, y: float, r: float, fill: str) -> None:
        self.svg += f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.1f}" fill="{fill}"/>\n'

    def text(self, x: float, y: float, string: str, extra: str = "") -> None:
        self.svg += (
            f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" font-size="12" {extra}>'
            f"{html.escape(string)}</text>\n"
        )

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


def log_chart(
    series: Sequence[Series],
    *,
    title: str = "",
    x_label: str = "t",
    y_label: str = "rate (Hz)",
    width: int = 640,
    height: int = 420,
) -> str:
    """Line-and-marker chart, linear x and log-10 y, one polyline per series."""
    left, right, top, bottom = 70, 140, 40, 50
    plot_w, plot_h = width - left - right, height - top - bottom
    all_pts = [p for s in series for p in s.points()]

    svg = SVG(width, height)
    if title:
        svg.text(width / 2, 24, title, 'text-anchor="middle" font-weight="bold"')
    svg.line(left, top + plot_h, left + plot_w, top + plot_h)
    svg.line(left, top, left, top + plot_h)
    svg.text(left + plot_w / 2, height - 12, x_label, 'text-anchor="middle"')
    mid_y = top + plot_h / 2
    svg.text(16, mid_y, y_label, f'text-anchor="middle" transform="rotate(-90 16 {mid_y:.2f})"')
    if not all_pts:
        return svg.get_svg()

    xs = [p[0] for p in all_pts]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    d_lo = math.floor(math.log10(min(p[1] for p in all_pts)))
    d_hi = math.ceil(math.log10(max(p[1] for p in all_pts)))
    if d_hi == d_lo:
        d_hi += 1

    def sx(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return top + plot_h - (math.log10(y) - d_lo) / (d_hi - d_lo) * plot_h

    stride = max(1, math.ceil((d_hi - d_lo) / 10))
    for d in range(d_lo, d_hi + 1, stride):
        y = sy(10.0**d)
        svg.line(left - 5, y, left, y)
        svg.line(left, y, left + plot_w, y, "#dddddd")
        svg.text(left - 8, y + 4, f"1e{d}", 'text-anchor="end"')
    for x in sorted(set(xs)):
        svg.line(sx(x), top + plot_h, sx(x), top + plot_h + 5)
        svg.text(sx(x), top + plot_h + 18, f"{x:g}", 'text-anchor="middle"')

    for k, s in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        pts = [(sx(x), sy(y)) for x, y in s.points()]
        if len(pts) > 1:
            svg.polyline(pts, color)
        for x, y in pts:
            svg.circle(x, y, 3.0, color)
        ly = top + 16 * k + 8
        svg.line(left + plot_w + 12, ly, left + plot_w + 32, ly, color, 'stroke-width="2"')
        svg.text(left + plot_w + 38, ly + 4, s.label)
    return svg.get_svg()
