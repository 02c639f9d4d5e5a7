"""Standalone SVG line chart of the six forecast lines."""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .errors import ValidationError
from .report import ReportBundle, _write
from .series import BaselineLabel as B, PathwayLabel as P

WIDTH, HEIGHT = 960, 560
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 300, 50, 60

# Display-unit label and divisor applied to GWh.
DISPLAY_UNITS = {
    "billion_kWh": ("billion kWh", 1000),
    "million_kWh": ("million kWh", 1),
    "GWh": ("GWh", 1),
}

DOTTED, DASHED = "2,4", "8,5"

# (colour, dash pattern or None for solid, legend text)
STYLES = {
    (P.FLAT_CONTROL, B.CURRENT_TREND): ("#000000", DOTTED, "Control, current trend"),
    (P.RCP45, B.CURRENT_TREND): ("#d62728", None, "RCP 4.5, current trend"),
    (P.RCP85, B.CURRENT_TREND): ("#1f4fd6", DASHED, "RCP 8.5, current trend (Worst case)"),
    (P.FLAT_CONTROL, B.BEST_PRACTICES): ("#8b4513", DOTTED, "Control, best practices (Best case)"),
    (P.RCP45, B.BEST_PRACTICES): ("#2ca02c", None, "RCP 4.5, best practices"),
    (P.RCP85, B.BEST_PRACTICES): ("#e6b800", DASHED, "RCP 8.5, best practices"),
}


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.floor(lo / step) * step
    ticks = []
    k = 0
    while True:
        t = first + k * step
        ticks.append(t)
        if t >= hi:
            break
        k += 1
    return ticks


def _num(x: float) -> str:
    return f"{x:.2f}"


def _label(x: float) -> str:
    return f"{x:g}" if x != int(x) else str(int(x))


def render_chart_svg(bundle: ReportBundle, path: str | Path, display_unit: str = "billion_kWh") -> None:
    """Write the forecast grid as an SVG with one polyline per scenario."""
    if display_unit not in DISPLAY_UNITS:
        raise ValidationError(f"unknown display unit {display_unit!r}")
    if len(bundle.grid) != 6:
        raise ValidationError(f"chart needs the 6-series grid, got {len(bundle.grid)} series")
    unit_text, divisor = DISPLAY_UNITS[display_unit]

    years = [y for f in bundle.grid for y in f.years]
    energies = [e for f in bundle.grid for e in f.energy]
    x0, x1 = min(years), max(years)
    if x1 == x0:
        x1 = x0 + 1
    yticks = nice_ticks(min(energies), max(energies))
    y0, y1 = yticks[0], yticks[-1]

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(year):
        return MARGIN_LEFT + (year - x0) / (x1 - x0) * plot_w

    def sy(gwh):
        return MARGIN_TOP + (y1 - gwh) / (y1 - y0) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2 - MARGIN_RIGHT / 2:.0f}" y="28" text-anchor="middle" font-size="15">'
        f"Energy consumption for various climate scenarios ({escape(unit_text)}), forecast by year</text>",
    ]

    bottom = MARGIN_TOP + plot_h
    right = MARGIN_LEFT + plot_w
    out.append('<g class="axes" stroke="#333333" stroke-width="1">')
    out.append(f'<line x1="{MARGIN_LEFT}" y1="{bottom}" x2="{right}" y2="{bottom}"/>')
    out.append(f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{bottom}"/>')
    out.append("</g>")

    xstep = 5 if x1 - x0 > 12 else 1
    out.append('<g class="x-ticks" text-anchor="middle">')
    xticks = [y for y in range(x0, x1 + 1) if y % xstep == 0]
    # Endpoints get a label unless a regular tick sits too close.
    if not xticks or xticks[0] - x0 >= xstep / 2:
        xticks.insert(0, x0)
    if xticks[-1] != x1 and x1 - xticks[-1] >= xstep / 2:
        xticks.append(x1)
    for year in xticks:
        out.append(f'<text class="x-tick" x="{_num(sx(year))}" y="{bottom + 18}">{year}</text>')
    out.append("</g>")

    out.append('<g class="y-ticks" text-anchor="end">')
    for t in yticks:
        y = sy(t)
        out.append(f'<line x1="{MARGIN_LEFT}" y1="{_num(y)}" x2="{right}" y2="{_num(y)}" stroke="#e5e5e5"/>')
        out.append(f'<text class="y-tick" x="{MARGIN_LEFT - 8}" y="{_num(y + 4)}">{_label(t / divisor)}</text>')
    out.append("</g>")

    out.append(f'<text x="{MARGIN_LEFT + plot_w / 2:.0f}" y="{HEIGHT - 15}" text-anchor="middle">Year</text>')
    out.append(
        f'<text x="20" y="{MARGIN_TOP + plot_h / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 20 {MARGIN_TOP + plot_h / 2:.0f})">Energy ({escape(unit_text)})</text>'
    )

    legend = []
    lx = right + 20
    for i, f in enumerate(bundle.grid):
        colour, dash, text = STYLES[(f.spec.pathway, f.spec.baseline)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        pts = " ".join(f"{_num(sx(p.year))},{_num(sy(p.energy_gwh))}" for p in f.points)
        scen, base = f.spec.key
        out.append(
            f'<polyline class="series" data-scenario={quoteattr(scen)} data-baseline={quoteattr(base)} '
            f'fill="none" stroke="{colour}" stroke-width="2"{dash_attr} points="{pts}"/>'
        )
        ly = MARGIN_TOP + 10 + i * 24
        legend.append(
            f'<g class="legend-entry"><line x1="{lx}" y1="{ly}" x2="{lx + 30}" y2="{ly}" '
            f'stroke="{colour}" stroke-width="2"{dash_attr}/>'
            f'<text x="{lx + 38}" y="{ly + 4}">{escape(text)}</text></g>'
        )
    out.append('<g class="legend">')
    out += legend
    out.append("</g>")
    out.append("</svg>")
    _write(path, "\n".join(out) + "\n")
