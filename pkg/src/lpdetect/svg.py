"""Minimal static SVG line charts (axes, ticks, legend, polylines)."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

__all__ = ["Series", "line_chart"]

PALETTE = ["#1f4fd1", "#d12a1f", "#1f8a3a", "#222222", "#b5651d", "#7a3fb0"]
WIDTH, HEIGHT = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 64, 170, 30, 52


class Series:
    def __init__(self, label, xs, ys, dashed=False, color=None):
        self.label = label
        self.xs = [float(x) for x in xs]
        self.ys = [float(y) for y in ys]
        self.dashed = dashed
        self.color = color


def _g(v):
    return f"{v:.4g}"


def _ticks(lo, hi, log):
    if log:
        return [10.0 ** k for k in range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1)]
    span = hi - lo
    step = 10 ** math.floor(math.log10(span)) if span > 0 else 1.0
    while span / step > 8:
        step *= 2
    first = math.ceil(lo / step) * step
    return [first + k * step for k in range(int((hi - first) / step + 1e-9) + 1)]


def line_chart(series, xlabel="", ylabel="", title="", logx=False) -> str:
    """Render ``series`` as an SVG document string.

    Coordinates are printed with 4 significant digits. With ``logx`` the
    x-axis is logarithmic and non-positive x values are dropped.
    """
    pts = [(x, y) for s in series for x, y in zip(s.xs, s.ys) if math.isfinite(y) and (x > 0 or not logx)]
    if not pts:
        raise ValueError("nothing to plot")
    xs, ys = zip(*pts)
    fx = (lambda x: math.log10(x)) if logx else (lambda x: x)
    x0, x1 = fx(min(xs)), fx(max(xs))
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    y0, y1 = min(0.0, min(ys)), max(ys)
    if y1 == y0:
        y1 = y0 + 1
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (fx(x) - x0) / (x1 - x0) * pw

    def py(y):
        return TOP + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    lo, hi = (10 ** x0, 10 ** x1) if logx else (x0, x1)
    for t in _ticks(lo, hi, logx):
        if not lo - 1e-12 <= t <= hi + 1e-12:
            continue
        x = px(t)
        out.append(f'<line x1="{_g(x)}" y1="{TOP + ph}" x2="{_g(x)}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{_g(x)}" y="{TOP + ph + 18}" text-anchor="middle">{_g(t)}</text>')
    for t in _ticks(y0, y1, False):
        y = py(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{_g(y)}" x2="{LEFT}" y2="{_g(y)}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{_g(y + 4)}" text-anchor="end">{_g(t)}</text>')
    out.append(f'<text x="{LEFT + pw / 2}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{TOP + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {TOP + ph / 2})">{escape(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{LEFT + pw / 2}" y="{TOP - 10}" text-anchor="middle">{escape(title)}</text>')

    for k, s in enumerate(series):
        color = s.color or PALETTE[k % len(PALETTE)]
        coords = " ".join(
            f"{_g(px(x))},{_g(py(y))}" for x, y in zip(s.xs, s.ys) if math.isfinite(y) and (x > 0 or not logx)
        )
        dash = ' stroke-dasharray="6 4"' if s.dashed else ""
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"{dash}/>')
        ly = TOP + 14 + 18 * k
        lx = WIDTH - RIGHT + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}">{escape(s.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
