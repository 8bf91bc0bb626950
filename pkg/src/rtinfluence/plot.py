"""Static SVG rendering of a Pr(n) curve with 95% error bars."""

import math
from xml.sax.saxutils import escape

from ._utils import atomic_write
from .exceptions import EmptyCurveError

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 30, 40, 60
Z95 = 1.96


def _fmt(v):
    return f"{v:.2f}"


def render_svg(points, title="Pr(n)"):
    """Return the SVG document (a str) for ``points``; y spans [0, 1]."""
    if not points:
        raise EmptyCurveError("cannot plot an empty curve")
    points = sorted(points, key=lambda p: p.n)
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM
    n_lo, n_hi = points[0].n, points[-1].n
    span = max(n_hi - n_lo, 1)

    def sx(n):
        if n_hi == n_lo:
            return LEFT + plot_w / 2
        return LEFT + (n - n_lo) / span * plot_w

    def sy(v):
        return TOP + (1.0 - min(max(v, 0.0), 1.0)) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-size="15">{escape(title)}</text>',
    ]
    x0, x1, y0, y1 = LEFT, LEFT + plot_w, TOP, TOP + plot_h
    out.append(
        f'<g class="axes" stroke="black" stroke-width="1">'
        f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}"/>'
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>'
    )
    for i in range(6):
        v = i / 5
        y = _fmt(sy(v))
        out.append(
            f'<line class="ytick" x1="{x0 - 5}" y1="{y}" x2="{x0}" y2="{y}" stroke="black"/>'
            f'<text x="{x0 - 8}" y="{y}" text-anchor="end" dominant-baseline="middle">{v:.1f}</text>'
        )
    for p in points:
        x = _fmt(sx(p.n))
        out.append(
            f'<line class="xtick" x1="{x}" y1="{y1}" x2="{x}" y2="{y1 + 5}" stroke="black"/>'
            f'<text x="{x}" y="{y1 + 18}" text-anchor="middle">{p.n}</text>'
        )
    out.append(
        f'<text x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">'
        "number of spreaders n</text>"
    )
    out.append(
        f'<text x="18" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {(y0 + y1) / 2:.2f})">mean retweet probability</text>'
    )
    for p in points:
        half = Z95 * math.sqrt(p.variance / p.instances)
        x = _fmt(sx(p.n))
        out.append(
            f'<line class="errbar" x1="{x}" y1="{_fmt(sy(p.mean - half))}" '
            f'x2="{x}" y2="{_fmt(sy(p.mean + half))}" stroke="gray"/>'
        )
    coords = " ".join(f"{_fmt(sx(p.n))},{_fmt(sy(p.mean))}" for p in points)
    out.append(f'<polyline class="curve" points="{coords}" fill="none" stroke="steelblue" stroke-width="2"/>')
    for p in points:
        out.append(
            f'<circle class="point" cx="{_fmt(sx(p.n))}" cy="{_fmt(sy(p.mean))}" r="3.5" '
            f'fill="steelblue"><title>n={p.n} Pr={p.mean:.4g} ({p.instances} pairs)</title></circle>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(points, path, title="Pr(n)"):
    atomic_write(path, [render_svg(points, title)])
