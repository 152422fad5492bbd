"""Static SVG renderings of the pubs-per-year bars and per-role violins.

Output is plain text built from fixed-precision numbers so repeated runs
produce identical bytes.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

from .model import ROLES, AnalysisSnapshot

WIDTH = 640
HEIGHT = 320
MARGIN_LEFT = 56
MARGIN_RIGHT = 16
MARGIN_TOP = 32
MARGIN_BOTTOM = 44

ROLE_COLORS = {
    "corresponding": "#1b7837",
    "first": "#2166ac",
    "second": "#b2182b",
    "coauthor": "#8c6d31",
}


def _f(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _open(title: str) -> list:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.0f}" y="18" text-anchor="middle" font-size="13">{escape(title)}</text>',
    ]


def _axes(y_label: str) -> list:
    x0, y0 = MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM
    return [
        f'<line class="axis" x1="{x0}" y1="{MARGIN_TOP}" x2="{x0}" y2="{y0}" stroke="#000000"/>',
        f'<line class="axis" x1="{x0}" y1="{y0}" x2="{WIDTH - MARGIN_RIGHT}" y2="{y0}" stroke="#000000"/>',
        f'<text x="14" y="{(MARGIN_TOP + y0) / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {(MARGIN_TOP + y0) / 2:.0f})">{escape(y_label)}</text>',
    ]


def pubs_per_year_svg(snap: AnalysisSnapshot) -> str:
    out = _open("Publications per year")
    out += _axes("Publications")
    data = sorted(snap.pubs_per_year.items())
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    y0 = HEIGHT - MARGIN_BOTTOM
    if data:
        top = max(max(n for _, n in data), 1)
        slot = plot_w / len(data)
        bar_w = slot * 0.7
        for tick in sorted({0, top}):
            y = y0 - plot_h * tick / top
            out.append(f'<text x="{MARGIN_LEFT - 6}" y="{_f(y + 4)}" text-anchor="end">{tick}</text>')
        for i, (year, n) in enumerate(data):
            x = MARGIN_LEFT + i * slot + (slot - bar_w) / 2
            h = plot_h * n / top
            out.append(
                f'<rect class="bar" x="{_f(x)}" y="{_f(y0 - h)}" width="{_f(bar_w)}" '
                f'height="{_f(h)}" fill="#4a6fa5"><title>{year}: {n}</title></rect>'
            )
            out.append(f'<text x="{_f(x + bar_w / 2)}" y="{y0 + 16}" text-anchor="middle">{year}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def violins_svg(snap: AnalysisSnapshot) -> str:
    out = _open("Citations by authorship role, log10(citations + 1)")
    out += _axes("log10(citations + 1)")
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    y0 = HEIGHT - MARGIN_BOTTOM
    populated = [snap.violin[r] for r in ROLES if snap.violin[r].n > 0]
    if not populated:
        out.append("</svg>")
        return "\n".join(out) + "\n"

    top = max(v.max for v in populated)
    top = max(top, 1.0)

    def ypos(v: float) -> float:
        return y0 - plot_h * v / top

    for tick in range(0, int(top) + 1):
        out.append(f'<text x="{MARGIN_LEFT - 6}" y="{_f(ypos(tick) + 4)}" text-anchor="end">{tick}</text>')

    slot = plot_w / len(ROLES)
    half = slot * 0.4
    for i, role in enumerate(ROLES):
        v = snap.violin[role]
        cx = MARGIN_LEFT + slot * (i + 0.5)
        color = ROLE_COLORS[role.value]
        out.append(f'<g class="violin" data-role="{role.value}">')
        out.append(f'<text x="{_f(cx)}" y="{y0 + 16}" text-anchor="middle">{role.value} (n={v.n})</text>')
        if v.n > 0:
            if v.density:
                peak = max(d for _, d in v.density) or 1.0
                right = [(cx + half * d / peak, ypos(p)) for p, d in v.density]
                left = [(cx - half * d / peak, ypos(p)) for p, d in reversed(v.density)]
                pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in right + left)
                out.append(f'<polygon class="body" points="{pts}" fill="{color}" fill-opacity="0.35" stroke="{color}"/>')
            for name, value, w in (("q25", v.q25, 0.35), ("median", v.median, 0.6), ("q75", v.q75, 0.35)):
                y = ypos(value)
                sw = 2 if name == "median" else 1
                out.append(
                    f'<line class="tick {name}" x1="{_f(cx - half * w)}" y1="{_f(y)}" '
                    f'x2="{_f(cx + half * w)}" y2="{_f(y)}" stroke="#000000" stroke-width="{sw}"/>'
                )
            out.append(
                f'<line class="range" x1="{_f(cx)}" y1="{_f(ypos(v.min))}" x2="{_f(cx)}" '
                f'y2="{_f(ypos(v.max))}" stroke="#000000" stroke-dasharray="2,2"/>'
            )
            out.append(f'<circle class="mean" cx="{_f(cx)}" cy="{_f(ypos(v.mean))}" r="3" fill="#ffffff" stroke="#000000"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_charts(snap: AnalysisSnapshot) -> dict:
    return {"pubs_per_year.svg": pubs_per_year_svg(snap), "violins.svg": violins_svg(snap)}
