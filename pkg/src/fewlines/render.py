"""SVG output for drawings (decimal approximations, for viewing only)."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .drawing_types import Drawing

_STYLE = """
  .edge { stroke: #444; stroke-width: 1.2; }
  .red { stroke: #c0392b; stroke-width: 1.4; }
  .blue { stroke: #2e6fd1; stroke-width: 1.4; }
  .cover { stroke: #888; stroke-width: 0.8; stroke-dasharray: 5 4; }
  .cover.extra { stroke: #b07d00; }
  .vertex { fill: #fff; stroke: #111; stroke-width: 1; }
  .label { font: 10px sans-serif; fill: #111; }
"""


def render_svg(d: Drawing, width: int = 600, labels: bool = True, margin: int = 24) -> str:
    """Deterministic SVG 1.1 document; cover lines are dashed, edge colours become classes."""
    if not d.points:
        return ('<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{width}"/>\n')
    xs = [float(x) for x, _ in d.points.values()]
    ys = [float(y) for _, y in d.points.values()]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span_x, span_y = (x1 - x0) or 1.0, (y1 - y0) or 1.0
    inner = width - 2 * margin
    # independent axis scaling keeps very tall or very wide drawings readable
    height = width

    def px(x: float) -> float:
        return margin + (x - x0) / span_x * inner

    def py(y: float) -> float:
        return height - margin - (y - y0) / span_y * (height - 2 * margin)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f"<style>{_STYLE}</style>"]
    for y in d.horizontal:
        Y = py(float(y))
        out.append(f'<line class="cover" x1="{margin / 2:.3f}" y1="{Y:.3f}" x2="{width - margin / 2:.3f}" y2="{Y:.3f}"/>')
    for cls, group in (("cover", d.vertical), ("cover extra", d.extra_vertical)):
        for x in group:
            X = px(float(x))
            out.append(f'<line class="{cls}" x1="{X:.3f}" y1="{margin / 2:.3f}" x2="{X:.3f}" y2="{height - margin / 2:.3f}"/>')
    colors = {frozenset(e): c for e, c in d.edge_colors.items()}
    for u, v in sorted(d.edges):
        (ax, ay), (bx, by) = d.points[u], d.points[v]
        cls = colors.get(frozenset((u, v)), "edge")
        out.append(f'<line class="{cls}" x1="{px(float(ax)):.3f}" y1="{py(float(ay)):.3f}" '
                   f'x2="{px(float(bx)):.3f}" y2="{py(float(by)):.3f}"/>')
    for v in sorted(d.points):
        x, y = d.points[v]
        X, Y = px(float(x)), py(float(y))
        out.append(f'<circle class="vertex" cx="{X:.3f}" cy="{Y:.3f}" r="3.5"/>')
        if labels:
            out.append(f'<text class="label" x="{X + 5:.3f}" y="{Y - 5:.3f}">{escape(v)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
