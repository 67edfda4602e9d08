"""Static SVG pictures of decompositions.

Output depends only on the inputs: fixed-precision coordinates, colors
from the cell's position in sorted order, no timestamps.
"""

from __future__ import annotations

from .decomposition import Decomposition
from .geometry import PointSet, convex_hull
from .radial import Sign, build_radial_structure

SIZE = 800
MARGIN = 40


class RenderError(ValueError):
    pass


def _color(i: int) -> str:
    hue = (i * 137.508) % 360
    return f"hsl({hue:.1f},65%,75%)"


def render_svg(decomp: Decomposition, ps: PointSet) -> str:
    if not decomp.cells:
        raise RenderError("nothing to render")
    xs = [x for x, _ in ps.points]
    ys = [y for _, y in ps.points]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0, 1)
    scale = (SIZE - 2 * MARGIN) / span

    def xy(v: int) -> str:
        x, y = ps[v]
        return f"{MARGIN + (x - x0) * scale:.2f},{SIZE - MARGIN - (y - y0) * scale:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for i, cell in enumerate(decomp.canonical_cells()):
        pts = " ".join(xy(v) for v in cell)
        out.append(f'<polygon points="{pts}" fill="{_color(i)}" stroke="#333" stroke-width="1"/>')
    hull = " ".join(xy(v) for v in convex_hull(ps))
    out.append(f'<polygon points="{hull}" fill="none" stroke="black" stroke-width="3"/>')
    rs = build_radial_structure(ps)
    for rank in range(1, rs.n + 1):
        v = rs.point(rank)
        cx, cy = xy(v).split(",")
        sign = rs.signs[rank] if rank < len(rs.signs) else None
        mark = {Sign.PLUS: "+", Sign.MINUS: "-"}.get(sign, "")
        out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>')
        out.append(
            f'<text x="{float(cx) + 5:.2f}" y="{float(cy) - 5:.2f}" font-size="12" '
            f'font-family="monospace">p{rank}{mark}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, decomp: Decomposition, ps: PointSet) -> None:
    text = render_svg(decomp, ps)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
