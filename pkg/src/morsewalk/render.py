"""SVG drawings of walks on the lattice, with ``x`` to the right and genus upwards."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .errors import PreconditionError
from .lattice_walk import CompletedWalk
from .walkgraph import visited_points

CELL = 40
MARGIN = 30

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _num(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render_walks(walks: list[CompletedWalk], highlight: int | None = None,
                 overlays: list[list[tuple[int, int]]] = (), mark_shared: bool = False) -> str:
    """Render ``walks`` as polylines over the lattice grid.

    ``highlight`` picks the walk drawn bold.  ``overlays`` are extra point paths drawn
    thin and dashed (e.g. translated shortest walks).  With ``mark_shared``, points of
    height ``1 .. g-1`` visited by two or more walks get a ring.
    """
    genera = {w.g for w in walks}
    if len(genera) > 1:
        raise PreconditionError(f"walks must share one genus, got {sorted(genera)}")
    if highlight is not None and not 0 <= highlight < len(walks):
        raise PreconditionError(f"highlight index {highlight} out of range")
    paths = [list(w.positions) for w in walks] + [list(p) for p in overlays]
    if not paths:
        raise PreconditionError("nothing to render")
    xs = [p[0] for path in paths for p in path]
    ys = [p[1] for path in paths for p in path]
    x_max, y_max = max(max(xs), 2), max(max(ys), 1)
    width = MARGIN * 2 + CELL * x_max
    height = MARGIN * 2 + CELL * y_max

    def at(p):
        return MARGIN + CELL * p[0], height - MARGIN - CELL * p[1]

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        '<g stroke="#dddddd" stroke-width="1">',
    ]
    for x in range(x_max + 1):
        (x0, y0), (_, y1) = at((x, 0)), at((x, y_max))
        out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>')
    for y in range(y_max + 1):
        (x0, y0), (x1, _) = at((0, y)), at((x_max, y))
        out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>')
    out.append("</g>")
    # x = 0 lies outside the domain; draw it as the exit boundary
    (bx, by0), (_, by1) = at((0, 0)), at((0, y_max))
    out.append(f'<line x1="{bx}" y1="{by0}" x2="{bx}" y2="{by1}" stroke="#999999" stroke-dasharray="4 3"/>')

    def polyline(path, **attrs):
        pts = " ".join(f"{_num(a)},{_num(b)}" for a, b in map(at, path))
        extra = "".join(f" {k.replace('_', '-')}={quoteattr(str(v))}" for k, v in attrs.items())
        return f'<polyline points="{pts}" fill="none"{extra}/>'

    for k, path in enumerate(overlays):
        out.append(polyline(path, stroke="#888888", stroke_width=1, stroke_dasharray="3 2",
                            **{"class": f"overlay overlay-{k}"}))
    order = [i for i in range(len(walks)) if i != highlight]
    if highlight is not None:
        order.append(highlight)
    for i in order:
        w = walks[i]
        bold = i == highlight
        attrs = {"stroke": "#000000" if bold else _PALETTE[i % len(_PALETTE)],
                 "stroke_width": 4 if bold else 2,
                 "class": f"walk walk-{i}" + (" highlight" if bold else ""),
                 "data_steps": str(w)}
        if w.n == 0:
            cx, cy = at(w.positions[0])
            out.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="{attrs["stroke"]}" '
                       f'class="{attrs["class"]}" data-steps=""/>')
        else:
            out.append(polyline(w.positions, **attrs))
    if mark_shared and walks:
        g = walks[0].g
        seen: dict = {}
        for w in walks:
            for p in visited_points(w, g):
                seen[p] = seen.get(p, 0) + 1
        for p in sorted(q for q, c in seen.items() if c > 1):
            cx, cy = at(p)
            out.append(f'<circle cx="{cx}" cy="{cy}" r="6" fill="none" stroke="#d62728" class="shared"/>')
    origin = at((1, 0))
    out.append(f'<text x="{origin[0]}" y="{origin[1] + 18}" font-size="12" text-anchor="middle">(1,0)</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
