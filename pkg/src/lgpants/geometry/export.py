"""Text exports for closed planar polylines: CSV vertex lists and a one-path SVG."""

import numpy as np

from .link import Polyline2

SVG_MARGIN = 0.05


def polyline_csv(poly: Polyline2) -> str:
    """Header ``x,y`` then one vertex per line, closing vertex included.

    Floats are written with ``repr``, which round-trips exactly and never
    depends on the locale.
    """
    lines = ["x,y"]
    lines += [f"{float(x)!r},{float(y)!r}" for x, y in poly.points]
    return "\n".join(lines) + "\n"


def read_polyline_csv(text: str) -> Polyline2:
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows or rows[0].strip() != "x,y":
        raise ValueError("missing 'x,y' header")
    pts = np.array([[float(v) for v in row.split(",")] for row in rows[1:]])
    return Polyline2(pts)


def polyline_svg(poly: Polyline2, stroke_width: float = None) -> str:
    """A single closed ``<path>``; the y axis is flipped so the picture is upright."""
    pts = poly.vertices * np.array([1.0, -1.0])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = hi - lo
    pad = SVG_MARGIN * span
    x0, y0 = lo - pad
    w, h = span + 2 * pad
    width = stroke_width if stroke_width is not None else 0.004 * float(max(w, h))
    d = "M " + " L ".join(f"{float(x)!r} {float(y)!r}" for x, y in pts) + " Z"
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{float(x0)!r} {float(y0)!r} {float(w)!r} {float(h)!r}">\n'
        f'  <path d="{d}" fill="none" stroke="black" stroke-width="{width!r}"/>\n'
        "</svg>\n"
    )
