"""SVG export of lattices: quad mesh plus an optional circle pattern.

The map sends the square grid to an orthogonal circle pattern; the circle
centers sit at the lattice points sharing the origin's index parity (n+m
even; the three initial values already show it, with f(1,0) and f(0,1)
equidistant from f(0,0)).  The equal-distance property is verified
numerically before any circle is drawn; if it fails anywhere the renderer
falls back to the plain quad mesh.
"""

from __future__ import annotations

import numpy as np

from .core import Lattice

VIEWPORT = 1000.0
MARGIN = 40.0
CIRCLE_DISTANCE_TOL = 1e-6


def _neighbor_distances(values: np.ndarray, n: int, m: int) -> list[float]:
    f = values[n, m]
    return [abs(complex(values[n + 1, m] - f)), abs(complex(values[n - 1, m] - f)),
            abs(complex(values[n, m + 1] - f)), abs(complex(values[n, m - 1] - f))]


def circle_centers(lat: Lattice):
    """Even-parity interior points with equal neighbour distances, or None.

    Returns a list of (center, radius) when the equal-distance property
    holds at every even-parity interior point, None otherwise.
    """
    v = lat.values
    found = []
    for n in range(1, lat.N):
        for m in range(1, lat.N):
            if (n + m) % 2 == 1:
                continue
            d = _neighbor_distances(v, n, m)
            mean = sum(d) / 4.0
            if mean == 0.0 or max(abs(x - mean) for x in d) > CIRCLE_DISTANCE_TOL * max(mean, 1.0):
                return None
            found.append((complex(v[n, m]), mean))
    return found


def render_lattice_svg(lat: Lattice, with_circles: bool = True) -> str:
    pts = lat.to_complex_array()
    xs = pts.real
    ys = pts.imag
    lo_x, hi_x = float(xs.min()), float(xs.max())
    lo_y, hi_y = float(ys.min()), float(ys.max())
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-30)
    scale = (VIEWPORT - 2 * MARGIN) / span

    def to_px(z: complex) -> tuple[float, float]:
        # SVG y axis points down
        return (MARGIN + (z.real - lo_x) * scale,
                VIEWPORT - MARGIN - (z.imag - lo_y) * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {VIEWPORT:.0f} {VIEWPORT:.0f}">',
        f'<rect width="{VIEWPORT:.0f}" height="{VIEWPORT:.0f}" fill="white"/>',
    ]
    for n in range(lat.N + 1):
        row = " ".join("{:.2f},{:.2f}".format(*to_px(complex(pts[n, m])))
                       for m in range(lat.N + 1))
        parts.append(f'<polyline points="{row}" fill="none" '
                     f'stroke="#27408b" stroke-width="1"/>')
    for m in range(lat.N + 1):
        col = " ".join("{:.2f},{:.2f}".format(*to_px(complex(pts[n, m])))
                       for n in range(lat.N + 1))
        parts.append(f'<polyline points="{col}" fill="none" '
                     f'stroke="#27408b" stroke-width="1"/>')
    if with_circles:
        circles = circle_centers(lat)
        if circles:
            for center, radius in circles:
                cx, cy = to_px(center)
                parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" '
                             f'r="{radius * scale:.2f}" fill="none" '
                             f'stroke="#b22222" stroke-width="0.8"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
