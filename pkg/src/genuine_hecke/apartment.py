"""
Rank <= 2 apartment pictures.

All geometry (wall segments, alcove polygons) is computed exactly in Y-coordinates
with Fractions and only converted to floats when the SVG text is written, via a
W-invariant Euclidean embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chi_geometry import ChiGeometry
from .root_datum import AffineRoot, RootDatum, simple_affine_roots, weyl_group

Point = tuple[Fraction, Fraction]


@dataclass
class Apartment:
    svg: str
    walls_drawn: int
    chi_walls: int
    diamond_walls: int
    chamber_walls: list[AffineRoot] = field(default_factory=list)
    diamond_chamber_walls: list[AffineRoot] = field(default_factory=list)


def _functional2(datum: RootDatum, i: int) -> tuple[Fraction, Fraction]:
    f = datum.functionals[i]
    return (Fraction(f[0]), Fraction(f[1]) if len(f) > 1 else Fraction(0))


def _clip_line(a: tuple[Fraction, Fraction], k: int, B: Fraction) -> tuple[Point, Point] | None:
    """Segment of {a . x + k = 0} inside the box [-B, B]^2."""
    pts = set()
    a0, a1 = a
    for x in (-B, B):
        if a1 != 0:
            y = -(a0 * x + k) / a1
            if -B <= y <= B:
                pts.add((x, y))
    for y in (-B, B):
        if a0 != 0:
            x = -(a1 * y + k) / a0
            if -B <= x <= B:
                pts.add((x, y))
    if len(pts) < 2:
        return None
    ps = sorted(pts)
    return ps[0], ps[-1]


def _clip_polygon(poly: list[Point], a: tuple[Fraction, Fraction], k: int) -> list[Point]:
    """Sutherland-Hodgman against the half-plane a . x + k >= 0."""
    def val(p):
        return a[0] * p[0] + a[1] * p[1] + k

    out = []
    for idx, p in enumerate(poly):
        q = poly[(idx + 1) % len(poly)]
        vp, vq = val(p), val(q)
        if vp >= 0:
            out.append(p)
        if (vp >= 0) != (vq >= 0):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _region(datum: RootDatum, walls: list[AffineRoot], B: Fraction) -> list[Point]:
    poly = [(-B, -B), (B, -B), (B, B), (-B, B)]
    for a in walls:
        poly = _clip_polygon(poly, _functional2(datum, a.root_index), a.offset)
        if not poly:
            break
    return poly


def _embedding(datum: RootDatum) -> np.ndarray:
    """R with R^T R a W-invariant Gram matrix on Y (padded to 2D in rank 1)."""
    r = datum.rank
    G = np.zeros((r, r))
    for w in weyl_group(datum):
        M = np.array(w.matrix, dtype=float)
        G += M.T @ M
    R = np.linalg.cholesky(G).T
    if r == 1:
        R = np.array([[R[0, 0], 0.0], [0.0, R[0, 0]]])
    return R / np.sqrt(len(weyl_group(datum)))


def apartment_svg(geom: ChiGeometry, bound: int = 3, size: int = 600) -> Apartment:
    datum = geom.datum
    if datum.rank > 2:
        raise ValueError(f"apartment pictures need rank <= 2 (got rank {datum.rank})")
    B = Fraction(bound)
    R = _embedding(datum)
    span = float(np.abs(R).sum(axis=1).max() * bound)
    scale = size / (2.2 * span)

    def screen(p: Point) -> tuple[float, float]:
        v = R @ np.array([float(p[0]), float(p[1])])
        return (size / 2 + scale * v[0], size / 2 - scale * v[1])

    def fmt(p: Point) -> str:
        x, y = screen(p)
        return f"{x:.3f},{y:.3f}"

    lines_thin, lines_chi, lines_diamond = [], [], []
    diamond = geom.diamond_system
    for i in datum.positive_indices:
        a = _functional2(datum, i)
        reach = int((abs(a[0]) + abs(a[1])) * B) + 1
        for k in range(-reach, reach + 1):
            seg = _clip_line(a, k, B)
            if seg is None or seg[0] == seg[1]:
                continue
            (x1, y1), (x2, y2) = screen(seg[0]), screen(seg[1])
            tag = (f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                   f'data-root="{i}" data-offset="{k}"/>')
            lines_thin.append(tag)
            if geom.system.contains(AffineRoot(i, k)):
                lines_chi.append(tag)
            if diamond.contains(AffineRoot(i, k)):
                lines_diamond.append(tag)

    def polygon(walls, style):
        poly = _region(datum, walls, B)
        if len(poly) < 3:
            return ""
        return f'<polygon points="{" ".join(fmt(p) for p in poly)}" {style}/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        polygon(simple_affine_roots(datum), 'fill="#e04040" fill-opacity="0.5" stroke="none" id="A0"'),
        '<g stroke="#bbbbbb" stroke-width="0.6" id="walls">', *lines_thin, '</g>',
        '<g stroke="#2e9e3e" stroke-width="1.6" id="diamond-walls">', *lines_diamond, '</g>',
        '<g stroke="#e0b000" stroke-width="1.2" stroke-dasharray="4,3" id="chi-walls">', *lines_chi, '</g>',
    ]
    if geom.diamond_delta:
        parts.append(polygon(geom.diamond_delta, 'fill="none" stroke="#2e9e3e" stroke-width="4" id="A-diamond"'))
    if geom.delta:
        parts.append(polygon(geom.delta, 'fill="none" stroke="#e0b000" stroke-width="4" id="A-chi"'))
    parts.append("</svg>")
    svg = "\n".join(p for p in parts if p) + "\n"
    return Apartment(svg, len(lines_thin), len(lines_chi), len(lines_diamond),
                     list(geom.delta), list(geom.diamond_delta))
