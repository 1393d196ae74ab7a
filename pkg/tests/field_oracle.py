"""Brute-force illuminance oracle, written independently of the package.

Everything here is recomputed from raw room data with numpy: polygon area,
containment, grid construction, box occlusion, the inverse-square cosine
law, and the ambient bounce. The test suite compares this evaluator against
the package's field function sample by sample; the two code paths must stay
independent, so nothing in this file may import luxforge internals beyond
plain data extraction in the tests themselves.
"""

from __future__ import annotations

import math

import numpy as np

BOUNDARY_EPS = 1e-9


def shoelace_area(outline: np.ndarray) -> float:
    x = outline[:, 0]
    y = outline[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def perimeter(outline: np.ndarray) -> float:
    d = np.roll(outline, -1, axis=0) - outline
    return float(np.sum(np.hypot(d[:, 0], d[:, 1])))


def points_in_polygon(outline: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Boundary-inclusive containment for an array of 2D points."""
    n = len(outline)
    x = pts[:, 0][:, None]
    y = pts[:, 1][:, None]
    x1 = outline[:, 0][None, :]
    y1 = outline[:, 1][None, :]
    x2 = np.roll(outline[:, 0], -1)[None, :]
    y2 = np.roll(outline[:, 1], -1)[None, :]

    # Crossing number per point.
    straddles = (y1 <= y) != (y2 <= y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
    crossings = np.sum(straddles & (x < xi), axis=1)
    inside = crossings % 2 == 1

    # Distance from each point to each boundary segment.
    ex = x2 - x1
    ey = y2 - y1
    seg2 = ex * ex + ey * ey
    t = np.clip(((x - x1) * ex + (y - y1) * ey) / seg2, 0.0, 1.0)
    dist = np.hypot(x - (x1 + t * ex), y - (y1 + t * ey))
    on_boundary = np.min(dist, axis=1) <= BOUNDARY_EPS
    return inside | on_boundary


def brute_grid(
    outline: np.ndarray,
    boxes: list[tuple[float, float, float, float, float]],
    spacing: float,
    workplane_height: float,
) -> np.ndarray:
    """Cell centers over the bounding box, inside the outline, not over an
    object at least as tall as the workplane. boxes: (minx, miny, maxx, maxy, height)."""
    minx, miny = outline.min(axis=0)
    maxx, maxy = outline.max(axis=0)
    nx = max(1, math.ceil((maxx - minx) / spacing))
    ny = max(1, math.ceil((maxy - miny) / spacing))
    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny))
    xs = minx + (ii.ravel() + 0.5) * spacing
    ys = miny + (jj.ravel() + 0.5) * spacing
    pts = np.column_stack([xs, ys])
    # meshgrid(ravel) of (j rows, i cols) already yields row-major y-then-x order
    keep = points_in_polygon(outline, pts)
    for bx0, by0, bx1, by1, h in boxes:
        if h >= workplane_height:
            keep &= ~((pts[:, 0] > bx0) & (pts[:, 0] < bx1) & (pts[:, 1] > by0) & (pts[:, 1] < by1))
    pts = pts[keep]
    return np.column_stack([pts, np.full(len(pts), workplane_height)])


def segment_box_blocked(
    a: np.ndarray, b: np.ndarray, box_lo: np.ndarray, box_hi: np.ndarray
) -> np.ndarray:
    """For one segment endpoint a (3,) and many endpoints b (N, 3) against one
    box, True where the open segment overlaps the box with positive length."""
    d = b - a[None, :]
    t0 = np.zeros(len(b))
    t1 = np.ones(len(b))
    inside_all = np.ones(len(b), dtype=bool)
    for k in range(3):
        dk = d[:, k]
        parallel = dk == 0.0
        inside_slab = (a[k] >= box_lo[k]) & (a[k] <= box_hi[k])
        inside_all &= np.where(parallel, inside_slab, True)
        with np.errstate(divide="ignore", invalid="ignore"):
            u0 = (box_lo[k] - a[k]) / dk
            u1 = (box_hi[k] - a[k]) / dk
        lo = np.minimum(u0, u1)
        hi = np.maximum(u0, u1)
        t0 = np.where(parallel, t0, np.maximum(t0, lo))
        t1 = np.where(parallel, t1, np.minimum(t1, hi))
    return inside_all & (t1 - t0 > 1e-12)


def brute_field(
    outline: np.ndarray,
    ceiling_height: float,
    boxes: list[tuple[float, float, float, float, float]],
    reflectances: tuple[float, float, list[float]],
    fixtures: list[dict],
    dims: list[float],
    spacing: float,
    workplane_height: float,
) -> tuple[np.ndarray, np.ndarray]:
    """(points, lux) for the room; fixtures are dicts with keys
    position, axis, flux, exponent."""
    pts = brute_grid(outline, boxes, spacing, workplane_height)
    total = np.zeros(len(pts))
    for f, dim in zip(fixtures, dims):
        pos = np.asarray(f["position"], dtype=float)
        axis = np.asarray(f["axis"], dtype=float)
        i0 = f["flux"] * (f["exponent"] + 1.0) / (2.0 * math.pi)
        v = pts - pos[None, :]
        d2 = np.sum(v * v, axis=1)
        if np.any(d2 == 0.0):
            raise ZeroDivisionError("sample coincides with fixture")
        d = np.sqrt(d2)
        cos_theta = (v @ axis) / d
        cos_xi = -v[:, 2] / d
        term = np.where(
            (cos_theta < 0.0) | (cos_xi <= 0.0),
            0.0,
            dim * i0 * np.clip(cos_theta, 0.0, None) ** f["exponent"] * cos_xi / d2,
        )
        blocked = np.zeros(len(pts), dtype=bool)
        for bx0, by0, bx1, by1, h in boxes:
            blocked |= segment_box_blocked(
                pos, pts, np.array([bx0, by0, 0.0]), np.array([bx1, by1, h])
            )
        total += np.where(blocked, 0.0, term)

    floor_r, ceiling_r, wall_r = reflectances
    area = abs(shoelace_area(outline))
    edges = np.roll(outline, -1, axis=0) - outline
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    wall_area = float(np.sum(lengths)) * ceiling_height
    total_area = 2.0 * area + wall_area
    rho = (
        area * (floor_r + ceiling_r)
        + float(np.sum(lengths * np.asarray(wall_r))) * ceiling_height
    ) / total_area
    emitted = sum(dim * f["flux"] for f, dim in zip(fixtures, dims))
    ambient = emitted * rho / (total_area * (1.0 - rho)) if rho < 1.0 else math.inf
    return pts, total + ambient
