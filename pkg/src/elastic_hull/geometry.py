"""Planar primitives shared by the simulator, the hull extractor and the oracles."""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

# Cross products with |value| <= ORIENT_TOL (squared cell units) count as collinear.
ORIENT_TOL = 1e-9


class Vec2(NamedTuple):
    x: float
    y: float

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y)


def vec_sum(a: Vec2, b: Vec2) -> Vec2:
    return Vec2(a.x + b.x, a.y + b.y)


def cross(p: Sequence[float], q: Sequence[float], r: Sequence[float]) -> float:
    """(q - p) x (r - p)."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orientation(p: Sequence[float], q: Sequence[float], r: Sequence[float],
                tol: float = ORIENT_TOL) -> int:
    """+1 for a counter-clockwise turn p->q->r, -1 for clockwise, 0 if collinear."""
    c = cross(p, q, r)
    if c > tol:
        return 1
    if c < -tol:
        return -1
    return 0


def _as_ring(ring) -> np.ndarray:
    arr = np.asarray(ring, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
        raise ValueError("a ring needs at least 3 vertices")
    return arr


def points_in_ring(points, ring, tol: float = ORIENT_TOL) -> np.ndarray:
    """Even-odd containment of many points; points on an edge count as inside.

    Edges are bucketed by the integer rows they span, so each point is only
    tested against the edges sharing its row.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    poly = _as_ring(ring)
    a = poly
    b = np.roll(poly, -1, axis=0)
    lo = np.floor(np.minimum(a[:, 1], b[:, 1]) - tol).astype(np.int64)
    hi = np.floor(np.maximum(a[:, 1], b[:, 1]) + tol).astype(np.int64)

    span = hi - lo + 1
    edge_of = np.repeat(np.arange(len(a)), span)
    offsets = np.arange(len(edge_of)) - np.repeat(np.cumsum(span) - span, span)
    bucket = lo[edge_of] + offsets
    order = np.argsort(bucket, kind="stable")
    bucket, edge_of = bucket[order], edge_of[order]

    pb = np.floor(pts[:, 1]).astype(np.int64)
    first = np.searchsorted(bucket, pb, side="left")
    last = np.searchsorted(bucket, pb, side="right")
    count = last - first
    pt_of = np.repeat(np.arange(len(pts)), count)
    idx = np.arange(count.sum()) - np.repeat(np.cumsum(count) - count, count)
    e = edge_of[first[pt_of] + idx]

    px, py = pts[pt_of, 0], pts[pt_of, 1]
    ax, ay = a[e, 0], a[e, 1]
    bx, by = b[e, 0], b[e, 1]

    cr = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    in_box = ((px >= np.minimum(ax, bx) - tol) & (px <= np.maximum(ax, bx) + tol)
              & (py >= np.minimum(ay, by) - tol) & (py <= np.maximum(ay, by) + tol))
    on_edge = np.zeros(len(pts), dtype=bool)
    on_edge[pt_of[(np.abs(cr) <= tol) & in_box]] = True

    straddles = (ay > py) != (by > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = ax + (py - ay) * (bx - ax) / (by - ay)
    hits = np.bincount(pt_of[straddles & (px < x_cross)], minlength=len(pts))
    return (hits % 2 == 1) | on_edge


def point_in_ring(pt: Sequence[float], ring) -> bool:
    return bool(points_in_ring([pt], ring)[0])


def perimeter(ring) -> float:
    poly = _as_ring(ring)
    d = np.roll(poly, -1, axis=0) - poly
    return float(np.sqrt((d * d).sum(axis=1)).sum())


def signed_area(ring) -> float:
    poly = np.asarray(ring, dtype=float)
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
