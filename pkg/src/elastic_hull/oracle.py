"""Exact classical convex hulls used as ground truth."""

from __future__ import annotations

import functools
from typing import Sequence

import numpy as np

from .geometry import ORIENT_TOL, Vec2, orientation
from .hull import HullPolygon, _degenerate, canonical, convex_filter


def _unique(points) -> list[Vec2]:
    return sorted({Vec2(float(p[0]), float(p[1])) for p in points})


def _dist2(a: Vec2, b: Vec2) -> float:
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


def graham_scan(points: Sequence[Sequence[float]]) -> HullPolygon:
    pts = _unique(points)
    if len(pts) < 3:
        return _degenerate(points)
    pivot = min(pts, key=lambda p: (p.y, p.x))
    rest = [p for p in pts if p != pivot]

    def by_angle(a: Vec2, b: Vec2) -> int:
        o = orientation(pivot, a, b)
        if o:
            return -o
        # collinear with the pivot: nearer first
        da, db = _dist2(pivot, a), _dist2(pivot, b)
        return (da > db) - (da < db)

    rest.sort(key=functools.cmp_to_key(by_angle))
    stack = [pivot]
    for p in rest:
        while len(stack) >= 2 and orientation(stack[-2], stack[-1], p) <= 0:
            stack.pop()
        stack.append(p)
    if len(stack) >= 3 and orientation(stack[-2], stack[-1], pivot) <= 0:
        stack.pop()
    if len(stack) < 3:
        return _degenerate(pts)
    return canonical(stack)


def jarvis_march(points: Sequence[Sequence[float]]) -> HullPolygon:
    pts = _unique(points)
    if len(pts) < 3:
        return _degenerate(points)
    start = pts[0]
    hull = []
    current = start
    while True:
        hull.append(current)
        candidate = None
        for p in pts:
            if p == current:
                continue
            if candidate is None:
                candidate = p
                continue
            o = orientation(current, candidate, p)
            # take p if it lies clockwise of the candidate, or further along it
            if o < 0 or (o == 0 and _dist2(current, p) > _dist2(current, candidate)):
                candidate = p
        current = candidate
        if current == start or len(hull) > len(pts):
            break
    if len(hull) < 3:
        return _degenerate(pts)
    return canonical(hull)


def brute_force_hull(points: Sequence[Sequence[float]], tol: float = ORIENT_TOL) -> HullPolygon:
    """O(N^3) edge test: (i, j) is a hull edge when every point lies left of
    or on the line i->j, and the ones on it lie within the segment."""
    pts = _unique(points)
    if len(pts) < 3:
        return _degenerate(points)
    p = np.array(pts, dtype=float)
    n = len(p)
    dx = p[None, :, 0] - p[:, None, 0]  # dx[i, j] = p[j].x - p[i].x
    dy = p[None, :, 1] - p[:, None, 1]
    c = dx[:, :, None] * dy[:, None, :] - dy[:, :, None] * dx[:, None, :]
    edge = ~(c < -tol).any(axis=2) & ~np.eye(n, dtype=bool)
    # points on the line i->j must also lie within the segment
    i, j, k = np.nonzero((np.abs(c) <= tol) & edge[:, :, None])
    dot = dx[i, j] * dx[i, k] + dy[i, j] * dy[i, k]
    seg2 = dx[i, j] ** 2 + dy[i, j] ** 2
    outside = (dot < 0) | (dot > seg2)
    edge[i[outside], j[outside]] = False
    verts = np.nonzero(edge.any(axis=1))[0]
    if len(verts) < 3:
        return _degenerate(pts)
    return convex_filter([pts[i] for i in verts])


def hull_equal(a: HullPolygon, b: HullPolygon) -> bool:
    return a.degenerate == b.degenerate and a.vertices == b.vertices
