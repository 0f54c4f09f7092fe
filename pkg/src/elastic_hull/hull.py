"""Reading a convex hull off a relaxed band."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .environment import NailGrid
from .errors import EmptyInput, NotConverged
from .geometry import Vec2, orientation, signed_area


@dataclass(frozen=True)
class HullPolygon:
    """Strictly convex CCW vertex cycle starting at the lexicographic minimum.

    ``degenerate`` marks inputs without a 2D hull; ``vertices`` then holds the
    two extreme points (one if all points coincide).
    """

    vertices: tuple[Vec2, ...]
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.vertices)

    def as_array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float).reshape(-1, 2)


def _degenerate(points: Iterable[Sequence[float]]) -> HullPolygon:
    pts = sorted({Vec2(float(p[0]), float(p[1])) for p in points})
    if not pts:
        raise EmptyInput("no points")
    if len(pts) == 1:
        return HullPolygon((pts[0],), degenerate=True)
    return HullPolygon((pts[0], pts[-1]), degenerate=True)


def _drop_collinear(cycle: list[Vec2]) -> list[Vec2]:
    changed = True
    while changed and len(cycle) >= 3:
        changed = False
        n = len(cycle)
        for i in range(n):
            a, b, c = cycle[i - 1], cycle[i], cycle[(i + 1) % n]
            if b == a or orientation(a, b, c) == 0:
                del cycle[i]
                changed = True
                break
    return cycle


def canonical(poly: Sequence[Sequence[float]]) -> HullPolygon:
    """Normal form of a convex cycle: CCW, no collinear or repeated vertices,
    rotated to start at the lexicographically smallest vertex."""
    cycle = [Vec2(float(p[0]), float(p[1])) for p in poly]
    if len(cycle) >= 3 and signed_area(cycle) < 0:
        cycle.reverse()
    cycle = _drop_collinear(cycle)
    if len(cycle) < 3:
        return _degenerate(poly)
    start = cycle.index(min(cycle))
    return HullPolygon(tuple(cycle[start:] + cycle[:start]))


def convex_filter(points: Sequence[Sequence[float]]) -> HullPolygon:
    """Order points by angle about their centroid and scan away reflex and
    collinear vertices."""
    pts = sorted({Vec2(float(p[0]), float(p[1])) for p in points})
    if len(pts) < 3:
        return _degenerate(pts) if pts else _degenerate(points)
    cx = math.fsum(p.x for p in pts) / len(pts)
    cy = math.fsum(p.y for p in pts) / len(pts)
    pts.sort(key=lambda p: (math.atan2(p.y - cy, p.x - cx), (p.x - cx) ** 2 + (p.y - cy) ** 2))
    # the lexicographic minimum is always a hull vertex
    start = pts.index(min(pts))
    ordered = pts[start:] + pts[:start]
    stack: list[Vec2] = []
    for p in ordered + [ordered[0]]:
        while len(stack) >= 2 and orientation(stack[-2], stack[-1], p) <= 0:
            stack.pop()
        stack.append(p)
    stack.pop()
    hull = canonical(stack)
    return _degenerate(pts) if hull.degenerate else hull


def contacts(result, grid: NailGrid, delta: float | None = None) -> set[int]:
    """Nails the fixed band rests against.

    The union of nails hit during the final convergence window and nails
    whose disk lies within ``delta`` cells of a final particle position.
    """
    if not result.converged:
        raise NotConverged("hull extraction needs a converged run")
    if delta is None:
        delta = grid.r_nail + 1.0
    window = result.params.window
    first = result.ticks_elapsed - window + 1
    ids = {e.nail for e in result.contacts if e.tick >= first}

    nails = grid.nail_array
    pos = result.band.pos
    limit = grid.r_nail + delta
    for chunk in range(0, len(nails), 256):
        block = nails[chunk:chunk + 256]
        d2 = ((block[:, None, :] - pos[None, :, :]) ** 2).sum(axis=2)
        near = np.nonzero(d2.min(axis=1) <= limit * limit)[0]
        ids.update(int(chunk + i) for i in near)
    return ids


def extract_hull(contact_ids: Iterable[int], grid: NailGrid) -> HullPolygon:
    ids = sorted(set(contact_ids))
    if not ids:
        raise EmptyInput("no contacted nails")
    return convex_filter([grid.nails[i] for i in ids])
