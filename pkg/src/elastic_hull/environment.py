"""Discrete world: a dense cell table in which nails are rasterised as blocked disks.

Band particles live in continuous coordinates and only ever ask the table
whether a cell holds a nail, so a neighbourhood query is one array read no
matter how many nails exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import EmptyInput, OutOfBounds
from .geometry import Vec2

EMPTY = -1
WALL = -2


class Cell(NamedTuple):
    col: int
    row: int


# Every out-of-bounds position maps here; is_blocked reports it as WALL.
WALL_CELL = Cell(-1, -1)


@dataclass
class NailGrid:
    width: int
    height: int
    cells: np.ndarray  # (height, width) int32, row-major; EMPTY or nail index
    nails: tuple[Vec2, ...]
    r_nail: int = 1

    @property
    def nail_array(self) -> np.ndarray:
        return np.array(self.nails, dtype=float).reshape(-1, 2)

    def blocked_count(self) -> int:
        return int((np.asarray(self.cells) != EMPTY).sum())


def build_grid(points: Sequence[Sequence[float]], width: int, height: int,
               r_nail: int = 1) -> NailGrid:
    if len(points) == 0:
        raise EmptyInput("no nails given")
    if r_nail < 1:
        raise ValueError("r_nail must be >= 1")
    nails = []
    for p in points:
        x, y = float(p[0]), float(p[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise OutOfBounds(f"non-finite nail {p!r}")
        if not (0.0 <= x < width and 0.0 <= y < height):
            raise OutOfBounds(f"nail {p!r} outside {width}x{height} grid")
        nails.append(Vec2(x, y))

    cells = np.full((height, width), EMPTY, dtype=np.int32)
    best = np.full((height, width), np.inf)
    r2 = float(r_nail) ** 2
    for idx, (x, y) in enumerate(nails):
        c0 = max(0, int(math.floor(x - r_nail - 0.5)))
        c1 = min(width - 1, int(math.ceil(x + r_nail - 0.5)))
        r0 = max(0, int(math.floor(y - r_nail - 0.5)))
        r1 = min(height - 1, int(math.ceil(y + r_nail - 0.5)))
        cols = np.arange(c0, c1 + 1)
        rows = np.arange(r0, r1 + 1)
        dx = cols[None, :] + 0.5 - x
        dy = rows[:, None] + 0.5 - y
        d2 = dx * dx + dy * dy
        window = best[r0:r1 + 1, c0:c1 + 1]
        # strict < keeps the lower index on equidistant cells
        take = (d2 <= r2) & (d2 < window)
        window[take] = d2[take]
        cells[r0:r1 + 1, c0:c1 + 1][take] = idx
    cells.setflags(write=False)
    return NailGrid(width, height, cells, tuple(nails), r_nail)


def cell_of(grid: NailGrid, pos: Sequence[float]) -> Cell:
    col = math.floor(pos[0])
    row = math.floor(pos[1])
    if 0 <= col < grid.width and 0 <= row < grid.height:
        return Cell(col, row)
    return WALL_CELL


def is_blocked(grid: NailGrid, cell: Cell) -> int:
    """Nail index stored in ``cell``, EMPTY, or WALL outside the world."""
    col, row = cell
    if not (0 <= col < grid.width and 0 <= row < grid.height):
        return WALL
    return int(grid.cells[row, col])


def lookup_many(grid: NailGrid, positions: np.ndarray) -> np.ndarray:
    """Vectorised ``is_blocked(cell_of(pos))`` for an (n, 2) array."""
    cols = np.floor(positions[:, 0])
    rows = np.floor(positions[:, 1])
    inside = (cols >= 0) & (cols < grid.width) & (rows >= 0) & (rows < grid.height)
    out = np.full(len(positions), WALL, dtype=np.int64)
    out[inside] = grid.cells[rows[inside].astype(np.intp), cols[inside].astype(np.intp)]
    return out


def linear_lookup(grid: NailGrid, pos: Sequence[float]) -> int:
    """Same answer as the table, found by scanning every nail disk.

    Only used as the naive baseline for the lookup benchmark.
    """
    cell = cell_of(grid, pos)
    if cell == WALL_CELL:
        return WALL
    cx = cell.col + 0.5
    cy = cell.row + 0.5
    r2 = float(grid.r_nail) ** 2
    found = EMPTY
    best = math.inf
    for idx, (x, y) in enumerate(grid.nails):
        d2 = (cx - x) ** 2 + (cy - y) ** 2
        if d2 <= r2 and d2 < best:
            best = d2
            found = idx
    return found
