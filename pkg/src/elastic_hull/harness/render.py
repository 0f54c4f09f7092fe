"""Frame rendering: binary PPM (one pixel per cell) and SVG."""

from __future__ import annotations

import math

import numpy as np

from ..environment import EMPTY, NailGrid

WHITE = (255, 255, 255)
BLACK = (0, 0, 0)
RED = (255, 0, 0)


def render_ppm(positions, grid: NailGrid) -> bytes:
    """P6 image, row 0 of the grid on the first image row."""
    img = np.full((grid.height, grid.width, 3), 255, dtype=np.uint8)
    img[np.asarray(grid.cells) != EMPTY] = BLACK
    pos = np.asarray(positions, dtype=float).reshape(-1, 2)
    if len(pos):
        cols = np.floor(pos[:, 0]).astype(int)
        rows = np.floor(pos[:, 1]).astype(int)
        ok = (cols >= 0) & (cols < grid.width) & (rows >= 0) & (rows < grid.height)
        img[rows[ok], cols[ok]] = RED
    header = f"P6\n{grid.width} {grid.height}\n255\n".encode("ascii")
    return header + img.tobytes()


def render_svg(positions, grid: NailGrid) -> bytes:
    pos = np.asarray(positions, dtype=float).reshape(-1, 2)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{grid.width}" height="{grid.height}" viewBox="0 0 {grid.width} {grid.height}">',
        f'<rect width="{grid.width}" height="{grid.height}" fill="white"/>',
    ]
    for x, y in grid.nails:
        out.append(f'<circle cx="{x:.6g}" cy="{y:.6g}" r="{grid.r_nail}" fill="black"/>')
    if len(pos):
        pts = " ".join(f"{x:.4f},{y:.4f}" for x, y in pos)
        width = max(0.2, math.sqrt(grid.width * grid.height) / 400)
        out.append(f'<polygon points="{pts}" fill="none" stroke="red" stroke-width="{width:.3g}"/>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def render_frame(band_or_positions, grid: NailGrid, format: str = "ppm") -> bytes:
    positions = getattr(band_or_positions, "pos", band_or_positions)
    if format == "ppm":
        return render_ppm(positions, grid)
    if format == "svg":
        return render_svg(positions, grid)
    raise ValueError(f"unknown frame format {format!r}")


class FrameWriter:
    """Frame sink writing ``frame_<tick>.<ext>`` files into a directory."""

    def __init__(self, directory, format: str = "svg"):
        self.directory = directory
        self.format = format
        self.written = []

    def __call__(self, tick, band, grid) -> None:
        path = self.directory / f"frame_{tick:07d}.{self.format}"
        path.write_bytes(render_frame(band, grid, self.format))
        self.written.append(path)
