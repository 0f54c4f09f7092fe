"""The elastic band: a closed ring of particle agents.

Each particle is pulled toward its two ring neighbours, loses a fixed amount
of speed per tick to friction and moves in short sub-steps so that it stops
dead in front of a nail instead of passing through it.

Two code paths exist for every per-tick operation: a scalar one that handles
a single particle (``calculate_state``, ``move_particle``) and a vectorised
one that handles the whole ring at once (``calculate_all``, ``move_all``).
They evaluate the same floating point expressions in the same order and give
bitwise-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .environment import EMPTY, WALL, Cell, NailGrid, cell_of, is_blocked, lookup_many
from .errors import MarginTooLarge, TooFewParticles
from .geometry import Vec2, perimeter
from .params import SimParams

MIN_PARTICLES = 8


class ContactEvent(NamedTuple):
    particle: int
    nail: int
    tick: int


@dataclass
class Band:
    pos: np.ndarray  # (P, 2)
    vel: np.ndarray
    acc: np.ndarray
    mass: float = 1.0
    staged_vel: np.ndarray = field(default=None, repr=False)
    staged_acc: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.pos)
        if n < MIN_PARTICLES:
            raise TooFewParticles(f"a band needs at least {MIN_PARTICLES} particles, got {n}")
        if self.staged_vel is None:
            self.staged_vel = np.zeros((n, 2))
        if self.staged_acc is None:
            self.staged_acc = np.zeros((n, 2))

    def __len__(self) -> int:
        return len(self.pos)

    def copy(self) -> "Band":
        return Band(self.pos.copy(), self.vel.copy(), self.acc.copy(), self.mass,
                    self.staged_vel.copy(), self.staged_acc.copy())

    def perimeter(self) -> float:
        return perimeter(self.pos)

    def speeds(self) -> np.ndarray:
        return np.sqrt(self.vel[:, 0] * self.vel[:, 0] + self.vel[:, 1] * self.vel[:, 1])

    def commit(self) -> None:
        self.acc[:] = self.staged_acc
        self.vel[:] = self.staged_vel


def auto_particle_count(grid: NailGrid, margin: float) -> int:
    pts = grid.nail_array
    w, h = pts.max(axis=0) - pts.min(axis=0)
    nail_box = 2.0 * (w + h)
    band_box = nail_box + 8.0 * margin
    return max(64, 4 * math.ceil(nail_box), math.ceil(band_box))


def init_band(grid: NailGrid, margin: float, particle_count: int, mass: float = 1.0) -> Band:
    """Particles spaced evenly by arc length along the margin-expanded nail
    bounding box, counter-clockwise from its lower-left corner, at rest."""
    if particle_count < MIN_PARTICLES:
        raise TooFewParticles(
            f"a band needs at least {MIN_PARTICLES} particles, got {particle_count}")
    pts = grid.nail_array
    x0, y0 = pts.min(axis=0) - margin
    x1, y1 = pts.max(axis=0) + margin
    if not (x0 > 0 and y0 > 0 and x1 < grid.width and y1 < grid.height):
        raise MarginTooLarge(
            f"band rectangle [{x0}, {x1}]x[{y0}, {y1}] leaves the "
            f"{grid.width}x{grid.height} grid")
    w, h = x1 - x0, y1 - y0
    total = 2.0 * (w + h)
    s = np.arange(particle_count) * (total / particle_count)
    pos = np.empty((particle_count, 2))
    for i, d in enumerate(s):
        if d < w:
            pos[i] = (x0 + d, y0)
        elif d < w + h:
            pos[i] = (x1, y0 + (d - w))
        elif d < 2 * w + h:
            pos[i] = (x1 - (d - w - h), y1)
        else:
            pos[i] = (x0, y1 - (d - 2 * w - h))
    zeros = np.zeros_like(pos)
    return Band(pos, zeros.copy(), zeros.copy(), mass)


def tension_force(band: Band, i: int, k: float) -> Vec2:
    """Sum of linear zero-rest-length pulls toward both ring neighbours."""
    n = len(band)
    px, py = band.pos[i]
    lx, ly = band.pos[(i - 1) % n]
    rx, ry = band.pos[(i + 1) % n]
    return Vec2(k * (lx - px) + k * (rx - px), k * (ly - py) + k * (ry - py))


def tension_all(pos: np.ndarray, k: float) -> np.ndarray:
    left = np.roll(pos, 1, axis=0)
    right = np.roll(pos, -1, axis=0)
    return k * (left - pos) + k * (right - pos)


def apply_friction(vel, eps_f: float) -> Vec2:
    """Shrink the speed by ``eps_f`` keeping the direction; zero it if it
    does not exceed ``eps_f``."""
    vx, vy = float(vel[0]), float(vel[1])
    speed = math.sqrt(vx * vx + vy * vy)
    if speed > eps_f:
        scale = (speed - eps_f) / speed
        return Vec2(vx * scale, vy * scale)
    return Vec2(0.0, 0.0)


def friction_all(vel: np.ndarray, eps_f) -> np.ndarray:
    """``apply_friction`` over an (n, 2) array; ``eps_f`` may be per row."""
    speed = np.sqrt(vel[:, 0] * vel[:, 0] + vel[:, 1] * vel[:, 1])
    eps = np.broadcast_to(np.asarray(eps_f, dtype=float), speed.shape)
    moving = speed > eps
    out = np.zeros_like(vel)
    scale = (speed[moving] - eps[moving]) / speed[moving]
    out[moving] = vel[moving] * scale[:, None]
    return out


def calculate_state(band: Band, i: int, params: SimParams) -> tuple[Vec2, Vec2]:
    """Phase one for particle ``i``: stage next acceleration and velocity.

    Reads only tick-start positions and writes only staging slot ``i``.
    """
    fx, fy = tension_force(band, i, params.k)
    ax, ay = fx / band.mass, fy / band.mass
    vx, vy = band.vel[i]
    vel = apply_friction((vx + ax * params.dt, vy + ay * params.dt), params.eps_f)
    band.staged_acc[i] = (ax, ay)
    band.staged_vel[i] = vel
    return Vec2(ax, ay), vel


def calculate_all(band: Band, params: SimParams) -> None:
    acc = tension_all(band.pos, params.k) / band.mass
    band.staged_acc[:] = acc
    band.staged_vel[:] = friction_all(band.vel + acc * params.dt, params.eps_f)


def substep_count(distance: float, eps_move: float) -> int:
    return math.ceil(distance / eps_move)


def _side_cells(c0: int, r0: int, c1: int, r1: int, p, q) -> list[tuple[int, int]]:
    """Cells a short segment p->q passes through between its end cells when
    it moves diagonally from cell (c0, r0) to (c1, r1)."""
    if c0 == c1 or r0 == r1:
        return []
    bx = max(c0, c1)
    by = max(r0, r1)
    tx = (bx - p[0]) / (q[0] - p[0])
    ty = (by - p[1]) / (q[1] - p[1])
    if tx < ty:
        return [(c1, r0)]
    if ty < tx:
        return [(c0, r1)]
    return [(c1, r0), (c0, r1)]


def move_particle(band: Band, i: int, grid: NailGrid, params: SimParams,
                  tick: int = 0) -> tuple[Vec2, Optional[ContactEvent]]:
    """Phase two for particle ``i``: walk toward ``pos + vel*dt`` in sub-steps.

    A sub-step that would enter a blocked cell is not taken; the particle
    stays where it is with zero velocity. Hitting a nail yields a
    ContactEvent, hitting the world boundary does not.
    """
    px, py = band.pos[i]
    dx = band.vel[i, 0] * params.dt
    dy = band.vel[i, 1] * params.dt
    n = substep_count(math.sqrt(dx * dx + dy * dy), params.eps_move)
    cx, cy = px, py
    for j in range(1, n + 1):
        frac = j / n
        nx, ny = px + dx * frac, py + dy * frac
        c0, r0 = math.floor(cx), math.floor(cy)
        c1, r1 = math.floor(nx), math.floor(ny)
        hit = EMPTY
        for side in _side_cells(c0, r0, c1, r1, (cx, cy), (nx, ny)):
            hit = is_blocked(grid, Cell(*side))
            if hit != EMPTY:
                break
        if hit == EMPTY:
            hit = is_blocked(grid, cell_of(grid, (nx, ny)))
        if hit != EMPTY:
            band.pos[i] = (cx, cy)
            band.vel[i] = (0.0, 0.0)
            event = ContactEvent(i, hit, tick) if hit != WALL else None
            return Vec2(cx, cy), event
        cx, cy = nx, ny
    band.pos[i] = (cx, cy)
    return Vec2(cx, cy), None


def _lookup_cells(grid: NailGrid, cols: np.ndarray, rows: np.ndarray) -> np.ndarray:
    inside = (cols >= 0) & (cols < grid.width) & (rows >= 0) & (rows < grid.height)
    out = np.full(len(cols), WALL, dtype=np.int64)
    out[inside] = grid.cells[rows[inside], cols[inside]]
    return out


def _side_hits(grid: NailGrid, prev: np.ndarray, cand: np.ndarray) -> np.ndarray:
    """Vectorised ``_side_cells`` lookup; EMPTY where no side cell is blocked."""
    c0 = np.floor(prev[:, 0]).astype(np.int64)
    r0 = np.floor(prev[:, 1]).astype(np.int64)
    c1 = np.floor(cand[:, 0]).astype(np.int64)
    r1 = np.floor(cand[:, 1]).astype(np.int64)
    hit = np.full(len(prev), EMPTY, dtype=np.int64)
    diag = np.nonzero((c0 != c1) & (r0 != r1))[0]
    if len(diag) == 0:
        return hit
    p, q = prev[diag], cand[diag]
    tx = (np.maximum(c0[diag], c1[diag]) - p[:, 0]) / (q[:, 0] - p[:, 0])
    ty = (np.maximum(r0[diag], r1[diag]) - p[:, 1]) / (q[:, 1] - p[:, 1])
    first = _lookup_cells(grid, c1[diag], r0[diag])   # crosses the vertical line first
    second = _lookup_cells(grid, c0[diag], r1[diag])  # crosses the horizontal line first
    a = np.where(tx <= ty, first, EMPTY)
    b = np.where(ty <= tx, second, EMPTY)
    hit[diag] = np.where(a != EMPTY, a, b)
    return hit


def move_all(band: Band, grid: NailGrid, params: SimParams, tick: int = 0) -> list[ContactEvent]:
    start = band.pos.copy()
    disp = band.vel * params.dt
    dist = np.sqrt(disp[:, 0] * disp[:, 0] + disp[:, 1] * disp[:, 1])
    nsub = np.ceil(dist / params.eps_move).astype(np.int64)
    active = nsub > 0
    events = []
    j = 1
    while active.any():
        idx = np.nonzero(active)[0]
        frac = j / nsub[idx]
        cand = start[idx] + disp[idx] * frac[:, None]
        hit = _side_hits(grid, band.pos[idx], cand)
        rest = hit == EMPTY
        hit[rest] = lookup_many(grid, cand[rest])
        blocked = hit != EMPTY
        if blocked.any():
            b = idx[blocked]
            band.vel[b] = 0.0
            active[b] = False
            for p, h in zip(b.tolist(), hit[blocked].tolist()):
                if h != WALL:
                    events.append(ContactEvent(p, h, tick))
        free = idx[~blocked]
        band.pos[free] = cand[~blocked]
        active[free] = nsub[free] > j
        j += 1
    events.sort()
    return events
