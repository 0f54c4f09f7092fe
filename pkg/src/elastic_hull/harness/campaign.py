"""Seeded verification campaigns: simulate, read off the hull, compare with
Graham scan.

Instance ``i`` of a campaign with seed ``s`` draws its points from
``numpy.random.default_rng(SeedSequence([s, i]))`` (PCG64), so every instance
can be reproduced on its own from the pair (s, i).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..band import ContactEvent
from ..environment import EMPTY, NailGrid, build_grid, lookup_many
from ..geometry import perimeter, points_in_ring
from ..hull import HullPolygon, contacts, extract_hull
from ..oracle import graham_scan, hull_equal
from ..params import SimParams
from ..scheduler import run

PASS = "pass"
MISMATCH = "mismatch"
NONCONVERGED = "nonconverged"


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def generate_points(rng: np.random.Generator, n: int, width: int, height: int,
                    r_nail: int, max_tries: int = 100_000) -> list[tuple[float, float]]:
    """Uniform points over the central half of the grid, at least
    ``2*r_nail + 1`` apart."""
    min_d2 = float(2 * r_nail + 1) ** 2
    pts: list[tuple[float, float]] = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"could not place {n} separated points")
        x = float(rng.uniform(width / 4, 3 * width / 4))
        y = float(rng.uniform(height / 4, 3 * height / 4))
        if all((x - px) ** 2 + (y - py) ** 2 >= min_d2 for px, py in pts):
            pts.append((x, y))
    return pts


class RunAudit:
    """Frame sink checking containment and tunneling on every tick it sees.

    Containment: every nail centre lies inside the band ring. Tunneling: the
    straight path each particle took since the previous frame, resampled at a
    quarter sub-step, never enters a blocked cell unless that particle logged
    a contact on that tick. Register with ``frame_stride=1``.
    """

    def __init__(self, eps_move: float):
        self.step = eps_move / 4
        self.prev: Optional[np.ndarray] = None
        self.ticks = 0
        self.containment_violations: list[tuple[int, int]] = []
        self.blocked_positions: list[tuple[int, int]] = []
        self.path_hits: set[tuple[int, int]] = set()

    def __call__(self, tick: int, band, grid: NailGrid) -> None:
        pos = band.pos
        self.ticks += 1
        inside = points_in_ring(grid.nail_array, pos)
        for nail in np.flatnonzero(~inside):
            self.containment_violations.append((tick, int(nail)))
        for p in np.flatnonzero(lookup_many(grid, pos) != EMPTY):
            self.blocked_positions.append((tick, int(p)))
        if self.prev is not None:
            self._resample(tick, self.prev, pos, grid)
        self.prev = pos.copy()

    def _resample(self, tick, start, end, grid) -> None:
        d = end - start
        length = np.sqrt((d * d).sum(axis=1))
        moved = np.flatnonzero(length > 0)
        if len(moved) == 0:
            return
        k = np.ceil(length[moved] / self.step).astype(np.int64) + 1
        who = np.repeat(moved, k)
        t = (np.arange(k.sum()) - np.repeat(np.cumsum(k) - k, k)) / np.repeat(k - 1, k)
        samples = start[who] + d[who] * t[:, None]
        bad = np.unique(who[lookup_many(grid, samples) != EMPTY])
        self.path_hits.update((tick, int(p)) for p in bad)

    def unexplained_hits(self, events: list[ContactEvent]) -> list[tuple[int, int]]:
        logged = {(e.tick, e.particle) for e in events}
        return sorted(h for h in self.path_hits if h not in logged)

    @property
    def clean(self) -> bool:
        return not self.containment_violations and not self.blocked_positions


@dataclass
class InstanceResult:
    index: int
    seed: int
    n_points: int
    status: str
    ticks: int
    particles: int
    initial_perimeter: float
    final_perimeter: float
    oracle_perimeter: float
    sim_hull: Optional[HullPolygon] = field(default=None, repr=False)
    oracle_hull: Optional[HullPolygon] = field(default=None, repr=False)
    containment_violations: int = 0
    tunneling_violations: int = 0
    degenerate: bool = False

    @property
    def perimeter_ok(self) -> bool:
        slack = self.particles * 0.1
        return self.initial_perimeter >= self.final_perimeter >= self.oracle_perimeter - slack


def run_instance(points, params: SimParams, width: int = 200, height: int = 200,
                 index: int = 0, seed: int = 0, audit: bool = False) -> InstanceResult:
    grid = build_grid(points, width, height, params.r_nail)
    auditor = RunAudit(params.eps_move) if audit else None
    result = run(grid, params, frame_sink=auditor, frame_stride=1)
    oracle = graham_scan(points)
    oracle_perim = perimeter(oracle.vertices) if not oracle.degenerate else 0.0
    sim = None
    if not result.converged:
        status = NONCONVERGED
    else:
        sim = extract_hull(contacts(result, grid), grid)
        status = PASS if hull_equal(sim, oracle) else MISMATCH
    out = InstanceResult(index, seed, len(points), status, result.ticks_elapsed,
                         len(result.band), result.initial_perimeter,
                         result.band.perimeter(), oracle_perim, sim, oracle,
                         degenerate=oracle.degenerate)
    if auditor is not None:
        out.containment_violations = len(auditor.containment_violations) + len(auditor.blocked_positions)
        out.tunneling_violations = len(auditor.unexplained_hits(result.contacts))
    return out


@dataclass
class CampaignReport:
    seed: int
    n_points: int
    rows: list[InstanceResult]

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.rows)

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def pass_rate(self) -> float:
        return self.count(PASS) / self.total if self.rows else 0.0

    def failures(self) -> list[InstanceResult]:
        return [r for r in self.rows if r.status != PASS]

    def to_text(self) -> str:
        lines = [f"campaign seed={self.seed} n_points={self.n_points} instances={self.total}"]
        for r in self.rows:
            lines.append(
                f"instance {r.index} seed={r.seed}:{r.index} status={r.status} ticks={r.ticks} "
                f"hull_vertices={len(r.sim_hull) if r.sim_hull else 0}/{len(r.oracle_hull)}")
        lines.append(f"pass={self.count(PASS)} mismatch={self.count(MISMATCH)} "
                     f"nonconverged={self.count(NONCONVERGED)} total={self.total} "
                     f"pass_rate={self.pass_rate:.4f}")
        for r in self.failures():
            lines.append(f"FAILED {r.status} seed={r.seed}:{r.index}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "seed", "n_points", "status", "ticks", "particles",
                    "initial_perimeter", "final_perimeter", "oracle_perimeter",
                    "containment_violations", "tunneling_violations"])
        for r in self.rows:
            w.writerow([r.index, r.seed, r.n_points, r.status, r.ticks, r.particles,
                        repr(r.initial_perimeter), repr(r.final_perimeter),
                        repr(r.oracle_perimeter), r.containment_violations,
                        r.tunneling_violations])
        return buf.getvalue()


def verify_campaign(seed: int, instances: int, n_points: int, params: SimParams,
                    width: int = 200, height: int = 200, audit: bool = False) -> CampaignReport:
    if instances < 1:
        raise ValueError("instances must be >= 1")
    rows = []
    for i in range(instances):
        pts = generate_points(instance_rng(seed, i), n_points, width, height, params.r_nail)
        rows.append(run_instance(pts, params, width, height, index=i, seed=seed, audit=audit))
    return CampaignReport(seed, n_points, rows)
