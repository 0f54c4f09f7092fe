"""Neighbourhood lookup benchmark: cell table versus scanning every nail."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

import numpy as np

from ..environment import EMPTY, NailGrid, build_grid, lookup_many

GRID = "GRID"
LINEAR = "LINEAR"


def linear_lookup_many(grid: NailGrid, positions: np.ndarray) -> np.ndarray:
    """Answer the table's question without the table: test each query's cell
    centre against every nail disk in turn."""
    cx = np.floor(positions[:, 0]) + 0.5
    cy = np.floor(positions[:, 1]) + 0.5
    r2 = float(grid.r_nail) ** 2
    best = np.full(len(positions), np.inf)
    out = np.full(len(positions), EMPTY, dtype=np.int64)
    for idx, (x, y) in enumerate(grid.nails):
        d2 = (cx - x) ** 2 + (cy - y) ** 2
        take = (d2 <= r2) & (d2 < best)
        best[take] = d2[take]
        out[take] = idx
    return out


@dataclass(frozen=True)
class BenchRow:
    nail_count: int
    strategy: str
    mean_ns: float
    lookups: int


@dataclass
class BenchReport:
    rows: list[BenchRow]

    def mean_ns(self, nail_count: int, strategy: str) -> float:
        for r in self.rows:
            if r.nail_count == nail_count and r.strategy == strategy:
                return r.mean_ns
        raise KeyError((nail_count, strategy))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["nail_count", "strategy", "mean_ns_per_lookup", "lookups"])
        for r in self.rows:
            w.writerow([r.nail_count, r.strategy, f"{r.mean_ns:.3f}", r.lookups])
        return buf.getvalue()


def _elapsed_ns(fn, grid, queries: np.ndarray) -> int:
    t0 = time.perf_counter_ns()
    fn(grid, queries)
    return time.perf_counter_ns() - t0


def bench_lookup(nail_counts, queries: int = 50_000, seed: int = 0, width: int = 200,
                 height: int = 200, repeats: int = 9) -> BenchReport:
    """Best-of-``repeats`` mean cost per lookup for each nail count and strategy
    (at most two rounds for the linear scan).

    Nails are placed uniformly at random (overlaps allowed); queries are
    uniform positions over the whole world. Repeats run round-robin over all
    nail counts so that warm-up and background load hit every count alike.
    """
    if queries < 10_000:
        raise ValueError("queries must be >= 10000")
    rng = np.random.default_rng(seed)
    cases = []
    for n in nail_counts:
        grid = build_grid(rng.uniform(0, [width, height], (n, 2)), width, height, 1)
        cases.append((n, grid, rng.uniform(0, [width, height], (queries, 2))))

    best = {}
    # the scan is orders of magnitude slower, a couple of rounds is plenty
    plan = ((GRID, lookup_many, repeats), (LINEAR, linear_lookup_many, min(repeats, 2)))
    for strategy, fn, rounds in plan:
        for _, grid, q in cases:
            fn(grid, q[:64])  # warm-up
        for _ in range(rounds):
            for n, grid, q in cases:
                ns = _elapsed_ns(fn, grid, q)
                best[n, strategy] = min(best.get((n, strategy), ns), ns)
    rows = [BenchRow(n, strategy, best[n, strategy] / queries, queries)
            for n, _, _ in cases for strategy in (GRID, LINEAR)]
    return BenchReport(rows)
