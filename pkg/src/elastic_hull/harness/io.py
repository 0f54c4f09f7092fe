"""Point files, config files, metrics CSV and stored trajectories."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from ..errors import InvalidParams, ParseError
from ..geometry import Vec2
from ..params import SimParams

METRICS_HEADER = ("tick", "max_speed", "perimeter", "contacts")
U64_MAX = 2 ** 64 - 1


def parse_points(text: str) -> list[Vec2]:
    """One ``x y`` pair per line; blank lines and ``#`` comments are skipped."""
    points = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two numbers, got {len(parts)} field(s)")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(lineno, f"not a number in {stripped!r}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError(lineno, "coordinates must be finite")
        points.append(Vec2(x, y))
    return points


def format_points(points: Iterable[Sequence[float]]) -> str:
    return "".join(f"{x:.17g} {y:.17g}\n" for x, y in points)


def read_points(path) -> list[Vec2]:
    return parse_points(Path(path).read_text(encoding="utf-8"))


@dataclass
class Config:
    """Everything a CLI run needs. Loaded from JSON; unknown keys are rejected."""

    params: SimParams
    width: int = 200
    height: int = 200
    frame_stride: int = 0
    out: str = "out"
    seed: int = 0
    n_points: int = 20
    instances: int = 10
    distribution: str = "uniform"
    format: str = "svg"

    def __post_init__(self):
        if not (0 <= self.seed <= U64_MAX):
            raise InvalidParams("seed must be an unsigned 64-bit integer")
        if self.width < 1 or self.height < 1:
            raise InvalidParams("grid dimensions must be positive")
        if self.distribution != "uniform":
            raise InvalidParams(f"unknown distribution {self.distribution!r}")
        if self.format not in ("ppm", "svg"):
            raise InvalidParams(f"unknown frame format {self.format!r}")
        if self.frame_stride < 0 or self.n_points < 1 or self.instances < 1:
            raise InvalidParams("frame_stride, n_points and instances out of range")

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        param_keys = set(SimParams.field_names())
        own_keys = {f.name for f in fields(cls)} - {"params"}
        unknown = set(data) - param_keys - own_keys
        if unknown:
            raise InvalidParams(f"unknown config keys: {', '.join(sorted(unknown))}")
        params = SimParams(**{k: v for k, v in data.items() if k in param_keys})
        return cls(params=params, **{k: v for k, v in data.items() if k in own_keys})

    def to_dict(self) -> dict:
        data = asdict(self.params)
        data.update({k: v for k, v in asdict(self).items() if k != "params"})
        return data


def load_config(path: Optional[str] = None, overrides: Optional[dict] = None) -> Config:
    data = {}
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.msg) from None
        if not isinstance(data, dict):
            raise InvalidParams("config file must hold a JSON object")
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return Config.from_dict(data)


def write_metrics(result, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(METRICS_HEADER)
        for tick, speed, perim, count in result.metrics_rows():
            writer.writerow((tick, repr(speed), repr(perim), count))


def read_metrics(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {
        "tick": np.array([int(r["tick"]) for r in rows]),
        "max_speed": np.array([float(r["max_speed"]) for r in rows]),
        "perimeter": np.array([float(r["perimeter"]) for r in rows]),
        "contacts": np.array([int(r["contacts"]) for r in rows]),
    }


class TrajectoryRecorder:
    """Frame sink that keeps band snapshots for later re-rendering."""

    def __init__(self):
        self.ticks: list[int] = []
        self.frames: list[np.ndarray] = []

    def __call__(self, tick, band, grid) -> None:
        self.ticks.append(tick)
        self.frames.append(band.pos.copy())

    def save(self, path, grid) -> None:
        np.savez_compressed(
            path, ticks=np.array(self.ticks, dtype=np.int64),
            positions=np.array(self.frames), nails=grid.nail_array,
            shape=np.array([grid.width, grid.height, grid.r_nail], dtype=np.int64))


def load_trajectory(path):
    with np.load(path) as data:
        width, height, r_nail = (int(v) for v in data["shape"])
        return (data["ticks"].tolist(), list(data["positions"]), data["nails"],
                (width, height, r_nail))
