"""Synchronous two-phase time stepping and convergence detection."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .band import (Band, ContactEvent, auto_particle_count, calculate_all,
                   calculate_state, init_band, move_all, move_particle)
from .environment import NailGrid
from .params import SimParams

log = logging.getLogger(__name__)

FrameSink = Callable[[int, Band, NailGrid], None]


@dataclass
class RunResult:
    ticks_elapsed: int
    converged: bool
    band: Band
    contacts: list[ContactEvent]
    max_speed: np.ndarray
    perimeter: np.ndarray
    contact_count: np.ndarray
    initial_perimeter: float
    params: SimParams = field(repr=False)

    def metrics_rows(self):
        for t in range(self.ticks_elapsed):
            yield (t + 1, float(self.max_speed[t]), float(self.perimeter[t]),
                   int(self.contact_count[t]))


def step(band: Band, grid: NailGrid, params: SimParams, tick: int,
         order: Optional[Sequence[int]] = None) -> tuple[Band, list[ContactEvent]]:
    """Advance ``band`` one tick in place.

    With ``order`` given, particles are visited one at a time in that order
    in both phases; otherwise the whole ring is updated with array ops. Both
    give the same state.
    """
    if order is None:
        calculate_all(band, params)
        band.commit()
        return band, move_all(band, grid, params, tick)

    for i in order:
        calculate_state(band, i, params)
    band.commit()
    events = []
    for i in order:
        _, ev = move_particle(band, i, grid, params, tick)
        if ev is not None:
            events.append(ev)
    events.sort()
    return band, events


def is_fixed(speed_history: Sequence[float], params: SimParams) -> bool:
    if len(speed_history) < params.window:
        return False
    recent = np.asarray(speed_history[-params.window:])
    return bool((recent < params.eps_v).all())


def run(grid: NailGrid, params: SimParams, frame_sink: Optional[FrameSink] = None,
        frame_stride: int = 0) -> RunResult:
    """Relax a band around the nails of ``grid`` until it is fixed or
    ``params.max_ticks`` is reached.

    ``frame_sink`` sees tick 0 (the initial band), every ``frame_stride``-th
    tick and the last tick. A stride of 0 means every tick.
    """
    count = params.particle_count or auto_particle_count(grid, params.margin)
    band = init_band(grid, params.margin, count, params.m)
    initial_perimeter = band.perimeter()
    if frame_sink is not None:
        frame_sink(0, band, grid)

    max_speed, perim, ncontact = [], [], []
    contacts: list[ContactEvent] = []
    touched: set[int] = set()
    converged = False
    tick = 0
    while tick < params.max_ticks:
        tick += 1
        band, events = step(band, grid, params, tick)
        contacts.extend(events)
        touched.update(e.nail for e in events)
        max_speed.append(float(band.speeds().max()))
        perim.append(band.perimeter())
        ncontact.append(len(touched))
        converged = is_fixed(max_speed, params)
        last = converged or tick == params.max_ticks
        if frame_sink is not None and (last or frame_stride <= 1 or tick % frame_stride == 0):
            frame_sink(tick, band, grid)
        if converged:
            break
    log.debug("run finished after %d ticks (converged=%s)", tick, converged)
    return RunResult(tick, converged, band, contacts, np.array(max_speed), np.array(perim),
                     np.array(ncontact, dtype=np.int64), initial_perimeter, params)
