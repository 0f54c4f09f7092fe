from __future__ import annotations

from dataclasses import asdict, dataclass, fields

from .errors import InvalidParams

GRAVITY = 9.8


@dataclass(frozen=True)
class SimParams:
    """Physical and numerical constants of one simulation.

    Units are grid cells for length and ticks for time. ``eps_f`` is the
    per-tick speed decrement applied by friction; ``mu`` and ``g`` are kept
    for reporting the normal force and do not enter the update directly.
    ``particle_count`` of 0 selects the count from the nail layout.
    """

    k: float = 0.5
    m: float = 1.0
    g: float = GRAVITY
    mu: float = 0.0
    dt: float = 1.0
    eps_f: float = 2e-4
    eps_move: float = 0.5
    r_nail: int = 1
    margin: float = 10.0
    particle_count: int = 0
    eps_v: float = 1e-3
    window: int = 50
    max_ticks: int = 200_000

    def __post_init__(self):
        if not (self.k > 0 and self.m > 0 and self.dt > 0 and self.eps_move > 0):
            raise InvalidParams("k, m, dt and eps_move must be positive")
        if self.eps_f < 0 or self.eps_v < 0 or self.mu < 0:
            raise InvalidParams("eps_f, eps_v and mu must be non-negative")
        if self.window < 1 or self.max_ticks < 1:
            raise InvalidParams("window and max_ticks must be >= 1")
        if self.r_nail < 1:
            raise InvalidParams("r_nail must be >= 1")
        if self.k * self.dt ** 2 / self.m > 0.5:
            raise InvalidParams(
                f"k*dt^2/m = {self.k * self.dt ** 2 / self.m:g} exceeds the stability bound 0.5")
        if self.eps_move > self.r_nail:
            raise InvalidParams("eps_move must not exceed r_nail")
        if self.particle_count != 0 and self.particle_count < 8:
            raise InvalidParams("particle_count must be 0 (auto) or >= 8")

    @property
    def normal_force(self) -> float:
        return self.m * self.g

    def replace(self, **changes) -> "SimParams":
        data = asdict(self)
        data.update(changes)
        return SimParams(**data)

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]
