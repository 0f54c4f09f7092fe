"""Convex hulls computed by relaxing an elastic band around nails.

A closed ring of particles is placed around the input points, which act as
nails in a discrete world. Neighbour tension pulls the ring tight, friction
bleeds off its energy, and once it stops moving the nails it rests on are
read off as the hull. Graham scan, Jarvis march and a brute-force edge test
serve as exact references.
"""

from .band import Band, ContactEvent, init_band
from .environment import EMPTY, WALL, Cell, NailGrid, build_grid, cell_of, is_blocked
from .errors import (ElasticHullError, EmptyInput, InvalidParams, MarginTooLarge,
                     NotConverged, OutOfBounds, ParseError, TooFewParticles)
from .geometry import Vec2, orientation, perimeter, point_in_ring, vec_sum
from .hull import HullPolygon, canonical, contacts, extract_hull
from .oracle import brute_force_hull, graham_scan, hull_equal, jarvis_march
from .params import SimParams
from .scheduler import RunResult, is_fixed, run, step

__version__ = "0.1.0"
