"""Spatial layout of the sensor: slab, fiber ports, contact grid, depth levels.

All coordinates live in a slab-centered frame with millimeter units. The
sensing slab is a thin rectangle; nine receiver fibers form a 3x3 grid on
its bottom face and three colored emitter fibers sit at edge midpoints.
Contact states are drawn from a 5x5 location grid crossed with five
discrete indentation depths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

SLAB_WIDTH_MM = 40.0
SLAB_HEIGHT_MM = 40.0
SLAB_THICKNESS_MM = 5.0
RECEIVER_PITCH_MM = 5.0
GRID_PITCH_MM = 8.0
N_RECEIVERS = 9
N_EMITTERS = 3
N_LOCATIONS = 25
N_DEPTH_LEVELS = 5
MAX_DEPTH_MM = 3.0
N_FLAT_CLASSES = N_LOCATIONS * N_DEPTH_LEVELS

EMITTER_COLORS = ("red", "green", "blue")
CHANNEL_OF_COLOR = {"red": 0, "green": 1, "blue": 2}

# Default color-to-edge assignment for the three emitter fibers.
DEFAULT_EMITTER_EDGES = {"red": "left", "green": "top", "blue": "right"}

Point = tuple[float, float]


def _receiver_grid(pitch: float) -> tuple[Point, ...]:
    """3x3 receiver grid centered on the slab, row-major from (-pitch, -pitch)."""
    return tuple(
        ((i % 3 - 1) * pitch, (i // 3 - 1) * pitch) for i in range(N_RECEIVERS)
    )


def edge_midpoint(edge: str, width: float, height: float) -> Point:
    """Midpoint of a named slab edge (left/right/top/bottom)."""
    midpoints = {
        "left": (-width / 2.0, 0.0),
        "right": (width / 2.0, 0.0),
        "top": (0.0, height / 2.0),
        "bottom": (0.0, -height / 2.0),
    }
    if edge not in midpoints:
        raise ValueError(f"unknown slab edge: {edge!r}")
    return midpoints[edge]


def _default_emitters(width: float, height: float) -> tuple[Point, ...]:
    return tuple(
        edge_midpoint(DEFAULT_EMITTER_EDGES[c], width, height) for c in EMITTER_COLORS
    )


@dataclass(frozen=True)
class SensorGeometry:
    """Slab dimensions plus receiver/emitter fiber port positions.

    Fibers are treated as point ports in the slab plane. Receivers must
    form a uniform centered 3x3 grid; emitters carry distinct color tags.
    """

    slab_width_mm: float = SLAB_WIDTH_MM
    slab_height_mm: float = SLAB_HEIGHT_MM
    slab_thickness_mm: float = SLAB_THICKNESS_MM
    receiver_positions_mm: tuple[Point, ...] = field(
        default_factory=lambda: _receiver_grid(RECEIVER_PITCH_MM)
    )
    emitter_positions_mm: tuple[Point, ...] = field(
        default_factory=lambda: _default_emitters(SLAB_WIDTH_MM, SLAB_HEIGHT_MM)
    )
    emitter_colors: tuple[str, ...] = EMITTER_COLORS

    def __post_init__(self) -> None:
        if self.slab_width_mm <= 0 or self.slab_height_mm <= 0:
            raise ValueError("slab dimensions must be positive")
        if self.slab_thickness_mm <= 0:
            raise ValueError("slab thickness must be positive")
        if len(self.receiver_positions_mm) != N_RECEIVERS:
            raise ValueError(f"expected {N_RECEIVERS} receivers")
        if len(self.emitter_positions_mm) != N_EMITTERS:
            raise ValueError(f"expected {N_EMITTERS} emitters")
        if len(self.emitter_colors) != N_EMITTERS or len(set(self.emitter_colors)) != N_EMITTERS:
            raise ValueError("emitters need three distinct color tags")
        for color in self.emitter_colors:
            if color not in CHANNEL_OF_COLOR:
                raise ValueError(f"unknown emitter color: {color!r}")
        self._check_receiver_grid()
        for x, y in self.receiver_positions_mm + self.emitter_positions_mm:
            if not self.contains(x, y):
                raise ValueError(f"fiber port ({x}, {y}) lies outside the slab")

    def _check_receiver_grid(self) -> None:
        xs = sorted({round(p[0], 9) for p in self.receiver_positions_mm})
        ys = sorted({round(p[1], 9) for p in self.receiver_positions_mm})
        if len(xs) != 3 or len(ys) != 3:
            raise ValueError("receivers must form a 3x3 grid")
        pitch = xs[1] - xs[0]
        if pitch <= 0:
            raise ValueError("receiver pitch must be positive")
        for axis in (xs, ys):
            if not (
                math.isclose(axis[2] - axis[1], pitch, rel_tol=0, abs_tol=1e-9)
                and math.isclose(axis[1] - axis[0], pitch, rel_tol=0, abs_tol=1e-9)
                and math.isclose(axis[1], 0.0, rel_tol=0, abs_tol=1e-9)
            ):
                raise ValueError("receiver grid must be uniform and slab-centered")
        expected = {
            (round(x, 9), round(y, 9)) for x in xs for y in ys
        }
        got = {(round(p[0], 9), round(p[1], 9)) for p in self.receiver_positions_mm}
        if got != expected:
            raise ValueError("receiver positions must cover the full 3x3 grid")

    def contains(self, x: float, y: float) -> bool:
        """True if (x, y) lies inside or on the slab rectangle."""
        return (
            abs(x) <= self.slab_width_mm / 2.0 + 1e-9
            and abs(y) <= self.slab_height_mm / 2.0 + 1e-9
        )

    def emitter_channel(self, emitter_index: int) -> int:
        """RGB channel index driven by the given emitter."""
        return CHANNEL_OF_COLOR[self.emitter_colors[emitter_index]]


@dataclass(frozen=True)
class ContactGrid:
    """Square grid of probe locations, indexed row-major from the corner."""

    n_locations: int = N_LOCATIONS
    pitch_mm: float = GRID_PITCH_MM
    origin_offset_mm: float | None = None

    def __post_init__(self) -> None:
        side = math.isqrt(self.n_locations)
        if side * side != self.n_locations or side < 1:
            raise ValueError("n_locations must be a positive perfect square")
        if self.pitch_mm <= 0:
            raise ValueError("grid pitch must be positive")
        if self.origin_offset_mm is None:
            # center the grid: span = pitch * (side - 1)
            object.__setattr__(
                self, "origin_offset_mm", -self.pitch_mm * (side - 1) / 2.0
            )

    @property
    def side(self) -> int:
        return math.isqrt(self.n_locations)


def location_coords(grid: ContactGrid, index: int) -> Point:
    """Planar coordinates of a contact location index.

    Index runs row-major: (x, y) = origin + pitch * (index % side, index // side).
    """
    if not isinstance(index, (int,)) or isinstance(index, bool):
        raise ValueError("location index must be an integer")
    if not 0 <= index < grid.n_locations:
        raise ValueError(
            f"location index {index} out of range 0..{grid.n_locations - 1}"
        )
    side = grid.side
    x = grid.origin_offset_mm + grid.pitch_mm * (index % side)
    y = grid.origin_offset_mm + grid.pitch_mm * (index // side)
    return (x, y)


def depth_of_level(level: int) -> float:
    """Indentation depth in mm for a depth level in 1..5 (0.6 mm per level)."""
    if not isinstance(level, int) or isinstance(level, bool):
        raise ValueError("depth level must be an integer")
    if not 1 <= level <= N_DEPTH_LEVELS:
        raise ValueError(f"depth level {level} out of range 1..{N_DEPTH_LEVELS}")
    # (3 * level) / 5 is the correctly rounded value of 0.6 * level.
    return (3.0 * level) / 5.0


def class_index(location: int, depth_level: int) -> int:
    """Flat class index for a (location, depth level) contact state."""
    if not 0 <= location < N_LOCATIONS:
        raise ValueError(f"location {location} out of range 0..{N_LOCATIONS - 1}")
    if not 1 <= depth_level <= N_DEPTH_LEVELS:
        raise ValueError(
            f"depth level {depth_level} out of range 1..{N_DEPTH_LEVELS}"
        )
    return location * N_DEPTH_LEVELS + (depth_level - 1)


def split_class_index(flat_class: int) -> tuple[int, int]:
    """Inverse of class_index: flat class -> (location, depth_level)."""
    if not 0 <= flat_class < N_FLAT_CLASSES:
        raise ValueError(
            f"flat class {flat_class} out of range 0..{N_FLAT_CLASSES - 1}"
        )
    return flat_class // N_DEPTH_LEVELS, flat_class % N_DEPTH_LEVELS + 1


@dataclass(frozen=True)
class ContactState:
    """A probe contact: grid location plus discrete indentation depth."""

    location: int
    depth_level: int
    x_mm: float
    y_mm: float
    depth_mm: float

    @classmethod
    def from_indices(
        cls, grid: ContactGrid, location: int, depth_level: int
    ) -> "ContactState":
        x, y = location_coords(grid, location)
        return cls(
            location=location,
            depth_level=depth_level,
            x_mm=x,
            y_mm=y,
            depth_mm=depth_of_level(depth_level),
        )

    def __post_init__(self) -> None:
        if not 1 <= self.depth_level <= N_DEPTH_LEVELS:
            raise ValueError("depth level out of range")
        if not 0.0 < self.depth_mm <= MAX_DEPTH_MM:
            raise ValueError("depth must lie in (0, 3] mm")

    @property
    def flat_class(self) -> int:
        return class_index(self.location, self.depth_level)
