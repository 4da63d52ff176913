"""Bar-lattice geometry and pathway fill patterns.

The platform is a field of cavity bars standing on the dielectric; a
pathway is formed by filling two parallel rows of bars with conductor.
A fill pattern records which sites are filled and with what, organised
as wall rows (a straight pathway has two rows, an L-turn has four: the
outer wall runs unbroken through the corner, the inner wall stops one
pitch short on each leg).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import SceneError


class WallMode(enum.Enum):
    DISCRETE_BARS = "discrete"
    CONTINUOUS_WALL = "continuous"


@dataclass(frozen=True)
class BarLattice:
    """Geometry of the bar rows: all lengths in metres.

    pitch is the centre-to-centre separation along a row; row_sep the
    transverse centre-to-centre distance between the two rows of a
    pathway; origin anchors slot 0 on the channel axis and axis is the
    in-plane unit direction of the pathway.

    The default row_sep realizes a 6 mm clear channel between the bar
    surfaces (8 mm centre-to-centre with 1 mm bars): a 6 mm
    centre-to-centre spacing would leave a 4 mm aperture, below the
    lateral cutoff of the guided surface wave, and no pathway would
    propagate.  Builders that want to read the channel width as
    centre-to-centre can set row_sep directly.
    """

    height: float = 5e-3
    radius: float = 1e-3
    pitch: float = 4e-3
    row_sep: float = 8e-3
    origin: tuple[float, float, float] = (0.0, 0.0, 0.0)
    axis: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self):
        if self.height <= 0.0:
            raise SceneError("lattice.height", f"must be > 0, got {self.height}")
        if self.radius <= 0.0:
            raise SceneError("lattice.radius", f"must be > 0, got {self.radius}")
        if 2.0 * self.radius > self.pitch:
            raise SceneError(
                "lattice.pitch",
                f"bars overlap: 2*radius = {2 * self.radius} > pitch = {self.pitch}",
            )
        if self.row_sep <= 2.0 * self.radius:
            raise SceneError(
                "lattice.row_sep",
                f"rows overlap: row_sep = {self.row_sep} <= 2*radius = {2 * self.radius}",
            )
        norm = math.hypot(*self.axis)
        if not math.isclose(norm, 1.0, rel_tol=1e-9):
            raise SceneError("lattice.axis", f"must be a unit vector, |axis| = {norm}")


@dataclass(frozen=True)
class WallRow:
    """One straight row of bar slots: start point, unit direction, count."""

    start: tuple[float, float]
    direction: tuple[float, float]
    slots: int

    def slot_center(self, slot: int, pitch: float) -> tuple[float, float]:
        return (
            self.start[0] + slot * pitch * self.direction[0],
            self.start[1] + slot * pitch * self.direction[1],
        )

    def end(self, pitch: float) -> tuple[float, float]:
        return self.slot_center(self.slots - 1, pitch)


@dataclass(frozen=True)
class FillPattern:
    """Which lattice sites are filled, and with what.

    sites are (row_index, slot_index, material_name) triples indexing
    into rows.  In continuous-wall mode each row is rendered as one
    solid strip (bar-diameter thick, bar-height tall) instead of
    discrete cylinders.  extra_strips are always-rendered continuous
    segments ((x0, y0), (x1, y1), material); scenario builders append
    them past the probed region so a pathway terminates into the
    absorber as a smooth guide instead of a periodic lattice, which
    would reflect at the absorber interface.
    """

    rows: tuple[WallRow, ...] = ()
    sites: frozenset[tuple[int, int, str]] = frozenset()
    wall_mode: WallMode = WallMode.DISCRETE_BARS
    extra_strips: tuple = ()

    def __post_init__(self):
        for row, slot, _name in self.sites:
            if not 0 <= row < len(self.rows):
                raise SceneError("fill.sites", f"row index {row} out of range")
            if not 0 <= slot < self.rows[row].slots:
                raise SceneError(
                    "fill.sites", f"slot {slot} outside row {row} extent"
                )

    def validate_materials(self, table: dict) -> None:
        for _row, _slot, name in self.sites:
            if name not in table:
                raise SceneError("fill.sites", f"unknown material {name!r}")
        for _p0, _p1, name in self.extra_strips:
            if name not in table:
                raise SceneError("fill.extra_strips", f"unknown material {name!r}")

    def bar_centers(self, pitch: float) -> list[tuple[float, float, str]]:
        """Resolved (x, y, material) bar positions, sorted for determinism."""
        out = [
            (*self.rows[row].slot_center(slot, pitch), name)
            for row, slot, name in self.sites
        ]
        out.sort()
        return out

    def wall_strips(self, pitch: float) -> list[tuple[tuple[float, float], tuple[float, float], str]]:
        """All continuous segments: whole rows in continuous-wall mode,
        plus any termination strips."""
        strips = list(self.extra_strips)
        if self.wall_mode is WallMode.CONTINUOUS_WALL:
            for idx, row in enumerate(self.rows):
                names = {name for r, _s, name in self.sites if r == idx}
                if not names:
                    continue
                if len(names) > 1:
                    raise SceneError(
                        "fill.sites", f"continuous wall row {idx} mixes materials"
                    )
                strips.append((row.start, row.end(pitch), names.pop()))
        return strips

    @property
    def bar_count(self) -> int:
        return len(self.sites)


def _row_sites(row_index: int, slots: int, material: str):
    return ((row_index, slot, material) for slot in range(slots))


def slots_for_length(length: float, pitch: float) -> int:
    """Bar slots needed to cover a row of the given length."""
    return int(math.floor(length / pitch)) + 1


def gen_straight(lattice: BarLattice, wavelength: float, length_lambda: float,
                 material: str, wall_mode: WallMode = WallMode.DISCRETE_BARS,
                 start_lambda: float = 0.0) -> FillPattern:
    """Two parallel filled rows covering the requested pathway length.

    Rows sit at +/- row_sep/2 from the channel axis; slot count per row
    is floor(length_lambda * wavelength / pitch) + 1.
    """
    if length_lambda < 1:
        raise SceneError("fill.length_lambda", f"must be >= 1, got {length_lambda}")
    ox, oy, _oz = lattice.origin
    ux, uy = lattice.axis
    px, py = -uy, ux  # transverse unit
    half = lattice.row_sep / 2.0
    slots = slots_for_length(length_lambda * wavelength, lattice.pitch)
    x0 = ox + start_lambda * wavelength * ux
    y0 = oy + start_lambda * wavelength * uy
    rows = (
        WallRow((x0 - px * half, y0 - py * half), (ux, uy), slots),
        WallRow((x0 + px * half, y0 + py * half), (ux, uy), slots),
    )
    sites = frozenset().union(_row_sites(0, slots, material), _row_sites(1, slots, material))
    return FillPattern(rows=rows, sites=sites, wall_mode=wall_mode)


def gen_l_turn(lattice: BarLattice, wavelength: float, leg1_lambda: float,
               leg2_lambda: float, material: str,
               wall_mode: WallMode = WallMode.DISCRETE_BARS,
               mitered: bool = False) -> FillPattern:
    """L-shaped pathway: leg1 along the lattice axis, leg2 turning left.

    Construction rule: the outer wall continues through the corner as an
    unbroken right angle (the corner slot is shared between the two
    outer rows); the inner rows stop one pitch before the inner corner
    point so the channel cross-section never narrows below row_sep.
    With mitered=True the outer corner is chamfered at 45 degrees by a
    short diagonal row replacing the square corner bars.
    """
    if leg1_lambda < 1 or leg2_lambda < 1:
        raise SceneError(
            "fill.leg_lambda",
            f"legs must be >= 1, got ({leg1_lambda}, {leg2_lambda})",
        )
    if lattice.axis != (1.0, 0.0):
        raise SceneError("lattice.axis", "L-turn generation assumes axis (1, 0)")
    ox, oy, _oz = lattice.origin
    half = lattice.row_sep / 2.0
    pitch = lattice.pitch
    corner_x = ox + leg1_lambda * wavelength
    leg2_end_y = oy + leg2_lambda * wavelength

    # Outer wall: along y = -half up to the corner, then up x = corner+half.
    outer1_slots = slots_for_length(corner_x + half - ox, pitch)
    outer2_start_y = oy - half + pitch  # corner slot owned by outer row 1
    outer2_slots = slots_for_length(leg2_end_y - outer2_start_y, pitch)
    # Inner wall: stops one pitch before the inner corner on both legs.
    inner1_len = (corner_x - half - pitch) - ox
    inner1_slots = max(slots_for_length(inner1_len, pitch), 0) if inner1_len >= 0 else 0
    inner2_start_y = oy + half + pitch
    inner2_slots = slots_for_length(leg2_end_y - inner2_start_y, pitch)

    rows = [
        WallRow((ox, oy - half), (1.0, 0.0), outer1_slots),
        WallRow((corner_x + half, outer2_start_y), (0.0, 1.0), outer2_slots),
        WallRow((ox, oy + half), (1.0, 0.0), max(inner1_slots, 1)),
        WallRow((corner_x - half, inner2_start_y), (0.0, 1.0), max(inner2_slots, 1)),
    ]
    sites = set()
    for idx, slots in ((0, outer1_slots), (1, outer2_slots),
                       (2, inner1_slots), (3, inner2_slots)):
        sites.update(_row_sites(idx, slots, material))

    if mitered:
        # Replace the square outer corner with a 45-degree chamfer running
        # from (corner_x + half - cut, -half) up to (corner_x + half, -half + cut).
        cut = lattice.row_sep
        sites = {
            s for s in sites
            if not (s[0] == 0 and ox + s[1] * pitch > corner_x + half - cut)
            and not (s[0] == 1 and outer2_start_y + s[1] * pitch < oy - half + cut)
        }
        root2 = math.sqrt(0.5)
        start = (corner_x + half - cut, oy - half)
        diag_slots = slots_for_length(cut * math.sqrt(2.0), pitch)
        rows.append(WallRow(start, (root2, root2), diag_slots))
        sites.update(_row_sites(4, diag_slots, material))

    return FillPattern(rows=tuple(rows), sites=frozenset(sites), wall_mode=wall_mode)
