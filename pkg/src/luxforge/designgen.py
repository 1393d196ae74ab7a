"""Instantiates design patterns into concrete fixture placements, scores the
candidates photometrically, and ranks them."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    AnchorMissing,
    FixtureOutsideRoom,
    MalformedDocument,
    PlacementOutsideWall,
)
from .geometry import (
    DEFAULT_SPACING,
    DEFAULT_WORKPLANE_HEIGHT,
    Point2,
    Point3,
    ValidatedRoom,
    point_in_volume,
    room_from_doc,
    room_to_doc,
    validate_room,
)
from .patterns import (
    Anchor,
    DesignPattern,
    PatternFamily,
    PatternLibrary,
    RoomAnalysis,
    TargetLux,
    analyze_room,
    match_patterns,
)
from .photometry import (
    IlluminanceField,
    PlacedFixture,
    fixture_from_doc,
    fixture_to_doc,
    illuminance_field,
)

# Grid points this close (horizontally) to a task fixture's aim point are
# task points.
TASK_RADIUS = 0.5


@dataclass(frozen=True)
class LightingDesign:
    id: str
    pattern_id: str
    fixtures: tuple[PlacedFixture, ...]
    room: ValidatedRoom
    room_id: str | None = None

    @property
    def zones(self) -> dict[str, tuple[int, ...]]:
        """Zone label -> fixture indices, derived from the fixtures."""
        out: dict[str, list[int]] = {}
        for i, f in enumerate(self.fixtures):
            out.setdefault(f.zone, []).append(i)
        return {z: tuple(ix) for z, ix in out.items()}

    @property
    def dims(self) -> list[float]:
        return [f.dim for f in self.fixtures]


@dataclass(frozen=True)
class DesignScore:
    average_lux: float
    min_lux: float
    uniformity: float
    task_lux: float | None
    meets_ambient: bool
    meets_task: bool
    scalar_score: float


def _require_anchor(pattern: DesignPattern, analysis: RoomAnalysis) -> Anchor:
    kind = pattern.preconditions[0]
    found = analysis.anchors_of(kind)
    if not found:
        raise AnchorMissing(f"pattern {pattern.id!r} needs a {kind.value} anchor")
    return found[0]


def _tilted_axis(normal: Point2, tilt_deg: float) -> Point3:
    c = math.cos(math.radians(tilt_deg))
    s = math.sin(math.radians(tilt_deg))
    return (normal[0] * c, normal[1] * c, -s)


def _along_wall(analysis: RoomAnalysis, anchor: Anchor, room: ValidatedRoom) -> tuple:
    wall = analysis.walls[anchor.wall_index]
    ux, uy = wall.direction
    t_center = (anchor.center[0] - wall.start[0]) * ux + (anchor.center[1] - wall.start[1]) * uy
    obj = room.objects[anchor.object_index]
    (minx, miny), (maxx, maxy) = obj.footprint
    # Support half-width of the axis-aligned footprint along the wall direction.
    half = (maxx - minx) / 2.0 * abs(ux) + (maxy - miny) / 2.0 * abs(uy)
    return wall, t_center, half


def _wall_point(wall, s: float, z: float) -> Point3:
    ux, uy = wall.direction
    return (wall.start[0] + s * ux, wall.start[1] + s * uy, z)


def instantiate_pattern(
    pattern: DesignPattern, analysis: RoomAnalysis, room: ValidatedRoom
) -> LightingDesign:
    """Apply the pattern's placement rule to this room.

    Ceiling fixtures land on zone "ambient", wall and table fixtures on
    zone "task". Raises AnchorMissing when a precondition object is absent
    and PlacementOutsideWall when clamping collapses a flanking pair.
    """
    p = pattern.placement
    fixtures: list[PlacedFixture] = []

    if pattern.family == PatternFamily.CEILING_CENTRAL:
        cx, cy = analysis.free_ceiling_centroid
        fixtures.append(
            PlacedFixture(
                spec=pattern.specs["ceiling"],
                position=(cx, cy, room.ceiling_height),
                axis=(0.0, 0.0, -1.0),
                zone="ambient",
            )
        )

    elif pattern.family == PatternFamily.FLANK_OBJECT:
        anchor = _require_anchor(pattern, analysis)
        wall, t_center, half = _along_wall(analysis, anchor, room)
        axis = _tilted_axis(wall.inward_normal, p.tilt_deg)
        offsets = (t_center - (half + p.flank_offset), t_center + (half + p.flank_offset))
        clamped = tuple(min(wall.length, max(0.0, s)) for s in offsets)
        if clamped[0] == clamped[1]:
            raise PlacementOutsideWall(
                f"pattern {pattern.id!r}: both flanking positions clamp to "
                f"s={clamped[0]} on wall {wall.index}"
            )
        for s in clamped:
            fixtures.append(
                PlacedFixture(
                    spec=pattern.specs["wall"],
                    position=_wall_point(wall, s, p.flank_height),
                    axis=axis,
                    zone="task",
                )
            )

    elif pattern.family == PatternFamily.ABOVE_OBJECT:
        anchor = _require_anchor(pattern, analysis)
        wall, t_center, _half = _along_wall(analysis, anchor, room)
        s = min(wall.length, max(0.0, t_center))
        fixtures.append(
            PlacedFixture(
                spec=pattern.specs["wall"],
                position=_wall_point(wall, s, p.above_height),
                axis=_tilted_axis(wall.inward_normal, p.tilt_deg),
                zone="task",
            )
        )

    elif pattern.family == PatternFamily.GUIDELINE_BEDROOM:
        cx, cy = analysis.free_ceiling_centroid
        fixtures.append(
            PlacedFixture(
                spec=pattern.specs["ceiling"],
                position=(cx, cy, room.ceiling_height),
                axis=(0.0, 0.0, -1.0),
                zone="ambient",
            )
        )
        anchor = _require_anchor(pattern, analysis)
        for corner in _free_corners(analysis, anchor, room, p.table_offset):
            fixtures.append(
                PlacedFixture(
                    spec=pattern.specs["table"],
                    position=(corner[0], corner[1], p.table_height),
                    axis=(0.0, 0.0, -1.0),
                    zone="task",
                )
            )
    else:
        raise MalformedDocument(f"unknown pattern family {pattern.family}")

    design = LightingDesign(
        id=pattern.id, pattern_id=pattern.id, fixtures=tuple(fixtures), room=room
    )
    check_fixtures(design)
    return design


def _free_corners(
    analysis: RoomAnalysis, anchor: Anchor, room: ValidatedRoom, reach: float
) -> list[Point2]:
    """The two footprint corners farthest from the anchor wall, pushed
    `reach` meters outward from the footprint center (falling back to the
    corner itself if the pushed point leaves the room)."""
    from .geometry import _point_segment_distance

    obj = room.objects[anchor.object_index]
    wall = analysis.walls[anchor.wall_index]
    by_depth = sorted(
        obj.corners,
        key=lambda c: (-_point_segment_distance(c, wall.start, wall.end), c),
    )
    out: list[Point2] = []
    cx, cy = obj.center
    for corner in sorted(by_depth[:2]):
        dx, dy = corner[0] - cx, corner[1] - cy
        norm = math.hypot(dx, dy)
        cand = (corner[0] + reach * dx / norm, corner[1] + reach * dy / norm)
        out.append(cand if point_in_volume(room, (cand[0], cand[1], 0.0)) else corner)
    return out


def check_fixtures(design: LightingDesign) -> None:
    """Every fixture position must lie inside the room volume (walls count)."""
    for i, f in enumerate(design.fixtures):
        if not point_in_volume(design.room, f.position):
            raise FixtureOutsideRoom(f"fixture {i} at {f.position} is outside the room")


def generate_designs(
    room: ValidatedRoom, library: PatternLibrary, seed: int
) -> list[LightingDesign]:
    """One design per applicable pattern; ids derive from pattern id + seed."""
    analysis = analyze_room(room)
    designs = []
    for pattern in match_patterns(analysis, library):
        design = instantiate_pattern(pattern, analysis, room)
        designs.append(replace(design, id=f"{pattern.id}-s{seed}"))
    return designs


def evaluate_design(
    design: LightingDesign,
    room: ValidatedRoom,
    targets: TargetLux,
    spacing: float = DEFAULT_SPACING,
    workplane_height: float = DEFAULT_WORKPLANE_HEIGHT,
) -> DesignScore:
    """Score a design at full output against its lux targets.

    task_lux averages the samples within 0.5 m of any task fixture's aim
    point on the workplane; a pattern without a task target passes the task
    check vacuously. scalar_score = [meets_ambient] + [meets_task] +
    uniformity, in [0, 3].
    """
    fixtures = list(design.fixtures)
    dims = [1.0] * len(fixtures)
    field = illuminance_field(fixtures, dims, room, spacing, workplane_height)

    # Aim point where the emission ray crosses the workplane; nadir (the
    # fixture's horizontal position) when the ray never reaches it.
    aims = [
        f.aim_point(workplane_height) or (f.position[0], f.position[1])
        for f in fixtures
        if f.zone == "task"
    ]
    task_values = [
        e
        for (x, y, _z), e in zip(field.points, field.lux)
        if any(math.hypot(x - ax, y - ay) <= TASK_RADIUS for ax, ay in aims)
    ]
    task_lux = sum(task_values) / len(task_values) if task_values else None

    meets_ambient = field.stats.average >= targets.ambient
    if targets.task is None:
        meets_task = True
    else:
        meets_task = task_lux is not None and task_lux >= targets.task
    scalar = float(meets_ambient) + float(meets_task) + field.stats.uniformity
    return DesignScore(
        average_lux=field.stats.average,
        min_lux=field.stats.min,
        uniformity=field.stats.uniformity,
        task_lux=task_lux,
        meets_ambient=meets_ambient,
        meets_task=meets_task,
        scalar_score=scalar,
    )


def rank_designs(
    designs: list[LightingDesign], scores: list[DesignScore]
) -> list[tuple[LightingDesign, DesignScore]]:
    """Descending scalar score; ties broken by ascending pattern id."""
    if len(designs) != len(scores):
        raise ValueError(f"{len(designs)} designs but {len(scores)} scores")
    return sorted(zip(designs, scores), key=lambda t: (-t[1].scalar_score, t[0].pattern_id))


def generate_scored(
    room: ValidatedRoom,
    library: PatternLibrary,
    seed: int,
    spacing: float = DEFAULT_SPACING,
    workplane_height: float = DEFAULT_WORKPLANE_HEIGHT,
) -> list[tuple[LightingDesign, DesignScore]]:
    """Generate one design per applicable pattern, scored and ranked."""
    designs = generate_designs(room, library, seed)
    targets = {p.id: p.target_lux for p in library.patterns}
    scores = [
        evaluate_design(d, room, targets[d.pattern_id], spacing, workplane_height)
        for d in designs
    ]
    return rank_designs(designs, scores)


def evaluate_field(
    design: LightingDesign,
    spacing: float = DEFAULT_SPACING,
    workplane_height: float = DEFAULT_WORKPLANE_HEIGHT,
) -> IlluminanceField:
    """Field at the design's current dim levels."""
    return illuminance_field(
        list(design.fixtures), design.dims, design.room, spacing, workplane_height
    )


def score_to_doc(score: DesignScore) -> dict:
    return {
        "average_lux": score.average_lux,
        "min_lux": score.min_lux,
        "uniformity": score.uniformity,
        "task_lux": score.task_lux,
        "meets_ambient": score.meets_ambient,
        "meets_task": score.meets_task,
        "scalar_score": score.scalar_score,
    }


def design_to_doc(design: LightingDesign) -> dict:
    doc = {
        "id": design.id,
        "pattern_id": design.pattern_id,
        "room": room_to_doc(design.room),
        "fixtures": [fixture_to_doc(f) for f in design.fixtures],
    }
    if design.room_id is not None:
        doc["room_id"] = design.room_id
    return doc


def design_from_doc(doc: dict) -> LightingDesign:
    try:
        room = validate_room(room_from_doc(doc["room"]))
        fixtures = tuple(fixture_from_doc(f) for f in doc["fixtures"])
        design = LightingDesign(
            id=str(doc["id"]),
            pattern_id=str(doc["pattern_id"]),
            fixtures=fixtures,
            room=room,
            room_id=doc.get("room_id"),
        )
    except (KeyError, TypeError) as exc:
        raise MalformedDocument(f"bad design document: {exc}") from exc
    check_fixtures(design)
    return design
