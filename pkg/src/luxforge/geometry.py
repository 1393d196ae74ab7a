"""Room geometry: outline validation, containment tests, workplane sampling,
and box occlusion.

All lengths are meters. Room outlines are simple polygons stored
counter-clockwise; furniture objects are axis-aligned boxes standing on the
floor. Boundary points count as inside so wall-mounted fixtures at exact
wall coordinates pass containment.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DegenerateOutline,
    EmptyGrid,
    InvalidSurface,
    MalformedDocument,
    NonPositiveHeight,
    ObjectOutsideRoom,
    SelfIntersectingOutline,
)

Point2 = tuple[float, float]
Point3 = tuple[float, float, float]

DEFAULT_SPACING = 0.25
DEFAULT_WORKPLANE_HEIGHT = 0.8

# Distance below which a point counts as lying on a boundary.
BOUNDARY_EPS = 1e-9

DEFAULT_REFLECTANCE = {"floor": 0.2, "ceiling": 0.7, "wall": 0.5}

_WALL_KIND = re.compile(r"^wall(?:\[(\d+)\])?$")


class RoomFunction(str, Enum):
    BEDROOM = "bedroom"
    LIVING_ROOM = "living_room"
    BATHROOM = "bathroom"
    BALCONY = "balcony"
    CLOSET = "closet"
    CORRIDOR = "corridor"


class ObjectKind(str, Enum):
    BED = "bed"
    TV = "tv"
    DESK = "desk"
    DRESSER = "dresser"
    CLOSET = "closet"
    NIGHTSTAND = "nightstand"
    OTHER = "other"


@dataclass(frozen=True)
class Surface:
    """One reflective surface.

    kind is "floor", "ceiling", "wall" (applies to every wall) or "wall[i]"
    (the wall on outline edge i). Reflectance is dimensionless in [0, 1].
    """

    kind: str
    reflectance: float

    def __post_init__(self) -> None:
        if self.kind not in ("floor", "ceiling") and not _WALL_KIND.match(self.kind):
            raise InvalidSurface(f"unknown surface kind {self.kind!r}")
        if not 0.0 <= self.reflectance <= 1.0:
            raise InvalidSurface(
                f"reflectance {self.reflectance} outside [0, 1] for {self.kind!r}"
            )


@dataclass(frozen=True)
class FurnitureObject:
    """Axis-aligned furniture box: footprint is ((minx, miny), (maxx, maxy))."""

    kind: ObjectKind
    footprint: tuple[Point2, Point2]
    height: float
    facing: Point2 | None = None

    def __post_init__(self) -> None:
        (minx, miny), (maxx, maxy) = self.footprint
        if not (minx < maxx and miny < maxy):
            raise ValueError(f"{self.kind.value} footprint has no area")
        if self.facing is not None:
            norm = math.hypot(*self.facing)
            if norm == 0.0:
                raise ValueError(f"{self.kind.value} facing vector is zero")
            object.__setattr__(
                self, "facing", (self.facing[0] / norm, self.facing[1] / norm)
            )

    @property
    def center(self) -> Point2:
        (minx, miny), (maxx, maxy) = self.footprint
        return ((minx + maxx) / 2.0, (miny + maxy) / 2.0)

    @property
    def corners(self) -> tuple[Point2, Point2, Point2, Point2]:
        (minx, miny), (maxx, maxy) = self.footprint
        return ((minx, miny), (maxx, miny), (maxx, maxy), (minx, maxy))


@dataclass(frozen=True)
class RoomModel:
    outline: tuple[Point2, ...]
    ceiling_height: float
    surfaces: tuple[Surface, ...] = ()
    objects: tuple[FurnitureObject, ...] = ()
    function: RoomFunction = RoomFunction.BEDROOM


@dataclass(frozen=True)
class WallSegment:
    index: int
    start: Point2
    end: Point2
    inward_normal: Point2
    length: float

    @property
    def direction(self) -> Point2:
        return (
            (self.end[0] - self.start[0]) / self.length,
            (self.end[1] - self.start[1]) / self.length,
        )


@dataclass(frozen=True)
class ValidatedRoom:
    """A RoomModel whose invariants all hold, with derived wall data attached."""

    model: RoomModel
    walls: tuple[WallSegment, ...]
    area: float
    perimeter: float
    floor_reflectance: float
    ceiling_reflectance: float
    wall_reflectances: tuple[float, ...]

    @property
    def outline(self) -> tuple[Point2, ...]:
        return self.model.outline

    @property
    def ceiling_height(self) -> float:
        return self.model.ceiling_height

    @property
    def objects(self) -> tuple[FurnitureObject, ...]:
        return self.model.objects

    @property
    def function(self) -> RoomFunction:
        return self.model.function


def _signed_area(outline: tuple[Point2, ...]) -> float:
    total = 0.0
    n = len(outline)
    for i in range(n):
        x1, y1 = outline[i]
        x2, y2 = outline[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total / 2.0


def _orient(a: Point2, b: Point2, c: Point2) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _within_bbox(a: Point2, b: Point2, c: Point2) -> bool:
    return (
        min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
    )


def _segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool:
    """Closed-segment intersection, collinear overlaps included."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and _within_bbox(q1, q2, p1):
        return True
    if d2 == 0 and _within_bbox(q1, q2, p2):
        return True
    if d3 == 0 and _within_bbox(p1, p2, q1):
        return True
    if d4 == 0 and _within_bbox(p1, p2, q2):
        return True
    return False


def _point_segment_distance(p: Point2, a: Point2, b: Point2) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / seg2
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def _crossing_count(outline: tuple[Point2, ...], p: Point2) -> int:
    x, y = p
    count = 0
    n = len(outline)
    for i in range(n):
        x1, y1 = outline[i]
        x2, y2 = outline[(i + 1) % n]
        if (y1 <= y) != (y2 <= y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < xi:
                count += 1
    return count


def _rect_inside_outline(room: ValidatedRoom, obj: FurnitureObject) -> bool:
    """A rectangle is inside iff all corners are inside and no outline edge
    passes through its open interior (touching the boundary is allowed)."""
    if not all(point_in_room(room, c) for c in obj.corners):
        return False
    (minx, miny), (maxx, maxy) = obj.footprint
    for wall in room.walls:
        clip = _clip_segment_to_rect(wall.start, wall.end, (minx, miny), (maxx, maxy))
        if clip is None:
            continue
        t0, t1 = clip
        tm = (t0 + t1) / 2.0
        mx = wall.start[0] + tm * (wall.end[0] - wall.start[0])
        my = wall.start[1] + tm * (wall.end[1] - wall.start[1])
        if minx < mx < maxx and miny < my < maxy:
            return False
    return True


def _clip_segment_to_rect(
    a: Point2, b: Point2, lo: Point2, hi: Point2
) -> tuple[float, float] | None:
    """Liang-Barsky clip of segment a-b to a closed rectangle; returns the
    surviving parameter interval or None."""
    t0, t1 = 0.0, 1.0
    for k in range(2):
        d = b[k] - a[k]
        if d == 0.0:
            if a[k] < lo[k] or a[k] > hi[k]:
                return None
            continue
        u0 = (lo[k] - a[k]) / d
        u1 = (hi[k] - a[k]) / d
        if u0 > u1:
            u0, u1 = u1, u0
        t0 = max(t0, u0)
        t1 = min(t1, u1)
        if t0 > t1:
            return None
    return (t0, t1)


def _resolve_surfaces(
    surfaces: tuple[Surface, ...], n_walls: int
) -> tuple[float, float, tuple[float, ...]]:
    floor = None
    ceiling = None
    walls: list[float | None] = [None] * n_walls
    all_walls = None
    for s in surfaces:
        if s.kind == "floor":
            if floor is not None:
                raise InvalidSurface("duplicate floor surface")
            floor = s.reflectance
        elif s.kind == "ceiling":
            if ceiling is not None:
                raise InvalidSurface("duplicate ceiling surface")
            ceiling = s.reflectance
        else:
            m = _WALL_KIND.match(s.kind)
            assert m is not None
            if m.group(1) is None:
                if all_walls is not None:
                    raise InvalidSurface("duplicate blanket wall surface")
                all_walls = s.reflectance
            else:
                idx = int(m.group(1))
                if idx >= n_walls:
                    raise InvalidSurface(
                        f"wall index {idx} out of range for {n_walls} walls"
                    )
                if walls[idx] is not None:
                    raise InvalidSurface(f"duplicate surface for wall[{idx}]")
                walls[idx] = s.reflectance
    wall_default = all_walls if all_walls is not None else DEFAULT_REFLECTANCE["wall"]
    resolved = tuple(w if w is not None else wall_default for w in walls)
    return (
        floor if floor is not None else DEFAULT_REFLECTANCE["floor"],
        ceiling if ceiling is not None else DEFAULT_REFLECTANCE["ceiling"],
        resolved,
    )


def validate_room(model: RoomModel) -> ValidatedRoom:
    """Check every RoomModel invariant and derive wall segments and areas.

    Clockwise outlines are accepted and canonicalized to counter-clockwise.
    Raises DegenerateOutline, SelfIntersectingOutline, NonPositiveHeight,
    ObjectOutsideRoom or InvalidSurface, naming the offending element.
    """
    outline = tuple((float(x), float(y)) for x, y in model.outline)
    n = len(outline)
    if n < 3:
        raise DegenerateOutline(f"outline has {n} vertices, need at least 3")
    for i in range(n):
        a, b = outline[i], outline[(i + 1) % n]
        if math.hypot(b[0] - a[0], b[1] - a[1]) == 0.0:
            raise DegenerateOutline(f"zero-length edge at vertex {i}")
    for i in range(n):
        for j in range(i + 1, n):
            # Skip pairs that share a vertex (adjacent, incl. the wraparound pair).
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_intersect(
                outline[i], outline[(i + 1) % n], outline[j], outline[(j + 1) % n]
            ):
                raise SelfIntersectingOutline(f"edges {i} and {j} intersect")
    area2 = _signed_area(outline)
    if abs(area2) < 1e-12:
        raise DegenerateOutline("outline encloses zero area")
    if area2 < 0:
        outline = outline[:1] + tuple(reversed(outline[1:]))

    if model.ceiling_height <= 0:
        raise NonPositiveHeight(f"ceiling_height {model.ceiling_height} must be > 0")

    walls = []
    perimeter = 0.0
    for i in range(len(outline)):
        a, b = outline[i], outline[(i + 1) % len(outline)]
        length = math.hypot(b[0] - a[0], b[1] - a[1])
        # CCW orientation puts the interior on the left of each edge.
        normal = (-(b[1] - a[1]) / length, (b[0] - a[0]) / length)
        walls.append(WallSegment(index=i, start=a, end=b, inward_normal=normal, length=length))
        perimeter += length

    floor_r, ceiling_r, wall_r = _resolve_surfaces(model.surfaces, len(walls))
    canonical = RoomModel(
        outline=outline,
        ceiling_height=float(model.ceiling_height),
        surfaces=model.surfaces,
        objects=model.objects,
        function=model.function,
    )
    room = ValidatedRoom(
        model=canonical,
        walls=tuple(walls),
        area=abs(area2),
        perimeter=perimeter,
        floor_reflectance=floor_r,
        ceiling_reflectance=ceiling_r,
        wall_reflectances=wall_r,
    )

    for idx, obj in enumerate(model.objects):
        label = f"{obj.kind.value} (object {idx})"
        if obj.height <= 0:
            raise NonPositiveHeight(f"{label} height {obj.height} must be > 0")
        if obj.height > model.ceiling_height:
            raise ObjectOutsideRoom(
                f"{label} height {obj.height} exceeds ceiling {model.ceiling_height}"
            )
        if not _rect_inside_outline(room, obj):
            raise ObjectOutsideRoom(f"{label} footprint extends outside the outline")
    return room


def point_in_room(room: ValidatedRoom, p: Point2) -> bool:
    """True iff p is strictly inside the outline or on its boundary."""
    for wall in room.walls:
        if _point_segment_distance(p, wall.start, wall.end) <= BOUNDARY_EPS:
            return True
    return _crossing_count(room.outline, p) % 2 == 1


def point_in_volume(room: ValidatedRoom, p: Point3) -> bool:
    return 0.0 <= p[2] <= room.ceiling_height and point_in_room(room, (p[0], p[1]))


def wall_segments(room: ValidatedRoom) -> tuple[WallSegment, ...]:
    """One segment per outline edge, indexed in outline order."""
    return room.walls


def workplane_grid(
    room: ValidatedRoom,
    spacing: float = DEFAULT_SPACING,
    workplane_height: float = DEFAULT_WORKPLANE_HEIGHT,
) -> list[Point3]:
    """Cell-center sample points of a square grid over the room's workplane.

    The grid is anchored at the outline bounding box minimum corner. Points
    outside the outline are dropped, as are points over an object footprint
    whose height reaches the workplane. Ordering is row-major: ascending y,
    then ascending x.
    """
    if spacing <= 0:
        raise ValueError(f"spacing {spacing} must be > 0")
    if not 0.0 <= workplane_height < room.ceiling_height:
        raise ValueError(
            f"workplane height {workplane_height} outside [0, {room.ceiling_height})"
        )
    xs = [v[0] for v in room.outline]
    ys = [v[1] for v in room.outline]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    nx = max(1, math.ceil((maxx - minx) / spacing))
    ny = max(1, math.ceil((maxy - miny) / spacing))
    masking = [o for o in room.objects if o.height >= workplane_height]

    points: list[Point3] = []
    for j in range(ny):
        y = miny + (j + 0.5) * spacing
        for i in range(nx):
            x = minx + (i + 0.5) * spacing
            if not point_in_room(room, (x, y)):
                continue
            if any(_strictly_inside_footprint((x, y), o) for o in masking):
                continue
            points.append((x, y, workplane_height))
    if not points:
        raise EmptyGrid(f"no workplane sample survives at spacing {spacing}")
    return points


def _strictly_inside_footprint(p: Point2, obj: FurnitureObject) -> bool:
    (minx, miny), (maxx, maxy) = obj.footprint
    return minx < p[0] < maxx and miny < p[1] < maxy


def occludes(room: ValidatedRoom, a: Point3, b: Point3) -> bool:
    """True iff the open segment a-b passes through any object's box.

    Objects are footprints extruded from z=0 to z=height. An endpoint that
    merely touches a box face does not occlude; the overlap must have
    positive length.
    """
    for obj in room.objects:
        (minx, miny), (maxx, maxy) = obj.footprint
        lo = (minx, miny, 0.0)
        hi = (maxx, maxy, obj.height)
        if _segment_box_overlap(a, b, lo, hi) > 1e-12:
            return True
    return False


def _segment_box_overlap(a: Point3, b: Point3, lo: Point3, hi: Point3) -> float:
    """Length (in segment parameter t) of the part of a-b inside the closed box."""
    t0, t1 = 0.0, 1.0
    for k in range(3):
        d = b[k] - a[k]
        if d == 0.0:
            if a[k] < lo[k] or a[k] > hi[k]:
                return 0.0
            continue
        u0 = (lo[k] - a[k]) / d
        u1 = (hi[k] - a[k]) / d
        if u0 > u1:
            u0, u1 = u1, u0
        t0 = max(t0, u0)
        t1 = min(t1, u1)
        if t0 >= t1:
            return 0.0
    return t1 - t0


def polygon_centroid(outline: tuple[Point2, ...]) -> Point2:
    """Area-weighted centroid of a simple polygon."""
    a = 0.0
    cx = 0.0
    cy = 0.0
    n = len(outline)
    for i in range(n):
        x1, y1 = outline[i]
        x2, y2 = outline[(i + 1) % n]
        cross = x1 * y2 - x2 * y1
        a += cross
        cx += (x1 + x2) * cross
        cy += (y1 + y2) * cross
    a /= 2.0
    return (cx / (6.0 * a), cy / (6.0 * a))


# --- room document codec ------------------------------------------------

def room_to_doc(room: ValidatedRoom | RoomModel) -> dict:
    model = room.model if isinstance(room, ValidatedRoom) else room
    doc: dict = {
        "outline": [[x, y] for x, y in model.outline],
        "ceiling_height": model.ceiling_height,
        "surfaces": [
            {"kind": s.kind, "reflectance": s.reflectance} for s in model.surfaces
        ],
        "objects": [],
        "function": model.function.value,
    }
    for obj in model.objects:
        entry: dict = {
            "kind": obj.kind.value,
            "footprint": [list(obj.footprint[0]), list(obj.footprint[1])],
            "height": obj.height,
        }
        if obj.facing is not None:
            entry["facing"] = list(obj.facing)
        doc["objects"].append(entry)
    return doc


def room_from_doc(doc: dict) -> RoomModel:
    """Parse a room document; raises MalformedDocument on shape errors."""
    try:
        outline = tuple((float(x), float(y)) for x, y in doc["outline"])
        surfaces = tuple(
            Surface(kind=s["kind"], reflectance=float(s["reflectance"]))
            for s in doc.get("surfaces", [])
        )
        objects = []
        for o in doc.get("objects", []):
            (amin, amax) = o["footprint"]
            facing = o.get("facing")
            objects.append(
                FurnitureObject(
                    kind=ObjectKind(o["kind"]),
                    footprint=(
                        (float(amin[0]), float(amin[1])),
                        (float(amax[0]), float(amax[1])),
                    ),
                    height=float(o["height"]),
                    facing=(float(facing[0]), float(facing[1])) if facing else None,
                )
            )
        return RoomModel(
            outline=outline,
            ceiling_height=float(doc["ceiling_height"]),
            surfaces=surfaces,
            objects=tuple(objects),
            function=RoomFunction(doc.get("function", "bedroom")),
        )
    except InvalidSurface:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad room document: {exc}") from exc
