"""Lighting design patterns and room analysis.

A pattern maps a room function plus furniture anchors to a placement rule;
the built-in library covers bedrooms: a central ceiling light, wall lights
flanking or above the bed/TV, and a guideline layout of one ceiling light
plus two table lamps. Libraries are data files so new room types need no
code changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .errors import DuplicatePatternId, MalformedPattern, NoApplicablePattern
from .geometry import (
    ObjectKind,
    Point2,
    RoomFunction,
    ValidatedRoom,
    WallSegment,
    polygon_centroid,
    point_in_room,
    workplane_grid,
)
from .photometry import LuminaireSpec, spec_from_doc, spec_to_doc

# Footprints within this distance of a wall count as against it.
WALL_ADJACENCY = 0.05


class PatternFamily(str, Enum):
    CEILING_CENTRAL = "ceiling_central"
    FLANK_OBJECT = "flank_object"
    ABOVE_OBJECT = "above_object"
    GUIDELINE_BEDROOM = "guideline_bedroom"


@dataclass(frozen=True)
class Anchor:
    """A furniture object that parameterizes placement, with its nearest wall."""

    kind: ObjectKind
    center: Point2
    wall_index: int
    wall_distance: float
    adjacent: bool
    object_index: int


@dataclass(frozen=True)
class RoomAnalysis:
    anchors: tuple[Anchor, ...]
    free_ceiling_centroid: Point2
    function: RoomFunction
    walls: tuple[WallSegment, ...]

    def anchors_of(self, kind: ObjectKind) -> tuple[Anchor, ...]:
        return tuple(a for a in self.anchors if a.kind == kind)


@dataclass(frozen=True)
class PlacementParams:
    """Geometric constants of the placement rules; patterns may override."""

    flank_offset: float = 0.3
    flank_height: float = 1.2
    above_height: float = 1.8
    table_height: float = 0.6
    table_offset: float = 0.3
    tilt_deg: float = 30.0


@dataclass(frozen=True)
class TargetLux:
    ambient: float
    task: float | None = None


@dataclass(frozen=True)
class DesignPattern:
    id: str
    family: PatternFamily
    target_function: RoomFunction
    preconditions: tuple[ObjectKind, ...]
    specs: dict[str, LuminaireSpec]
    target_lux: TargetLux
    placement: PlacementParams = field(default_factory=PlacementParams)


@dataclass(frozen=True)
class PatternLibrary:
    patterns: tuple[DesignPattern, ...]
    version: str


_ANCHOR_KINDS = (
    ObjectKind.BED,
    ObjectKind.TV,
    ObjectKind.DESK,
    ObjectKind.DRESSER,
    ObjectKind.CLOSET,
)


def _segment_distance(a1: Point2, a2: Point2, b1: Point2, b2: Point2) -> float:
    from .geometry import _point_segment_distance, _segments_intersect

    if _segments_intersect(a1, a2, b1, b2):
        return 0.0
    return min(
        _point_segment_distance(a1, b1, b2),
        _point_segment_distance(a2, b1, b2),
        _point_segment_distance(b1, a1, a2),
        _point_segment_distance(b2, a1, a2),
    )


def analyze_room(room: ValidatedRoom) -> RoomAnalysis:
    """Extract the anchors and the free ceiling point that placement rules use.

    Each bed/tv/desk/dresser/closet object yields one anchor tagged with its
    nearest wall; the wall counts as adjacent when the footprint comes within
    0.05 m of it. The free ceiling point is the outline centroid, or the
    nearest interior grid point when the centroid of a non-convex outline
    falls outside.
    """
    anchors: list[Anchor] = []
    for idx, obj in enumerate(room.objects):
        if obj.kind not in _ANCHOR_KINDS:
            continue
        corners = obj.corners
        edges = [(corners[i], corners[(i + 1) % 4]) for i in range(4)]
        best_wall = 0
        best_dist = float("inf")
        for wall in room.walls:
            dist = min(_segment_distance(e[0], e[1], wall.start, wall.end) for e in edges)
            if dist < best_dist:
                best_dist = dist
                best_wall = wall.index
        anchors.append(
            Anchor(
                kind=obj.kind,
                center=obj.center,
                wall_index=best_wall,
                wall_distance=best_dist,
                adjacent=best_dist <= WALL_ADJACENCY,
                object_index=idx,
            )
        )

    centroid = polygon_centroid(room.outline)
    if not point_in_room(room, centroid):
        grid = workplane_grid(room)
        centroid = min(
            ((p[0], p[1]) for p in grid),
            key=lambda q: ((q[0] - centroid[0]) ** 2 + (q[1] - centroid[1]) ** 2, q),
        )
    return RoomAnalysis(
        anchors=tuple(anchors),
        free_ceiling_centroid=centroid,
        function=room.function,
        walls=room.walls,
    )


def pattern_from_doc(doc: dict) -> DesignPattern:
    try:
        specs = {role: spec_from_doc(s) for role, s in doc["specs"].items()}
        target = doc["target_lux"]
        placement = PlacementParams(**doc.get("placement", {}))
        pattern = DesignPattern(
            id=str(doc["id"]),
            family=PatternFamily(doc["family"]),
            target_function=RoomFunction(doc["target_function"]),
            preconditions=tuple(ObjectKind(k) for k in doc.get("preconditions", [])),
            specs=specs,
            target_lux=TargetLux(
                ambient=float(target["ambient"]),
                task=float(target["task"]) if target.get("task") is not None else None,
            ),
            placement=placement,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedPattern(f"pattern {doc.get('id', '?')!r}: {exc}") from exc
    if pattern.family in (PatternFamily.FLANK_OBJECT, PatternFamily.ABOVE_OBJECT):
        if len(pattern.preconditions) != 1:
            raise MalformedPattern(
                f"pattern {pattern.id!r}: {pattern.family.value} needs exactly one anchor kind"
            )
    return pattern


def pattern_to_doc(pattern: DesignPattern) -> dict:
    return {
        "id": pattern.id,
        "family": pattern.family.value,
        "target_function": pattern.target_function.value,
        "preconditions": [k.value for k in pattern.preconditions],
        "placement": {
            "flank_offset": pattern.placement.flank_offset,
            "flank_height": pattern.placement.flank_height,
            "above_height": pattern.placement.above_height,
            "table_height": pattern.placement.table_height,
            "table_offset": pattern.placement.table_offset,
            "tilt_deg": pattern.placement.tilt_deg,
        },
        "specs": {role: spec_to_doc(s) for role, s in pattern.specs.items()},
        "target_lux": {
            "ambient": pattern.target_lux.ambient,
            "task": pattern.target_lux.task,
        },
    }


def load_pattern_library(doc: dict) -> PatternLibrary:
    patterns = doc.get("patterns")
    if not isinstance(patterns, list) or not patterns:
        raise MalformedPattern("library has no patterns")
    parsed = []
    seen = set()
    for entry in patterns:
        pattern = pattern_from_doc(entry)
        if pattern.id in seen:
            raise DuplicatePatternId(pattern.id)
        seen.add(pattern.id)
        parsed.append(pattern)
    return PatternLibrary(patterns=tuple(parsed), version=str(doc.get("version", "1")))


def library_to_doc(library: PatternLibrary) -> dict:
    return {
        "version": library.version,
        "patterns": [pattern_to_doc(p) for p in library.patterns],
    }


def default_library() -> PatternLibrary:
    """The built-in library shipped with the package."""
    text = resources.files("luxforge").joinpath("data/default_patterns.json").read_text()
    return load_pattern_library(json.loads(text))


def match_patterns(analysis: RoomAnalysis, library: PatternLibrary) -> list[DesignPattern]:
    """Patterns applicable to the analyzed room, in library order."""
    present = {a.kind for a in analysis.anchors}
    matched = [
        p
        for p in library.patterns
        if p.target_function == analysis.function and all(k in present for k in p.preconditions)
    ]
    if not matched:
        raise NoApplicablePattern(
            f"no pattern targets a {analysis.function.value} with anchors "
            f"{sorted(k.value for k in present)}"
        )
    return matched
