"""Exception types shared across the engine.

The class name doubles as the wire-level error name that the HTTP service
and the CLI report, so these are named after the condition, not suffixed
with "Error".
"""


class LuxforgeError(Exception):
    """Base class for every engine-raised failure."""


class GeometryError(LuxforgeError):
    """Base class for room validation failures."""


class DegenerateOutline(GeometryError):
    pass


class SelfIntersectingOutline(GeometryError):
    pass


class ObjectOutsideRoom(GeometryError):
    pass


class NonPositiveHeight(GeometryError):
    pass


class InvalidSurface(GeometryError):
    pass


class EmptyGrid(LuxforgeError):
    pass


class CoincidentPoint(LuxforgeError):
    pass


class ReflectanceSaturated(LuxforgeError):
    pass


class DuplicatePatternId(LuxforgeError):
    pass


class MalformedPattern(LuxforgeError):
    pass


class NoApplicablePattern(LuxforgeError):
    pass


class AnchorMissing(LuxforgeError):
    pass


class PlacementOutsideWall(LuxforgeError):
    pass


class FixtureOutsideRoom(LuxforgeError):
    pass


class InvalidFixture(LuxforgeError):
    pass


class UnknownZone(LuxforgeError):
    pass


class UnknownFixture(LuxforgeError):
    pass


class ZeroBaselineEnergy(LuxforgeError):
    pass


class MalformedDocument(LuxforgeError):
    pass


class IoFailure(LuxforgeError):
    pass


class CorruptEntity(LuxforgeError):
    pass
