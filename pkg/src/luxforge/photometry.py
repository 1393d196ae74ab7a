"""Point-by-point illuminance engine.

Fixtures are point sources with axially symmetric intensity I(theta) =
I0 * cos^m(theta) over the emission hemisphere. Direct illuminance follows
the inverse-square cosine law with binary box occlusion; a single uniform
interreflection bounce models ambient light. All evaluation is pure and
deterministic: samples are summed in grid order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import CoincidentPoint, InvalidFixture, MalformedDocument, ReflectanceSaturated
from .geometry import Point3, ValidatedRoom, occludes, workplane_grid
from .geometry import DEFAULT_SPACING, DEFAULT_WORKPLANE_HEIGHT


class Mount(str, Enum):
    CEILING = "ceiling"
    WALL = "wall"
    TABLE = "table"


@dataclass(frozen=True)
class LuminaireSpec:
    """Photometric and electrical description of one luminaire model."""

    name: str
    flux: float
    exponent: float
    power: float
    mount: Mount

    def __post_init__(self) -> None:
        if self.flux <= 0:
            raise InvalidFixture(f"{self.name}: flux {self.flux} must be > 0")
        if self.exponent < 0:
            raise InvalidFixture(f"{self.name}: exponent {self.exponent} must be >= 0")
        if self.power <= 0:
            raise InvalidFixture(f"{self.name}: power {self.power} must be > 0")


@dataclass(frozen=True)
class PlacedFixture:
    """A luminaire at a concrete position.

    axis is the emission direction ((0,0,-1) for ceiling mounts) and must
    be unit length. dim is the current output level; design generation
    emits 1.0 and interactive edits may lower it.
    """

    spec: LuminaireSpec
    position: Point3
    axis: Point3
    zone: str
    dimmable: bool = True
    dim: float = 1.0

    def __post_init__(self) -> None:
        norm = math.sqrt(sum(c * c for c in self.axis))
        if abs(norm - 1.0) > 1e-9:
            raise InvalidFixture(f"axis {self.axis} has norm {norm}, expected 1")
        if not 0.0 <= self.dim <= 1.0:
            raise InvalidFixture(f"dim {self.dim} outside [0, 1]")
        if not self.zone:
            raise InvalidFixture("zone label is empty")

    def aim_point(self, plane_z: float) -> tuple[float, float] | None:
        """Where the emission axis ray crosses the horizontal plane z=plane_z."""
        if self.axis[2] == 0.0:
            return None
        t = (plane_z - self.position[2]) / self.axis[2]
        if t < 0:
            return None
        return (self.position[0] + t * self.axis[0], self.position[1] + t * self.axis[1])


@dataclass(frozen=True)
class FieldStats:
    average: float
    min: float
    max: float
    uniformity: float


@dataclass(frozen=True)
class IlluminanceField:
    points: tuple[Point3, ...]
    lux: tuple[float, ...]
    stats: FieldStats


def peak_intensity(spec: LuminaireSpec) -> float:
    """Axial intensity I0 in candela such that the hemisphere integral of
    I0 * cos^m(theta) recovers the spec's flux."""
    return spec.flux * (spec.exponent + 1.0) / (2.0 * math.pi)


def direct_illuminance(
    fixtures: list[PlacedFixture],
    dims: list[float],
    room: ValidatedRoom,
    p: Point3,
) -> float:
    """Horizontal illuminance at p from the fixtures' direct light alone.

    Per fixture: E = dim * I0 * cos^m(theta) * cos(xi) / d^2, zeroed when the
    point is behind the emission hemisphere (theta > 90 deg), below the
    horizontal receiving plane's view (xi > 90 deg), or occluded by a box.
    """
    if len(dims) != len(fixtures):
        raise ValueError(f"{len(dims)} dims for {len(fixtures)} fixtures")
    total = 0.0
    for fixture, dim in zip(fixtures, dims):
        if not 0.0 <= dim <= 1.0:
            raise ValueError(f"dim {dim} outside [0, 1]")
        fx, fy, fz = fixture.position
        vx, vy, vz = p[0] - fx, p[1] - fy, p[2] - fz
        d2 = vx * vx + vy * vy + vz * vz
        if d2 == 0.0:
            raise CoincidentPoint(f"sample point coincides with fixture at {fixture.position}")
        d = math.sqrt(d2)
        ax, ay, az = fixture.axis
        cos_theta = (ax * vx + ay * vy + az * vz) / d
        # cos(xi): angle at the receiver between straight up and the fixture.
        cos_xi = -vz / d
        if cos_theta < 0.0 or cos_xi <= 0.0 or dim == 0.0:
            continue
        if occludes(room, fixture.position, p):
            continue
        i0 = peak_intensity(fixture.spec)
        total += dim * i0 * cos_theta**fixture.spec.exponent * cos_xi / d2
    return total


def mean_reflectance(room: ValidatedRoom) -> tuple[float, float]:
    """(area-weighted mean reflectance, total interior surface area)."""
    wall_area = sum(w.length for w in room.walls) * room.ceiling_height
    total_area = 2.0 * room.area + wall_area
    weighted = room.area * (room.floor_reflectance + room.ceiling_reflectance)
    for wall, rho in zip(room.walls, room.wall_reflectances):
        weighted += wall.length * room.ceiling_height * rho
    return weighted / total_area, total_area


def ambient_component(
    fixtures: list[PlacedFixture], dims: list[float], room: ValidatedRoom
) -> float:
    """Uniform single-bounce interreflection term added to every sample."""
    if len(dims) != len(fixtures):
        raise ValueError(f"{len(dims)} dims for {len(fixtures)} fixtures")
    rho, total_area = mean_reflectance(room)
    if rho >= 1.0 - 1e-9:
        raise ReflectanceSaturated(f"mean reflectance {rho} leaves no absorbed light")
    emitted = sum(dim * f.spec.flux for f, dim in zip(fixtures, dims))
    return emitted * rho / (total_area * (1.0 - rho))


def illuminance_field(
    fixtures: list[PlacedFixture],
    dims: list[float],
    room: ValidatedRoom,
    spacing: float = DEFAULT_SPACING,
    workplane_height: float = DEFAULT_WORKPLANE_HEIGHT,
) -> IlluminanceField:
    """Direct + ambient illuminance over the workplane grid, with stats."""
    grid = workplane_grid(room, spacing, workplane_height)
    ambient = ambient_component(fixtures, dims, room)
    lux = tuple(direct_illuminance(fixtures, dims, room, p) + ambient for p in grid)
    return IlluminanceField(points=tuple(grid), lux=lux, stats=field_stats(lux))


def field_stats(lux: tuple[float, ...]) -> FieldStats:
    average = sum(lux) / len(lux)
    lo = min(lux)
    hi = max(lux)
    uniformity = lo / average if average > 0.0 else 0.0
    return FieldStats(average=average, min=lo, max=hi, uniformity=uniformity)


def field_to_csv(field: IlluminanceField) -> str:
    """CSV export: header x,y,lux, one row per sample in grid order.

    Floats are written with repr so every value round-trips exactly.
    """
    lines = ["x,y,lux"]
    for (x, y, _z), e in zip(field.points, field.lux):
        lines.append(f"{x!r},{y!r},{e!r}")
    return "\n".join(lines) + "\n"


def field_to_pgm(field: IlluminanceField, room: ValidatedRoom, spacing: float) -> str:
    """Plain PGM (P2) of the field over the outline's bounding-box lattice.

    Max lux maps to 255, zero to 0; lattice cells with no sample are 0.
    The top image row is the row with the largest y.
    """
    xs = [v[0] for v in room.outline]
    ys = [v[1] for v in room.outline]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    nx = max(1, math.ceil((maxx - minx) / spacing))
    ny = max(1, math.ceil((maxy - miny) / spacing))
    peak = max(field.lux) if field.lux else 0.0
    cells = {}
    for (x, y, _z), e in zip(field.points, field.lux):
        i = int(round((x - minx) / spacing - 0.5))
        j = int(round((y - miny) / spacing - 0.5))
        cells[(i, j)] = e
    rows = ["P2", f"{nx} {ny}", "255"]
    for j in range(ny - 1, -1, -1):
        row = []
        for i in range(nx):
            e = cells.get((i, j), 0.0)
            row.append(str(round(255.0 * e / peak)) if peak > 0.0 else "0")
        rows.append(" ".join(row))
    return "\n".join(rows) + "\n"


# --- fixture document codec ---------------------------------------------

def spec_to_doc(spec: LuminaireSpec) -> dict:
    return {
        "name": spec.name,
        "flux": spec.flux,
        "exponent": spec.exponent,
        "power": spec.power,
        "mount": spec.mount.value,
    }


def spec_from_doc(doc: dict) -> LuminaireSpec:
    try:
        return LuminaireSpec(
            name=str(doc["name"]),
            flux=float(doc["flux"]),
            exponent=float(doc["exponent"]),
            power=float(doc["power"]),
            mount=Mount(doc["mount"]),
        )
    except InvalidFixture:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad luminaire spec: {exc}") from exc


def fixture_to_doc(fixture: PlacedFixture) -> dict:
    return {
        "spec": spec_to_doc(fixture.spec),
        "position": list(fixture.position),
        "axis": list(fixture.axis),
        "zone": fixture.zone,
        "dimmable": fixture.dimmable,
        "dim": fixture.dim,
    }


def fixture_from_doc(doc: dict) -> PlacedFixture:
    try:
        px, py, pz = doc["position"]
        ax, ay, az = doc["axis"]
        return PlacedFixture(
            spec=spec_from_doc(doc["spec"]),
            position=(float(px), float(py), float(pz)),
            axis=(float(ax), float(ay), float(az)),
            zone=str(doc["zone"]),
            dimmable=bool(doc.get("dimmable", True)),
            dim=float(doc.get("dim", 1.0)),
        )
    except (InvalidFixture, MalformedDocument):
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad fixture: {exc}") from exc
