"""Discrete-time simulator for smart-lighting control strategies.

Six rule kinds drive per-fixture dim levels and a window blind from
occupancy, clock time, daylight, and discrete events. Rules evaluate in
ascending priority each tick and later writes win per fixture, so
arbitration between overlapping strategies is explicit and testable.
Energy uses the linear dim -> power model shared with the photometric
dim -> flux assumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    CoincidentPoint,
    MalformedDocument,
    UnknownFixture,
    UnknownZone,
    ZeroBaselineEnergy,
)
from .geometry import Point3, ValidatedRoom
from .photometry import ambient_component, direct_illuminance
from .designgen import LightingDesign

EVENT_KINDS = (
    "closet_open",
    "closet_close",
    "dresser_sit",
    "dresser_leave",
    "night_wake",
    "enter_room",
    "leave_room",
)

# Default dim level for night-wake linkage: low light for orientation
# without full wake-up brightness.
NIGHT_WAKE_DIM = 0.15

MINUTES_PER_DAY = 1440


def _cos_deg(angle: float) -> float:
    # Exact zero at quarter turns so a fully closed blind transmits nothing.
    if angle % 180.0 == 90.0:
        return 0.0
    return math.cos(math.radians(angle))


def parse_time(value) -> float:
    """Clock time as minutes; accepts a number or an "HH:MM" string."""
    if isinstance(value, str):
        try:
            hours, minutes = value.split(":")
            out = int(hours) * 60 + int(minutes)
        except ValueError as exc:
            raise MalformedDocument(f"bad time {value!r}, expected HH:MM") from exc
    else:
        out = float(value)
    if not 0 <= out <= MINUTES_PER_DAY:
        raise MalformedDocument(f"time {value!r} outside 00:00..24:00")
    return float(out)


def format_time(minute: float) -> str:
    m = int(minute) % MINUTES_PER_DAY
    return f"{m // 60:02d}:{m % 60:02d}"


@dataclass(frozen=True)
class EventSpec:
    """Matches schedule events by kind, and by zone when one is given."""

    kind: str
    zone: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in EVENT_KINDS:
            raise MalformedDocument(f"unknown event kind {self.kind!r}")

    def matches(self, event: Event) -> bool:
        return event.kind == self.kind and (self.zone is None or self.zone == event.zone)

    def label(self) -> str:
        return self.kind if self.zone is None else f"{self.kind}:{self.zone}"


@dataclass(frozen=True)
class Event:
    minute: float
    kind: str
    zone: str | None = None

    def label(self) -> str:
        return self.kind if self.zone is None else f"{self.kind}:{self.zone}"


@dataclass(frozen=True)
class OccupancyOnOff:
    zone: str
    priority: int = 0


@dataclass(frozen=True)
class ConstantIlluminance:
    zone: str
    setpoint: float
    priority: int = 0


@dataclass(frozen=True)
class BlindControl:
    daylight_threshold: float
    priority: int = 0


@dataclass(frozen=True)
class Timing:
    zone: str
    on_time: float
    off_time: float
    priority: int = 0


@dataclass(frozen=True)
class ThresholdTimer:
    zone: str
    lux_threshold: float
    window_start: float
    window_end: float
    priority: int = 0


@dataclass(frozen=True)
class Scene:
    name: str
    trigger: EventSpec
    dims: dict[str, float]
    priority: int = 0


@dataclass(frozen=True)
class Linkage:
    trigger: EventSpec
    zone: str
    dim_on: float
    off_trigger: EventSpec
    priority: int = 0


Rule = OccupancyOnOff | ConstantIlluminance | BlindControl | Timing | ThresholdTimer | Scene | Linkage


@dataclass(frozen=True)
class ControlPolicy:
    """Rules plus the shared controller parameters.

    deadband None means each constant-illuminance rule uses 10% of its own
    setpoint. gain is the proportional step factor; occupancy_hold is how
    long a zone stays lit after it empties, in minutes.
    """

    rules: tuple[Rule, ...]
    sensor_point: Point3
    deadband: float | None = None
    gain: float = 0.5
    occupancy_hold: float = 0.0
    name: str = "policy"

    def __post_init__(self) -> None:
        if self.deadband is not None and self.deadband < 0:
            raise MalformedDocument(f"deadband {self.deadband} must be >= 0")
        if self.gain <= 0:
            raise MalformedDocument(f"gain {self.gain} must be > 0")
        if self.occupancy_hold < 0:
            raise MalformedDocument(f"occupancy_hold {self.occupancy_hold} must be >= 0")


@dataclass(frozen=True)
class Schedule:
    """External inputs over the simulation horizon.

    occupancy intervals and event minutes are absolute simulation minutes in
    [0, horizon); daylight is a piecewise-linear breakpoint list of
    (minute, lux) giving the unshaded lux the sensor would receive.
    """

    horizon: float
    dt: float = 1.0
    occupancy: dict[str, tuple[tuple[float, float], ...]] = field(default_factory=dict)
    daylight: tuple[tuple[float, float], ...] = ()
    events: tuple[Event, ...] = ()

    def __post_init__(self) -> None:
        if self.horizon <= 0 or self.dt <= 0:
            raise MalformedDocument("horizon and dt must be > 0")
        n = self.horizon / self.dt
        if abs(n - round(n)) > 1e-9:
            raise MalformedDocument(f"dt {self.dt} does not divide horizon {self.horizon}")
        for zone, intervals in self.occupancy.items():
            for start, end in intervals:
                if not 0 <= start < end <= self.horizon:
                    raise MalformedDocument(
                        f"occupancy interval [{start}, {end}) for {zone!r} "
                        f"outside [0, {self.horizon})"
                    )
        for e in self.events:
            if not 0 <= e.minute < self.horizon:
                raise MalformedDocument(f"event {e.label()} at minute {e.minute} outside horizon")
        minutes = [m for m, _ in self.daylight]
        if minutes != sorted(minutes):
            raise MalformedDocument("daylight breakpoints must be sorted by minute")

    @property
    def ticks(self) -> int:
        return round(self.horizon / self.dt)

    def occupied(self, zone: str, minute: float) -> bool:
        return any(s <= minute < e for s, e in self.occupancy.get(zone, ()))

    def daylight_at(self, minute: float) -> float:
        pts = self.daylight
        if not pts:
            return 0.0
        if minute <= pts[0][0]:
            return pts[0][1]
        if minute >= pts[-1][0]:
            return pts[-1][1]
        for (m0, v0), (m1, v1) in zip(pts, pts[1:]):
            if m0 <= minute <= m1:
                if m1 == m0:
                    return v1
                return v0 + (v1 - v0) * (minute - m0) / (m1 - m0)
        return pts[-1][1]


@dataclass(frozen=True)
class TickRecord:
    tick: int
    minute: float
    dims: tuple[float, ...]
    blind_angle: float
    sensor_lux: float
    occupied: dict[str, bool]
    events: tuple[str, ...]


@dataclass(frozen=True)
class SimulationTrace:
    fixture_ids: tuple[str, ...]
    fixture_zones: tuple[str, ...]
    records: tuple[TickRecord, ...]
    energy_wh: dict[str, float]
    total_wh: float
    dt: float
    horizon: float


def fixture_ids(design: LightingDesign) -> tuple[str, ...]:
    return tuple(f"f{i}" for i in range(len(design.fixtures)))


def sensor_reading(
    design: LightingDesign,
    room: ValidatedRoom,
    dims: list[float],
    blind_angle: float,
    daylight_lux: float,
    sensor_point: Point3,
) -> float:
    """Illuminance the sensor sees: fixtures' direct light, the ambient
    bounce, and daylight attenuated by the blind angle."""
    fixtures = list(design.fixtures)
    direct = direct_illuminance(fixtures, dims, room, sensor_point)
    ambient = ambient_component(fixtures, dims, room)
    return direct + ambient + daylight_lux * _cos_deg(blind_angle)


def bind_policy(policy: ControlPolicy, design: LightingDesign) -> None:
    """Validate all zone and fixture references before tick 0."""
    zones = design.zones
    ids = set(fixture_ids(design))
    for rule in policy.rules:
        zone = getattr(rule, "zone", None)
        if zone is not None and zone not in zones:
            raise UnknownZone(f"rule {type(rule).__name__} references zone {zone!r}")
        if isinstance(rule, Scene):
            for fid in rule.dims:
                if fid not in ids:
                    raise UnknownFixture(f"scene {rule.name!r} references fixture {fid!r}")
    for f in design.fixtures:
        if f.position == policy.sensor_point:
            raise CoincidentPoint(f"sensor point {policy.sensor_point} coincides with a fixture")


def _in_window(minute_of_day: float, start: float, end: float) -> bool:
    if start < end:
        return start <= minute_of_day < end
    return minute_of_day >= start or minute_of_day < end


def simulate(
    design: LightingDesign, policy: ControlPolicy, schedule: Schedule
) -> SimulationTrace:
    """Run the policy over the schedule horizon.

    Per tick: rules evaluate in ascending (priority, list order) against a
    working copy of the actuation state, so a higher-priority rule sees and
    may overwrite what lower ones wrote this tick. Non-dimmable fixtures
    snap to full on/off at the end of the tick. The recorded sensor_lux is
    the post-actuation reading.
    """
    bind_policy(policy, design)
    room = design.room
    zones = design.zones
    fids = fixture_ids(design)
    ordered = sorted(enumerate(policy.rules), key=lambda t: (t[1].priority, t[0]))

    n_fixtures = len(design.fixtures)
    dims = [0.0] * n_fixtures
    blind = 0.0
    unoccupied_for = {z: math.inf for z in zones}
    energy = dict.fromkeys(fids, 0.0)
    records: list[TickRecord] = []

    for tick in range(schedule.ticks):
        minute = tick * schedule.dt
        minute_of_day = minute % MINUTES_PER_DAY
        daylight = schedule.daylight_at(minute)
        occupied = {z: schedule.occupied(z, minute) for z in zones}
        for z in zones:
            if occupied[z]:
                unoccupied_for[z] = 0.0
            elif unoccupied_for[z] != math.inf:
                unoccupied_for[z] += schedule.dt
        events = tuple(
            e for e in schedule.events if minute <= e.minute < minute + schedule.dt
        )

        def write_zone(zone: str, value: float) -> None:
            for i in zones[zone]:
                dims[i] = value

        for _, rule in ordered:
            if isinstance(rule, OccupancyOnOff):
                if occupied[rule.zone]:
                    write_zone(rule.zone, 1.0)
                elif unoccupied_for[rule.zone] > policy.occupancy_hold:
                    write_zone(rule.zone, 0.0)
            elif isinstance(rule, ConstantIlluminance):
                if not occupied[rule.zone]:
                    write_zone(rule.zone, 0.0)
                    continue
                reading = sensor_reading(design, room, dims, blind, daylight, policy.sensor_point)
                error = rule.setpoint - reading
                deadband = policy.deadband if policy.deadband is not None else 0.1 * rule.setpoint
                if abs(error) <= deadband:
                    continue
                members = zones[rule.zone]
                current = sum(dims[i] for i in members) / len(members)
                write_zone(
                    rule.zone,
                    min(1.0, max(0.0, current + policy.gain * error / rule.setpoint)),
                )
            elif isinstance(rule, BlindControl):
                # Compared against unshaded daylight: judging the already
                # shaded level would re-open the blind every other tick.
                blind = 90.0 if daylight > rule.daylight_threshold else 0.0
            elif isinstance(rule, Timing):
                on = _in_window(minute_of_day, rule.on_time, rule.off_time)
                write_zone(rule.zone, 1.0 if on else 0.0)
            elif isinstance(rule, ThresholdTimer):
                transmitted = daylight * _cos_deg(blind)
                on = (
                    _in_window(minute_of_day, rule.window_start, rule.window_end)
                    and transmitted < rule.lux_threshold
                )
                write_zone(rule.zone, 1.0 if on else 0.0)
            elif isinstance(rule, Scene):
                if any(rule.trigger.matches(e) for e in events):
                    for fid, level in rule.dims.items():
                        dims[fids.index(fid)] = level
            elif isinstance(rule, Linkage):
                if any(rule.trigger.matches(e) for e in events):
                    write_zone(rule.zone, rule.dim_on)
                # The off trigger wins when both fire on the same tick.
                if any(rule.off_trigger.matches(e) for e in events):
                    write_zone(rule.zone, 0.0)

        for i, f in enumerate(design.fixtures):
            if not f.dimmable:
                dims[i] = 1.0 if dims[i] >= 0.5 else 0.0

        sensor = sensor_reading(design, room, dims, blind, daylight, policy.sensor_point)
        for i, fid in enumerate(fids):
            energy[fid] += design.fixtures[i].spec.power * dims[i] * schedule.dt / 60.0
        records.append(
            TickRecord(
                tick=tick,
                minute=minute,
                dims=tuple(dims),
                blind_angle=blind,
                sensor_lux=sensor,
                occupied=dict(occupied),
                events=tuple(e.label() for e in events),
            )
        )

    return SimulationTrace(
        fixture_ids=fids,
        fixture_zones=tuple(f.zone for f in design.fixtures),
        records=tuple(records),
        energy_wh=energy,
        total_wh=sum(energy.values()),
        dt=schedule.dt,
        horizon=schedule.horizon,
    )


@dataclass(frozen=True)
class PolicyResult:
    name: str
    energy_wh: float
    savings_percent: float


@dataclass(frozen=True)
class ComparisonReport:
    baseline: str
    results: tuple[PolicyResult, ...]


def compare_policies(
    design: LightingDesign, policies: list[ControlPolicy], schedule: Schedule
) -> ComparisonReport:
    """Energy of each policy against the first (the baseline)."""
    if len(policies) < 2:
        raise ValueError("need a baseline plus at least one policy")
    totals = [simulate(design, p, schedule).total_wh for p in policies]
    if totals[0] <= 0.0:
        raise ZeroBaselineEnergy(f"baseline {policies[0].name!r} consumed no energy")
    results = tuple(
        PolicyResult(
            name=p.name,
            energy_wh=wh,
            savings_percent=100.0 * (1.0 - wh / totals[0]),
        )
        for p, wh in zip(policies, totals)
    )
    return ComparisonReport(baseline=policies[0].name, results=results)


# --- trace export ---------------------------------------------------------

def trace_to_csv(trace: SimulationTrace) -> str:
    """One row per (tick, fixture); occupied is the fixture's zone flag.

    A trailing comment block reports total and per-fixture energy in Wh.
    """
    lines = ["tick,time,fixture_id,dim,blind_angle,sensor_lux,occupied,event"]
    for rec in trace.records:
        time = format_time(rec.minute)
        events = ";".join(rec.events)
        for i, fid in enumerate(trace.fixture_ids):
            occ = 1 if rec.occupied.get(trace.fixture_zones[i], False) else 0
            lines.append(
                f"{rec.tick},{time},{fid},{rec.dims[i]!r},{rec.blind_angle!r},"
                f"{rec.sensor_lux!r},{occ},{events}"
            )
    lines.append(f"# energy_wh,total,{trace.total_wh!r}")
    for fid in trace.fixture_ids:
        lines.append(f"# energy_wh,{fid},{trace.energy_wh[fid]!r}")
    return "\n".join(lines) + "\n"


# --- document codecs -------------------------------------------------------

def _event_spec_from_doc(doc: dict) -> EventSpec:
    try:
        return EventSpec(kind=str(doc["kind"]), zone=doc.get("zone"))
    except (KeyError, TypeError) as exc:
        raise MalformedDocument(f"bad event trigger: {exc}") from exc


def _event_spec_to_doc(spec: EventSpec) -> dict:
    doc: dict = {"kind": spec.kind}
    if spec.zone is not None:
        doc["zone"] = spec.zone
    return doc


def _check_dim(value: float, where: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise MalformedDocument(f"{where}: dim {value} outside [0, 1]")
    return value


def rule_from_doc(doc: dict) -> Rule:
    try:
        kind = doc["kind"]
        priority = int(doc.get("priority", 0))
        if kind == "occupancy_onoff":
            return OccupancyOnOff(zone=str(doc["zone"]), priority=priority)
        if kind == "constant_illuminance":
            return ConstantIlluminance(
                zone=str(doc["zone"]), setpoint=float(doc["setpoint"]), priority=priority
            )
        if kind == "blind_control":
            return BlindControl(
                daylight_threshold=float(doc["daylight_threshold"]), priority=priority
            )
        if kind == "timing":
            on = parse_time(doc["on_time"])
            off = parse_time(doc["off_time"])
            if on == off:
                raise MalformedDocument("timing rule: on_time equals off_time")
            return Timing(zone=str(doc["zone"]), on_time=on, off_time=off, priority=priority)
        if kind == "threshold_timer":
            start, end = doc["window"]
            start = parse_time(start)
            end = parse_time(end)
            if start == end:
                raise MalformedDocument("threshold_timer: empty window")
            return ThresholdTimer(
                zone=str(doc["zone"]),
                lux_threshold=float(doc["lux_threshold"]),
                window_start=start,
                window_end=end,
                priority=priority,
            )
        if kind == "scene":
            name = str(doc.get("name", "scene"))
            dims = {
                str(fid): _check_dim(v, f"scene {name!r}") for fid, v in doc["dims"].items()
            }
            return Scene(
                name=name,
                trigger=_event_spec_from_doc(doc["trigger"]),
                dims=dims,
                priority=priority,
            )
        if kind == "linkage":
            trigger = _event_spec_from_doc(doc["trigger"])
            default_on = NIGHT_WAKE_DIM if trigger.kind == "night_wake" else 1.0
            return Linkage(
                trigger=trigger,
                zone=str(doc["zone"]),
                dim_on=_check_dim(doc.get("dim_on", default_on), "linkage"),
                off_trigger=_event_spec_from_doc(doc["off_trigger"]),
                priority=priority,
            )
        raise MalformedDocument(f"unknown rule kind {kind!r}")
    except MalformedDocument:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad rule: {exc}") from exc


def rule_to_doc(rule: Rule) -> dict:
    if isinstance(rule, OccupancyOnOff):
        return {"kind": "occupancy_onoff", "zone": rule.zone, "priority": rule.priority}
    if isinstance(rule, ConstantIlluminance):
        return {
            "kind": "constant_illuminance",
            "zone": rule.zone,
            "setpoint": rule.setpoint,
            "priority": rule.priority,
        }
    if isinstance(rule, BlindControl):
        return {
            "kind": "blind_control",
            "daylight_threshold": rule.daylight_threshold,
            "priority": rule.priority,
        }
    if isinstance(rule, Timing):
        return {
            "kind": "timing",
            "zone": rule.zone,
            "on_time": rule.on_time,
            "off_time": rule.off_time,
            "priority": rule.priority,
        }
    if isinstance(rule, ThresholdTimer):
        return {
            "kind": "threshold_timer",
            "zone": rule.zone,
            "lux_threshold": rule.lux_threshold,
            "window": [rule.window_start, rule.window_end],
            "priority": rule.priority,
        }
    if isinstance(rule, Scene):
        return {
            "kind": "scene",
            "name": rule.name,
            "trigger": _event_spec_to_doc(rule.trigger),
            "dims": dict(rule.dims),
            "priority": rule.priority,
        }
    if isinstance(rule, Linkage):
        return {
            "kind": "linkage",
            "trigger": _event_spec_to_doc(rule.trigger),
            "zone": rule.zone,
            "dim_on": rule.dim_on,
            "off_trigger": _event_spec_to_doc(rule.off_trigger),
            "priority": rule.priority,
        }
    raise MalformedDocument(f"unknown rule type {type(rule).__name__}")


def policy_from_doc(doc: dict) -> ControlPolicy:
    try:
        x, y, z = doc["sensor_point"]
        deadband = doc.get("deadband")
        return ControlPolicy(
            rules=tuple(rule_from_doc(r) for r in doc.get("rules", [])),
            sensor_point=(float(x), float(y), float(z)),
            deadband=float(deadband) if deadband is not None else None,
            gain=float(doc.get("gain", 0.5)),
            occupancy_hold=float(doc.get("occupancy_hold", 0.0)),
            name=str(doc.get("name", "policy")),
        )
    except MalformedDocument:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad policy document: {exc}") from exc


def policy_to_doc(policy: ControlPolicy) -> dict:
    return {
        "name": policy.name,
        "sensor_point": list(policy.sensor_point),
        "deadband": policy.deadband,
        "gain": policy.gain,
        "occupancy_hold": policy.occupancy_hold,
        "rules": [rule_to_doc(r) for r in policy.rules],
    }


def schedule_from_doc(doc: dict) -> Schedule:
    try:
        occupancy = {
            str(zone): tuple((float(s), float(e)) for s, e in intervals)
            for zone, intervals in doc.get("occupancy", {}).items()
        }
        events = tuple(
            Event(minute=float(e["minute"]), kind=str(e["kind"]), zone=e.get("zone"))
            for e in doc.get("events", [])
        )
        for e in events:
            if e.kind not in EVENT_KINDS:
                raise MalformedDocument(f"unknown event kind {e.kind!r}")
        return Schedule(
            horizon=float(doc["horizon"]),
            dt=float(doc.get("dt", 1.0)),
            occupancy=occupancy,
            daylight=tuple((float(m), float(v)) for m, v in doc.get("daylight", [])),
            events=events,
        )
    except MalformedDocument:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad schedule document: {exc}") from exc


def schedule_to_doc(schedule: Schedule) -> dict:
    return {
        "horizon": schedule.horizon,
        "dt": schedule.dt,
        "occupancy": {z: [list(i) for i in iv] for z, iv in schedule.occupancy.items()},
        "daylight": [list(p) for p in schedule.daylight],
        "events": [
            {"minute": e.minute, "kind": e.kind, **({"zone": e.zone} if e.zone else {})}
            for e in schedule.events
        ],
    }
