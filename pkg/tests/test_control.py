from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from luxforge.control import (
    NIGHT_WAKE_DIM,
    BlindControl,
    ConstantIlluminance,
    ControlPolicy,
    Event,
    EventSpec,
    Linkage,
    OccupancyOnOff,
    Scene,
    Schedule,
    ThresholdTimer,
    Timing,
    _cos_deg,
    compare_policies,
    format_time,
    parse_time,
    policy_from_doc,
    policy_to_doc,
    rule_from_doc,
    rule_to_doc,
    schedule_from_doc,
    schedule_to_doc,
    sensor_reading,
    simulate,
    trace_to_csv,
)
from luxforge.designgen import LightingDesign
from luxforge.errors import (
    CoincidentPoint,
    MalformedDocument,
    UnknownFixture,
    UnknownZone,
    ZeroBaselineEnergy,
)
from luxforge.geometry import validate_room
from luxforge.photometry import LuminaireSpec, Mount, PlacedFixture

from conftest import dark_surfaces, rect_model

SENSOR = (2.0, 1.5, 1.5)


def lamp(flux: float, *, power: float = 10.0, dimmable: bool = True, zone: str = "task"):
    # Nadir fixture 1 m above the sensor: direct reading at dim d is exactly
    # d * flux / pi, and dark surfaces kill the ambient term.
    spec = LuminaireSpec(name="lamp", flux=flux, exponent=1, power=power, mount=Mount.CEILING)
    return PlacedFixture(
        spec=spec, position=(2.0, 1.5, 2.5), axis=(0.0, 0.0, -1.0), zone=zone, dimmable=dimmable
    )


def lamp_design(flux: float, **kwargs) -> LightingDesign:
    room = validate_room(rect_model(surfaces=dark_surfaces()))
    return LightingDesign(
        id="d", pattern_id="manual", fixtures=(lamp(flux, **kwargs),), room=room
    )


def policy(*rules, **kwargs) -> ControlPolicy:
    kwargs.setdefault("sensor_point", SENSOR)
    return ControlPolicy(rules=tuple(rules), **kwargs)


def always_occupied(horizon: float, zone: str = "task", **kwargs) -> Schedule:
    kwargs.setdefault("occupancy", {zone: ((0.0, horizon),)})
    return Schedule(horizon=horizon, **kwargs)


# --- clock and blind helpers -------------------------------------------------


def test_cos_deg_exact_zero_at_quarter_turn():
    assert _cos_deg(90.0) == 0.0
    assert _cos_deg(270.0) == 0.0
    assert _cos_deg(60.0) == pytest.approx(0.5, rel=1e-12)
    assert _cos_deg(0.0) == 1.0


def test_parse_time_accepts_clock_strings_and_minutes():
    assert parse_time("07:00") == 420.0
    assert parse_time("22:30") == 1350.0
    assert parse_time(90) == 90.0
    assert parse_time("24:00") == 1440.0
    assert format_time(420.0) == "07:00"
    assert format_time(1350.0) == "22:30"


@pytest.mark.parametrize("bad", ["7am", "25:00", -1, 1441])
def test_parse_time_rejects(bad):
    with pytest.raises(MalformedDocument):
        parse_time(bad)


# --- sensor model ------------------------------------------------------------


def test_sensor_daylight_only_blind_open():
    design = lamp_design(600.0 * math.pi)
    room = design.room
    assert sensor_reading(design, room, [0.0], 0.0, 200.0, SENSOR) == pytest.approx(
        200.0, rel=1e-12
    )


def test_sensor_blind_closed_blocks_all_daylight():
    design = lamp_design(600.0 * math.pi)
    assert sensor_reading(design, design.room, [0.0], 90.0, 200.0, SENSOR) == 0.0


def test_sensor_mixed_fixture_and_shaded_daylight():
    # 150 lux from the fixture plus 200 lux daylight through a 60 degree
    # blind gives 150 + 100.
    design = lamp_design(300.0 * math.pi)
    reading = sensor_reading(design, design.room, [0.5], 60.0, 200.0, SENSOR)
    assert reading == pytest.approx(250.0, rel=1e-12)


# --- constant illuminance ----------------------------------------------------


def test_ci_step_formula():
    # Reading 350 against setpoint 300 with gain 0.5: the occupancy rule
    # holds the working dim at 1.0, so the step lands on 1 + 0.5*(-50)/300.
    design = lamp_design(150.0 * math.pi)
    pol = policy(
        OccupancyOnOff(zone="task", priority=0),
        ConstantIlluminance(zone="task", setpoint=300.0, priority=1),
        deadband=30.0,
    )
    sched = always_occupied(3.0, daylight=((0.0, 200.0),))
    trace = simulate(design, pol, sched)
    assert trace.records[0].dims[0] == pytest.approx(11.0 / 12.0, rel=1e-12)
    assert trace.records[0].dims[0] == pytest.approx(0.9167, abs=5e-5)


def test_ci_deadband_holds():
    # Reading 310 is within the 30 lux deadband around 300: no step.
    design = lamp_design(110.0 * math.pi)
    pol = policy(
        OccupancyOnOff(zone="task", priority=0),
        ConstantIlluminance(zone="task", setpoint=300.0, priority=1),
        deadband=30.0,
    )
    trace = simulate(design, pol, always_occupied(3.0, daylight=((0.0, 200.0),)))
    assert trace.records[0].dims[0] == 1.0
    assert trace.records[0].sensor_lux == pytest.approx(310.0, rel=1e-12)


def test_ci_converges_and_stays_in_deadband():
    # Gain 0.5 with a 300 lux fixture halves the error each tick:
    # readings 250, 275, then held at 275 inside the 30 lux band.
    design = lamp_design(300.0 * math.pi)
    pol = policy(ConstantIlluminance(zone="task", setpoint=300.0), deadband=30.0)
    trace = simulate(design, pol, always_occupied(120.0, daylight=((0.0, 200.0),)))
    readings = [r.sensor_lux for r in trace.records]
    assert readings[0] == pytest.approx(250.0, rel=1e-12)
    assert readings[1] == pytest.approx(275.0, rel=1e-12)
    in_band = [abs(300.0 - r) <= 30.0 for r in readings]
    first = in_band.index(True)
    assert first <= 20
    assert all(in_band[first:])


def test_ci_unoccupied_forces_zero():
    design = lamp_design(300.0 * math.pi)
    pol = policy(ConstantIlluminance(zone="task", setpoint=300.0))
    sched = Schedule(horizon=10.0, occupancy={"task": ((4.0, 6.0),)})
    trace = simulate(design, pol, sched)
    assert trace.records[0].dims[0] == 0.0
    assert trace.records[4].dims[0] > 0.0
    assert trace.records[7].dims[0] == 0.0


def test_ci_default_deadband_is_tenth_of_setpoint():
    # Reading 325 with deadband None: 10% of 300 is 30, so |e| = 25 holds.
    design = lamp_design(125.0 * math.pi)
    pol = policy(
        OccupancyOnOff(zone="task", priority=0),
        ConstantIlluminance(zone="task", setpoint=300.0, priority=1),
    )
    trace = simulate(design, pol, always_occupied(2.0, daylight=((0.0, 200.0),)))
    assert trace.records[0].dims[0] == 1.0


# --- timing and occupancy ----------------------------------------------------


def test_timing_flips_at_exact_ticks():
    design = lamp_design(600.0 * math.pi)
    pol = policy(Timing(zone="task", on_time=parse_time("07:00"), off_time=parse_time("22:30")))
    trace = simulate(design, pol, Schedule(horizon=1440.0))
    dims = [r.dims[0] for r in trace.records]
    assert dims[419] == 0.0 and dims[420] == 1.0
    assert dims[1349] == 1.0 and dims[1350] == 0.0
    assert all(d == 1.0 for d in dims[420:1350])


def test_timing_window_wraps_midnight():
    design = lamp_design(600.0 * math.pi)
    pol = policy(Timing(zone="task", on_time=parse_time("22:00"), off_time=parse_time("06:00")))
    trace = simulate(design, pol, Schedule(horizon=1440.0))
    dims = [r.dims[0] for r in trace.records]
    assert dims[0] == 1.0 and dims[359] == 1.0
    assert dims[360] == 0.0 and dims[720] == 0.0
    assert dims[1320] == 1.0


def test_occupancy_same_tick_on_and_hold():
    design = lamp_design(600.0 * math.pi)
    pol = policy(OccupancyOnOff(zone="task"), occupancy_hold=5.0)
    sched = Schedule(horizon=40.0, occupancy={"task": ((10.0, 20.0),)})
    dims = [r.dims[0] for r in simulate(design, pol, sched).records]
    assert dims[9] == 0.0 and dims[10] == 1.0
    assert dims[19] == 1.0
    # Hold keeps the zone lit for 5 minutes after it empties.
    assert dims[24] == 1.0 and dims[25] == 0.0


def test_blind_control_is_bang_bang():
    design = lamp_design(600.0 * math.pi)
    pol = policy(BlindControl(daylight_threshold=500.0))
    sched = Schedule(
        horizon=1440.0, daylight=((0.0, 0.0), (720.0, 1000.0), (1440.0, 0.0))
    )
    trace = simulate(design, pol, sched)
    for rec in trace.records:
        daylight = sched.daylight_at(rec.minute)
        assert rec.blind_angle == (90.0 if daylight > 500.0 else 0.0)


def test_threshold_timer_uses_transmitted_daylight():
    design = lamp_design(600.0 * math.pi)
    pol = policy(
        ThresholdTimer(zone="task", lux_threshold=300.0, window_start=0.0, window_end=720.0)
    )
    sched = Schedule(horizon=1440.0, daylight=((0.0, 0.0), (720.0, 1000.0), (1440.0, 0.0)))
    dims = [r.dims[0] for r in simulate(design, pol, sched).records]
    # Daylight crosses 300 lux at minute 216; outside the window the rule
    # writes 0 even when daylight is below the threshold again.
    assert dims[215] == 1.0 and dims[216] == 0.0
    assert dims[1300] == 0.0


def test_threshold_timer_sees_closed_blind():
    # With the blind shut, transmitted daylight is 0, so the lamp stays on
    # through the whole window regardless of outdoor level.
    design = lamp_design(600.0 * math.pi)
    pol = policy(
        BlindControl(daylight_threshold=100.0, priority=0),
        ThresholdTimer(
            zone="task", lux_threshold=300.0, window_start=0.0, window_end=720.0, priority=1
        ),
    )
    sched = Schedule(horizon=720.0, daylight=((0.0, 1000.0),))
    trace = simulate(design, pol, sched)
    assert all(r.blind_angle == 90.0 for r in trace.records)
    assert all(r.dims[0] == 1.0 for r in trace.records)


# --- events: scenes and linkage ----------------------------------------------


def test_scene_applies_once_and_persists():
    design = lamp_design(600.0 * math.pi)
    pol = policy(Scene(name="tv", trigger=EventSpec(kind="closet_open"), dims={"f0": 0.3}))
    sched = Schedule(horizon=40.0, events=(Event(minute=5.0, kind="closet_open"),))
    dims = [r.dims[0] for r in simulate(design, pol, sched).records]
    assert dims[4] == 0.0
    assert dims[5] == 0.3
    assert dims[39] == 0.3


def test_linkage_fires_same_tick_and_clears_on_off_trigger():
    design = lamp_design(600.0 * math.pi)
    pol = policy(
        Linkage(
            trigger=EventSpec(kind="closet_open"),
            zone="task",
            dim_on=1.0,
            off_trigger=EventSpec(kind="closet_close"),
        )
    )
    sched = Schedule(
        horizon=700.0,
        events=(Event(minute=600.0, kind="closet_open"), Event(minute=640.0, kind="closet_close")),
    )
    dims = [r.dims[0] for r in simulate(design, pol, sched).records]
    assert dims[599] == 0.0 and dims[600] == 1.0
    assert dims[639] == 1.0 and dims[640] == 0.0


def test_linkage_off_trigger_wins_simultaneous_conflict():
    design = lamp_design(600.0 * math.pi)
    pol = policy(
        Linkage(
            trigger=EventSpec(kind="closet_open"),
            zone="task",
            dim_on=1.0,
            off_trigger=EventSpec(kind="closet_close"),
        )
    )
    sched = Schedule(
        horizon=10.0,
        events=(Event(minute=5.0, kind="closet_open"), Event(minute=5.0, kind="closet_close")),
    )
    dims = [r.dims[0] for r in simulate(design, pol, sched).records]
    assert dims[5] == 0.0


def test_night_wake_linkage_defaults_to_low_dim():
    rule = rule_from_doc(
        {
            "kind": "linkage",
            "trigger": {"kind": "night_wake"},
            "zone": "task",
            "off_trigger": {"kind": "leave_room"},
        }
    )
    assert rule.dim_on == NIGHT_WAKE_DIM
    design = lamp_design(600.0 * math.pi)
    sched = Schedule(horizon=10.0, events=(Event(minute=3.0, kind="night_wake"),))
    dims = [r.dims[0] for r in simulate(design, policy(rule), sched).records]
    assert dims[3] == NIGHT_WAKE_DIM


def test_zone_scoped_events_only_match_their_zone():
    room = validate_room(rect_model(surfaces=dark_surfaces()))
    fixtures = (lamp(600.0, zone="task"), lamp(600.0, zone="ambient"))
    design = LightingDesign(id="d", pattern_id="manual", fixtures=fixtures, room=room)
    pol = ControlPolicy(
        rules=(
            Linkage(
                trigger=EventSpec(kind="enter_room", zone="task"),
                zone="task",
                dim_on=1.0,
                off_trigger=EventSpec(kind="leave_room", zone="task"),
            ),
        ),
        sensor_point=SENSOR,
    )
    sched = Schedule(
        horizon=30.0,
        events=(
            Event(minute=10.0, kind="enter_room", zone="ambient"),
            Event(minute=20.0, kind="enter_room", zone="task"),
        ),
    )
    trace = simulate(design, pol, sched)
    assert trace.records[10].dims == (0.0, 0.0)
    assert trace.records[20].dims == (1.0, 0.0)


# --- arbitration and actuation -----------------------------------------------


def test_priority_orders_rule_writes():
    # The all-day timer writes 1, then the higher-priority narrow timer
    # overwrites with its own window verdict.
    design = lamp_design(600.0 * math.pi)
    pol = policy(
        Timing(zone="task", on_time=0.0, off_time=1440.0, priority=0),
        Timing(zone="task", on_time=720.0, off_time=721.0, priority=1),
    )
    dims = [r.dims[0] for r in simulate(design, pol, Schedule(horizon=1440.0)).records]
    assert dims[0] == 0.0
    assert dims[720] == 1.0
    assert dims[721] == 0.0


def test_equal_priority_ties_break_by_list_order():
    design = lamp_design(600.0 * math.pi)
    pol = policy(
        Timing(zone="task", on_time=0.0, off_time=1440.0, priority=0),
        Timing(zone="task", on_time=720.0, off_time=721.0, priority=0),
    )
    dims = [r.dims[0] for r in simulate(design, pol, Schedule(horizon=1440.0)).records]
    assert dims[0] == 0.0 and dims[720] == 1.0


def test_non_dimmable_snaps_to_full_or_off():
    design = lamp_design(600.0 * math.pi, dimmable=False)
    pol = policy(
        OccupancyOnOff(zone="task", priority=0),
        ConstantIlluminance(zone="task", setpoint=300.0, priority=1),
        deadband=30.0,
    )
    trace = simulate(design, pol, always_occupied(5.0, daylight=((0.0, 200.0),)))
    # The controller asks for 1/6, which snaps to 0; the recorded reading is
    # the post-snap daylight-only level.
    assert trace.records[0].dims[0] == 0.0
    assert trace.records[0].sensor_lux == pytest.approx(200.0, rel=1e-12)


def test_empty_policy_never_lights():
    design = lamp_design(600.0 * math.pi)
    trace = simulate(design, policy(), Schedule(horizon=60.0))
    assert all(r.dims == (0.0,) for r in trace.records)
    assert trace.total_wh == 0.0


def test_trace_length_and_energy_identity():
    design = lamp_design(600.0 * math.pi)
    pol = policy(Timing(zone="task", on_time=60.0, off_time=180.0))
    sched = Schedule(horizon=240.0, dt=0.5)
    trace = simulate(design, pol, sched)
    assert len(trace.records) == 480
    manual = sum(10.0 * r.dims[0] * 0.5 / 60.0 for r in trace.records)
    assert trace.total_wh == pytest.approx(manual, rel=1e-9)
    assert trace.total_wh == pytest.approx(sum(trace.energy_wh.values()), rel=1e-9)


def test_simulation_is_deterministic():
    design = lamp_design(300.0 * math.pi)
    pol = policy(
        OccupancyOnOff(zone="task", priority=0),
        ConstantIlluminance(zone="task", setpoint=300.0, priority=1),
        BlindControl(daylight_threshold=400.0, priority=2),
    )
    sched = Schedule(
        horizon=480.0,
        occupancy={"task": ((60.0, 300.0),)},
        daylight=((0.0, 0.0), (240.0, 800.0), (480.0, 0.0)),
        events=(Event(minute=100.0, kind="night_wake"),),
    )
    a = trace_to_csv(simulate(design, pol, sched))
    b = trace_to_csv(simulate(design, pol, sched))
    assert a == b


# --- binding errors ----------------------------------------------------------


def test_unknown_zone_rejected_at_bind_time():
    design = lamp_design(600.0 * math.pi)
    with pytest.raises(UnknownZone):
        simulate(design, policy(OccupancyOnOff(zone="garage")), Schedule(horizon=10.0))


def test_scene_with_unknown_fixture_rejected():
    design = lamp_design(600.0 * math.pi)
    pol = policy(Scene(name="s", trigger=EventSpec(kind="closet_open"), dims={"f9": 1.0}))
    with pytest.raises(UnknownFixture):
        simulate(design, pol, Schedule(horizon=10.0))


def test_sensor_coincident_with_fixture_rejected():
    design = lamp_design(600.0 * math.pi)
    pol = ControlPolicy(rules=(), sensor_point=(2.0, 1.5, 2.5))
    with pytest.raises(CoincidentPoint):
        simulate(design, pol, Schedule(horizon=10.0))


def test_policy_parameter_validation():
    with pytest.raises(MalformedDocument):
        ControlPolicy(rules=(), sensor_point=SENSOR, gain=0.0)
    with pytest.raises(MalformedDocument):
        ControlPolicy(rules=(), sensor_point=SENSOR, deadband=-1.0)
    with pytest.raises(MalformedDocument):
        ControlPolicy(rules=(), sensor_point=SENSOR, occupancy_hold=-1.0)


# --- schedule semantics --------------------------------------------------------


def test_schedule_requires_dt_dividing_horizon():
    with pytest.raises(MalformedDocument):
        Schedule(horizon=10.0, dt=3.0)


def test_schedule_rejects_out_of_range_intervals_and_events():
    with pytest.raises(MalformedDocument):
        Schedule(horizon=10.0, occupancy={"task": ((5.0, 12.0),)})
    with pytest.raises(MalformedDocument):
        Schedule(horizon=10.0, events=(Event(minute=10.0, kind="night_wake"),))


def test_daylight_interpolates_and_clamps():
    sched = Schedule(horizon=1440.0, daylight=((0.0, 0.0), (720.0, 1000.0)))
    assert sched.daylight_at(360.0) == pytest.approx(500.0, rel=1e-12)
    assert sched.daylight_at(0.0) == 0.0
    assert sched.daylight_at(1200.0) == 1000.0
    with pytest.raises(MalformedDocument):
        Schedule(horizon=10.0, daylight=((5.0, 1.0), (0.0, 0.0)))


# --- policy comparison ---------------------------------------------------------


def savings_scenario():
    """Baseline burns 18:00-24:00 at full power; the smart policy lights the
    occupied 18:00-22:00 span and settles at dim 0.5."""
    design = lamp_design(600.0 * math.pi)
    baseline = policy(
        Timing(zone="task", on_time=parse_time("18:00"), off_time=parse_time("24:00")),
        name="baseline",
    )
    smart = policy(
        OccupancyOnOff(zone="task", priority=0),
        ConstantIlluminance(zone="task", setpoint=300.0, priority=1),
        name="smart",
    )
    sched = Schedule(
        horizon=1440.0,
        occupancy={"task": ((parse_time("18:00"), parse_time("22:00")),)},
        daylight=((0.0, 0.0),),
    )
    return design, baseline, smart, sched


def test_compare_reports_two_thirds_savings():
    design, baseline, smart, sched = savings_scenario()
    report = compare_policies(design, [baseline, smart], sched)
    assert report.baseline == "baseline"
    base, result = report.results
    assert base.energy_wh == pytest.approx(60.0, rel=1e-9)
    assert base.savings_percent == 0.0
    assert result.energy_wh == pytest.approx(20.0, rel=1e-9)
    assert result.savings_percent == pytest.approx(200.0 / 3.0, rel=1e-9)
    assert abs(result.savings_percent - 66.7) < 0.1


def test_compare_identical_policies_saves_nothing():
    design, baseline, _, sched = savings_scenario()
    report = compare_policies(design, [baseline, baseline], sched)
    assert report.results[1].savings_percent == pytest.approx(0.0, abs=1e-12)


def test_compare_dark_policy_saves_everything():
    design, baseline, _, sched = savings_scenario()
    report = compare_policies(design, [baseline, policy(name="dark")], sched)
    assert report.results[1].savings_percent == pytest.approx(100.0, abs=1e-12)


def test_compare_needs_baseline_energy_and_two_policies():
    design, baseline, smart, sched = savings_scenario()
    with pytest.raises(ZeroBaselineEnergy):
        compare_policies(design, [policy(name="dark"), smart], sched)
    with pytest.raises(ValueError):
        compare_policies(design, [baseline], sched)


def test_smart_policy_never_exceeds_baseline_energy():
    design, baseline, smart, sched = savings_scenario()
    base_wh = simulate(design, baseline, sched).total_wh
    smart_wh = simulate(design, smart, sched).total_wh
    assert smart_wh <= base_wh


# --- trace export --------------------------------------------------------------


def test_trace_csv_shape_and_header():
    design = lamp_design(600.0 * math.pi)
    pol = policy(OccupancyOnOff(zone="task"))
    sched = Schedule(
        horizon=4.0,
        occupancy={"task": ((1.0, 3.0),)},
        events=(
            Event(minute=2.0, kind="closet_open"),
            Event(minute=2.0, kind="night_wake"),
        ),
    )
    text = trace_to_csv(simulate(design, pol, sched))
    lines = text.splitlines()
    assert lines[0] == "tick,time,fixture_id,dim,blind_angle,sensor_lux,occupied,event"
    # 4 ticks x 1 fixture, then total and per-fixture energy comments.
    assert len(lines) == 1 + 4 + 2
    fields = lines[1].split(",")
    assert fields[0] == "0" and fields[1] == "00:00" and fields[2] == "f0"
    assert lines[2].split(",")[6] == "1"
    assert lines[3].endswith("closet_open;night_wake")
    assert lines[5].startswith("# energy_wh,total,")
    assert lines[6].startswith("# energy_wh,f0,")


# --- document codecs -----------------------------------------------------------


def full_policy() -> ControlPolicy:
    return ControlPolicy(
        rules=(
            OccupancyOnOff(zone="task", priority=0),
            ConstantIlluminance(zone="task", setpoint=300.0, priority=1),
            BlindControl(daylight_threshold=500.0, priority=2),
            Timing(zone="task", on_time=420.0, off_time=1350.0, priority=3),
            ThresholdTimer(
                zone="task", lux_threshold=250.0, window_start=360.0, window_end=540.0, priority=4
            ),
            Scene(name="tv", trigger=EventSpec(kind="closet_open"), dims={"f0": 0.3}, priority=5),
            Linkage(
                trigger=EventSpec(kind="night_wake"),
                zone="task",
                dim_on=0.15,
                off_trigger=EventSpec(kind="leave_room", zone="task"),
                priority=6,
            ),
        ),
        sensor_point=SENSOR,
        deadband=30.0,
        gain=0.5,
        occupancy_hold=5.0,
        name="everything",
    )


def test_policy_doc_round_trip():
    pol = full_policy()
    assert policy_from_doc(policy_to_doc(pol)) == pol


def test_rule_doc_round_trip_each_kind():
    for rule in full_policy().rules:
        assert rule_from_doc(rule_to_doc(rule)) == rule


def test_schedule_doc_round_trip():
    sched = Schedule(
        horizon=1440.0,
        dt=0.5,
        occupancy={"task": ((60.0, 300.0), (400.0, 500.0))},
        daylight=((0.0, 0.0), (720.0, 900.0), (1440.0, 0.0)),
        events=(Event(minute=100.0, kind="enter_room", zone="task"),),
    )
    assert schedule_from_doc(schedule_to_doc(sched)) == sched


def test_rule_doc_rejections():
    with pytest.raises(MalformedDocument):
        rule_from_doc({"kind": "timing", "zone": "z", "on_time": "07:00", "off_time": "07:00"})
    with pytest.raises(MalformedDocument):
        rule_from_doc(
            {"kind": "threshold_timer", "zone": "z", "lux_threshold": 1, "window": [60, 60]}
        )
    with pytest.raises(MalformedDocument):
        rule_from_doc({"kind": "sparkle"})
    with pytest.raises(MalformedDocument):
        rule_from_doc(
            {
                "kind": "scene",
                "trigger": {"kind": "closet_open"},
                "dims": {"f0": 1.5},
            }
        )
    with pytest.raises(MalformedDocument):
        EventSpec(kind="earthquake")


def test_schedule_doc_rejects_unknown_event_kind():
    with pytest.raises(MalformedDocument):
        schedule_from_doc(
            {"horizon": 10, "events": [{"minute": 1, "kind": "earthquake"}]}
        )


# --- properties ----------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(
    flux_over_pi=st.floats(min_value=310.0, max_value=900.0),
    daylight=st.floats(min_value=0.0, max_value=250.0),
)
def test_ci_reaches_default_deadband_within_twenty_ticks(flux_over_pi, daylight):
    # Reachable setpoint (fixture alone can exceed it), static daylight,
    # default deadband of 10% of the setpoint.
    design = lamp_design(flux_over_pi * math.pi)
    pol = policy(ConstantIlluminance(zone="task", setpoint=300.0))
    sched = always_occupied(60.0, daylight=((0.0, daylight),))
    readings = [r.sensor_lux for r in simulate(design, pol, sched).records]
    in_band = [abs(300.0 - r) <= 30.0 for r in readings]
    first = in_band.index(True)
    assert first <= 20
    assert all(in_band[first:])


@settings(max_examples=30, deadline=None)
@given(
    start=st.floats(min_value=0.0, max_value=700.0),
    span=st.floats(min_value=1.0, max_value=700.0),
    hold=st.floats(min_value=0.0, max_value=60.0),
    gain=st.floats(min_value=0.1, max_value=2.0),
)
def test_dims_and_blind_stay_in_range(start, span, hold, gain):
    design = lamp_design(600.0 * math.pi)
    pol = policy(
        OccupancyOnOff(zone="task", priority=0),
        ConstantIlluminance(zone="task", setpoint=300.0, priority=1),
        BlindControl(daylight_threshold=400.0, priority=2),
        gain=gain,
        occupancy_hold=hold,
    )
    sched = Schedule(
        horizon=1440.0,
        occupancy={"task": ((start, min(start + span, 1440.0)),)},
        daylight=((0.0, 0.0), (720.0, 800.0), (1440.0, 0.0)),
    )
    trace = simulate(design, pol, sched)
    for rec in trace.records:
        assert 0.0 <= rec.dims[0] <= 1.0
        assert 0.0 <= rec.blind_angle <= 90.0
