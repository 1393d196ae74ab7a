from __future__ import annotations

import pytest

from luxforge.errors import DuplicatePatternId, MalformedPattern, NoApplicablePattern
from luxforge.geometry import FurnitureObject, ObjectKind, RoomFunction, validate_room
from luxforge.patterns import (
    PatternFamily,
    analyze_room,
    default_library,
    library_to_doc,
    load_pattern_library,
    match_patterns,
)

from conftest import bedroom_model, lshape_model, rect_model


def test_default_library_has_six_patterns():
    lib = default_library()
    assert len(lib.patterns) == 6
    families = [p.family for p in lib.patterns]
    assert families.count(PatternFamily.CEILING_CENTRAL) == 1
    assert families.count(PatternFamily.FLANK_OBJECT) == 2
    assert families.count(PatternFamily.ABOVE_OBJECT) == 2
    assert families.count(PatternFamily.GUIDELINE_BEDROOM) == 1


def test_duplicate_pattern_id():
    doc = library_to_doc(default_library())
    doc["patterns"].append(doc["patterns"][0])
    with pytest.raises(DuplicatePatternId):
        load_pattern_library(doc)


def test_empty_library_rejected():
    with pytest.raises(MalformedPattern):
        load_pattern_library({"version": "1", "patterns": []})


def test_malformed_pattern_names_field():
    doc = library_to_doc(default_library())
    del doc["patterns"][0]["specs"]
    with pytest.raises(MalformedPattern, match="specs"):
        load_pattern_library(doc)


def test_flank_pattern_needs_one_anchor_kind():
    doc = library_to_doc(default_library())
    flank = next(p for p in doc["patterns"] if p["family"] == "flank_object")
    flank["preconditions"] = ["bed", "tv"]
    with pytest.raises(MalformedPattern):
        load_pattern_library(doc)


def test_library_round_trip():
    lib = default_library()
    again = load_pattern_library(library_to_doc(lib))
    assert again == lib


def test_analyze_bedroom_anchors(bedroom):
    analysis = analyze_room(bedroom)
    kinds = {a.kind for a in analysis.anchors}
    assert kinds == {ObjectKind.BED, ObjectKind.TV}
    bed = analysis.anchors_of(ObjectKind.BED)[0]
    assert bed.center == pytest.approx((1.5, 2.2))
    # Bed touches the y=3 wall, the third edge of the CCW outline.
    assert bed.wall_index == 2
    assert bed.adjacent
    assert bed.wall_distance == pytest.approx(0.0)


def test_analyze_empty_room_centroid(rect_room):
    analysis = analyze_room(rect_room)
    assert analysis.anchors == ()
    assert analysis.free_ceiling_centroid == pytest.approx((2.0, 1.5))


def test_analyze_non_adjacent_bed():
    bed = FurnitureObject(kind=ObjectKind.BED, footprint=((1.0, 0.7), (2.0, 2.3)), height=0.5)
    room = validate_room(rect_model(objects=(bed,)))
    anchor = analyze_room(room).anchors[0]
    assert not anchor.adjacent
    assert anchor.wall_distance == pytest.approx(0.7)


def test_analyze_skips_non_anchor_kinds():
    stand = FurnitureObject(
        kind=ObjectKind.NIGHTSTAND, footprint=((0.1, 0.1), (0.5, 0.5)), height=0.5
    )
    room = validate_room(rect_model(objects=(stand,)))
    assert analyze_room(room).anchors == ()


def test_lshape_centroid_inside(lshape_room):
    analysis = analyze_room(lshape_room)
    from luxforge.geometry import point_in_room

    assert point_in_room(lshape_room, analysis.free_ceiling_centroid)


def test_centroid_fallback_for_u_shape():
    # A U-shaped outline whose area centroid falls in the notch.
    outline = (
        (0.0, 0.0), (5.0, 0.0), (5.0, 4.0), (4.0, 4.0),
        (4.0, 1.0), (1.0, 1.0), (1.0, 4.0), (0.0, 4.0),
    )
    room = validate_room(rect_model(outline=outline))
    analysis = analyze_room(room)
    from luxforge.geometry import point_in_room

    assert point_in_room(room, analysis.free_ceiling_centroid)


def test_match_all_six(bedroom):
    matched = match_patterns(analyze_room(bedroom), default_library())
    assert [p.id for p in matched] == [
        "ceiling_central",
        "flank_bed",
        "flank_tv",
        "above_bed",
        "above_tv",
        "guideline_bedroom",
    ]


def test_match_empty_bedroom_only_ceiling(rect_room):
    matched = match_patterns(analyze_room(rect_room), default_library())
    assert [p.id for p in matched] == ["ceiling_central"]


def test_match_corridor_has_no_pattern():
    room = validate_room(rect_model(function=RoomFunction.CORRIDOR))
    with pytest.raises(NoApplicablePattern):
        match_patterns(analyze_room(room), default_library())


def test_match_is_subsequence(bedroom):
    lib = default_library()
    matched = match_patterns(analyze_room(bedroom), lib)
    ids = [p.id for p in lib.patterns]
    positions = [ids.index(p.id) for p in matched]
    assert positions == sorted(positions)


def test_removing_object_never_enlarges_match(bedroom):
    lib = default_library()
    full = match_patterns(analyze_room(bedroom), lib)
    smaller_model = bedroom_model(objects=bedroom.objects[:1])  # drop the tv
    fewer = match_patterns(analyze_room(validate_room(smaller_model)), lib)
    assert {p.id for p in fewer} <= {p.id for p in full}


def test_one_anchor_per_object(bedroom):
    analysis = analyze_room(bedroom)
    assert len(analysis.anchors) == len(bedroom.objects)
    indices = [a.object_index for a in analysis.anchors]
    assert len(set(indices)) == len(indices)
