from __future__ import annotations

import pytest

from luxforge.geometry import (
    FurnitureObject,
    ObjectKind,
    RoomFunction,
    RoomModel,
    Surface,
    validate_room,
)


def rect_model(**overrides) -> RoomModel:
    base = dict(
        outline=((0.0, 0.0), (4.0, 0.0), (4.0, 3.0), (0.0, 3.0)),
        ceiling_height=2.5,
        surfaces=(),
        objects=(),
        function=RoomFunction.BEDROOM,
    )
    base.update(overrides)
    return RoomModel(**base)


def bedroom_model(**overrides) -> RoomModel:
    """A 4x3 bedroom with a wall-adjacent bed and a wall-mounted TV."""
    overrides.setdefault(
        "objects",
        (
            FurnitureObject(kind=ObjectKind.BED, footprint=((1.0, 1.4), (2.0, 3.0)), height=0.5),
            FurnitureObject(
                kind=ObjectKind.TV,
                footprint=((1.7, 0.0), (2.3, 0.25)),
                height=1.1,
                facing=(0.0, 1.0),
            ),
        ),
    )
    return rect_model(**overrides)


def lshape_model(**overrides) -> RoomModel:
    base = dict(
        outline=((0.0, 0.0), (4.0, 0.0), (4.0, 2.0), (2.0, 2.0), (2.0, 4.0), (0.0, 4.0)),
        ceiling_height=2.5,
        surfaces=(),
        objects=(),
        function=RoomFunction.BEDROOM,
    )
    base.update(overrides)
    return RoomModel(**base)


def dark_surfaces() -> tuple[Surface, ...]:
    """All reflectances zero, so the ambient term vanishes exactly."""
    return (Surface("floor", 0.0), Surface("ceiling", 0.0), Surface("wall", 0.0))


@pytest.fixture
def rect_room():
    return validate_room(rect_model())


@pytest.fixture
def bedroom():
    return validate_room(bedroom_model())


@pytest.fixture
def lshape_room():
    return validate_room(lshape_model())
