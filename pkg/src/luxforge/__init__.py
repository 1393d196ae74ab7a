"""Smart-lighting design testbed: room geometry, point-by-point illuminance,
pattern-driven design generation, and discrete-time control simulation."""

from .errors import LuxforgeError
from .geometry import (
    FurnitureObject,
    ObjectKind,
    RoomFunction,
    RoomModel,
    Surface,
    ValidatedRoom,
    validate_room,
    workplane_grid,
)
from .photometry import (
    IlluminanceField,
    LuminaireSpec,
    Mount,
    PlacedFixture,
    ambient_component,
    direct_illuminance,
    illuminance_field,
    peak_intensity,
)
from .patterns import (
    DesignPattern,
    PatternLibrary,
    analyze_room,
    default_library,
    load_pattern_library,
    match_patterns,
)
from .designgen import (
    DesignScore,
    LightingDesign,
    evaluate_design,
    generate_designs,
    generate_scored,
    instantiate_pattern,
    rank_designs,
)
from .control import (
    ControlPolicy,
    Schedule,
    SimulationTrace,
    compare_policies,
    sensor_reading,
    simulate,
)
from .workspace import Workspace

__version__ = "0.1.0"

__all__ = [
    "LuxforgeError",
    "RoomModel",
    "Surface",
    "FurnitureObject",
    "ObjectKind",
    "RoomFunction",
    "ValidatedRoom",
    "validate_room",
    "workplane_grid",
    "LuminaireSpec",
    "Mount",
    "PlacedFixture",
    "IlluminanceField",
    "peak_intensity",
    "direct_illuminance",
    "ambient_component",
    "illuminance_field",
    "DesignPattern",
    "PatternLibrary",
    "analyze_room",
    "default_library",
    "load_pattern_library",
    "match_patterns",
    "LightingDesign",
    "DesignScore",
    "instantiate_pattern",
    "generate_designs",
    "generate_scored",
    "evaluate_design",
    "rank_designs",
    "ControlPolicy",
    "Schedule",
    "SimulationTrace",
    "sensor_reading",
    "simulate",
    "compare_policies",
    "Workspace",
    "__version__",
]
