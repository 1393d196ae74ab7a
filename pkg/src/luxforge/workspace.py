"""Entity store for rooms, designs, and simulation traces.

Entities persist as their documented file formats (JSON rooms/designs, CSV
traces plus a small summary sidecar) under opaque ids, so a saved workspace
doubles as a set of golden fixtures. Save -> restore -> save is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from .control import SimulationTrace, trace_to_csv
from .designgen import LightingDesign, design_from_doc, design_to_doc
from .errors import CorruptEntity, IoFailure, LuxforgeError
from .geometry import RoomModel, ValidatedRoom, room_from_doc, room_to_doc, validate_room


@dataclass(frozen=True)
class TraceRecord:
    """What outlives a simulation run: the CSV and its energy summary."""

    design_id: str
    csv: str
    ticks: int
    dt: float
    horizon: float
    total_wh: float
    energy_wh: dict[str, float]


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


class Workspace:
    """In-memory maps with optional write-through to a directory.

    Ids are opaque, monotonically assigned, and never reused within a
    process lifetime, including after restore.
    """

    def __init__(self, directory: str | Path | None = None):
        self.rooms: dict[str, ValidatedRoom] = {}
        self.designs: dict[str, LightingDesign] = {}
        self.traces: dict[str, TraceRecord] = {}
        self._counters = {"room": 0, "design": 0, "trace": 0}
        self.directory = Path(directory) if directory is not None else None

    def _next_id(self, kind: str, prefix: str) -> str:
        self._counters[kind] += 1
        return f"{prefix}{self._counters[kind]:06d}"

    # --- mutation ---------------------------------------------------------

    def add_room(self, model: RoomModel) -> tuple[str, ValidatedRoom]:
        room = validate_room(model)
        room_id = self._next_id("room", "r")
        self.rooms[room_id] = room
        self._write("rooms", room_id, ".json", _dump(room_to_doc(room)))
        self._write_index()
        return room_id, room

    def add_design(self, design: LightingDesign) -> LightingDesign:
        design_id = self._next_id("design", "d")
        stored = replace(design, id=design_id)
        self.designs[design_id] = stored
        self._write("designs", design_id, ".json", _dump(design_to_doc(stored)))
        self._write_index()
        return stored

    def replace_design(self, design: LightingDesign) -> None:
        if design.id not in self.designs:
            raise KeyError(design.id)
        self.designs[design.id] = design
        self._write("designs", design.id, ".json", _dump(design_to_doc(design)))

    def add_trace(self, design_id: str, trace: SimulationTrace) -> tuple[str, TraceRecord]:
        trace_id = self._next_id("trace", "t")
        record = TraceRecord(
            design_id=design_id,
            csv=trace_to_csv(trace),
            ticks=len(trace.records),
            dt=trace.dt,
            horizon=trace.horizon,
            total_wh=trace.total_wh,
            energy_wh=dict(trace.energy_wh),
        )
        self.traces[trace_id] = record
        self._write("traces", trace_id, ".csv", record.csv)
        self._write("traces", trace_id, ".meta.json", _dump(self._trace_meta(record)))
        self._write_index()
        return trace_id, record

    @staticmethod
    def _trace_meta(record: TraceRecord) -> dict:
        return {
            "design_id": record.design_id,
            "ticks": record.ticks,
            "dt": record.dt,
            "horizon": record.horizon,
            "total_wh": record.total_wh,
            "energy_wh": record.energy_wh,
        }

    # --- persistence --------------------------------------------------------

    def _write(self, sub: str, entity_id: str, suffix: str, text: str) -> None:
        if self.directory is None:
            return
        try:
            folder = self.directory / sub
            folder.mkdir(parents=True, exist_ok=True)
            (folder / f"{entity_id}{suffix}").write_text(text)
        except OSError as exc:
            raise IoFailure(f"{self.directory / sub}: {exc}") from exc

    def _write_index(self) -> None:
        if self.directory is None:
            return
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            (self.directory / "index.json").write_text(_dump(self._index_doc()))
        except OSError as exc:
            raise IoFailure(f"{self.directory / 'index.json'}: {exc}") from exc

    def _index_doc(self) -> dict:
        return {
            "version": "1",
            "counters": dict(self._counters),
            "rooms": sorted(self.rooms),
            "designs": sorted(self.designs),
            "traces": sorted(self.traces),
        }

    def save(self, directory: str | Path) -> None:
        """Write every entity plus the index under `directory`."""
        target = Path(directory)
        previous = self.directory
        self.directory = target
        try:
            for room_id, room in self.rooms.items():
                self._write("rooms", room_id, ".json", _dump(room_to_doc(room)))
            for design_id, design in self.designs.items():
                self._write("designs", design_id, ".json", _dump(design_to_doc(design)))
            for trace_id, record in self.traces.items():
                self._write("traces", trace_id, ".csv", record.csv)
                self._write("traces", trace_id, ".meta.json", _dump(self._trace_meta(record)))
            self._write_index()
        finally:
            self.directory = previous

    @classmethod
    def restore(cls, directory: str | Path, write_through: bool = False) -> "Workspace":
        """Load a saved workspace; every entity re-validates on the way in."""
        base = Path(directory)
        ws = cls(directory=base if write_through else None)
        index_path = base / "index.json"
        if not index_path.exists():
            if base.exists():
                return ws
            raise IoFailure(f"{base}: no such directory")
        try:
            index = json.loads(index_path.read_text())
        except OSError as exc:
            raise IoFailure(f"{index_path}: {exc}") from exc
        except ValueError as exc:
            raise CorruptEntity(f"index.json: {exc}") from exc

        for room_id in index.get("rooms", []):
            path = base / "rooms" / f"{room_id}.json"
            try:
                ws.rooms[room_id] = validate_room(room_from_doc(json.loads(path.read_text())))
            except OSError as exc:
                raise IoFailure(f"{path}: {exc}") from exc
            except (ValueError, LuxforgeError) as exc:
                raise CorruptEntity(f"room {room_id}: {exc}") from exc
        for design_id in index.get("designs", []):
            path = base / "designs" / f"{design_id}.json"
            try:
                ws.designs[design_id] = design_from_doc(json.loads(path.read_text()))
            except OSError as exc:
                raise IoFailure(f"{path}: {exc}") from exc
            except (ValueError, LuxforgeError) as exc:
                raise CorruptEntity(f"design {design_id}: {exc}") from exc
        for trace_id in index.get("traces", []):
            csv_path = base / "traces" / f"{trace_id}.csv"
            meta_path = base / "traces" / f"{trace_id}.meta.json"
            try:
                meta = json.loads(meta_path.read_text())
                ws.traces[trace_id] = TraceRecord(
                    design_id=str(meta["design_id"]),
                    csv=csv_path.read_text(),
                    ticks=int(meta["ticks"]),
                    dt=float(meta["dt"]),
                    horizon=float(meta["horizon"]),
                    total_wh=float(meta["total_wh"]),
                    energy_wh={str(k): float(v) for k, v in meta["energy_wh"].items()},
                )
            except OSError as exc:
                raise IoFailure(f"{csv_path}: {exc}") from exc
            except (KeyError, TypeError, ValueError) as exc:
                raise CorruptEntity(f"trace {trace_id}: {exc}") from exc

        counters = index.get("counters", {})
        for kind in ws._counters:
            ws._counters[kind] = int(counters.get(kind, 0))
        return ws
