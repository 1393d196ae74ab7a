"""HTTP interface to the engine.

Every request and response body is one of the documented file formats, so
anything the service emits re-parses through the same codecs. Engine errors
map to status codes by class: unknown ids give 404, an empty pattern match
or zero-energy baseline give 422, and every other validation failure gives
400 with the error's class name in the body.

Compute endpoints are pure functions of the request plus referenced
entities; entity writes are single dict assignments, so concurrent readers
always see a complete entity.
"""

from __future__ import annotations

from dataclasses import replace

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .control import compare_policies, policy_from_doc, schedule_from_doc, simulate
from .designgen import (
    check_fixtures,
    design_to_doc,
    evaluate_field,
    generate_scored,
    score_to_doc,
)
from .errors import LuxforgeError, MalformedDocument, NoApplicablePattern, ZeroBaselineEnergy
from .geometry import room_from_doc, room_to_doc
from .patterns import default_library, library_to_doc
from .photometry import PlacedFixture, spec_from_doc
from .workspace import Workspace


def _status_for(exc: LuxforgeError) -> int:
    if isinstance(exc, (NoApplicablePattern, ZeroBaselineEnergy)):
        return 422
    return 400


def create_app(workspace: Workspace | None = None) -> FastAPI:
    ws = workspace if workspace is not None else Workspace()
    app = FastAPI(title="luxforge workbench")
    app.state.workspace = ws

    @app.exception_handler(LuxforgeError)
    async def engine_error(_request: Request, exc: LuxforgeError) -> JSONResponse:
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    def room_or_404(room_id: str):
        if room_id not in ws.rooms:
            raise HTTPException(status_code=404, detail=f"no room {room_id!r}")
        return ws.rooms[room_id]

    def design_or_404(design_id: str):
        if design_id not in ws.designs:
            raise HTTPException(status_code=404, detail=f"no design {design_id!r}")
        return ws.designs[design_id]

    @app.post("/api/rooms")
    async def create_room(body: dict) -> dict:
        room_id, _room = ws.add_room(room_from_doc(body))
        return {"id": room_id}

    @app.get("/api/rooms/{room_id}")
    async def get_room(room_id: str) -> dict:
        return room_to_doc(room_or_404(room_id))

    @app.get("/api/patterns")
    async def get_patterns() -> dict:
        return library_to_doc(default_library())

    @app.post("/api/rooms/{room_id}/designs")
    async def create_designs(room_id: str, body: dict) -> dict:
        room = room_or_404(room_id)
        seed = int(body.get("seed", 0))
        ranked = generate_scored(
            room,
            default_library(),
            seed,
            spacing=float(body.get("spacing", 0.25)),
            workplane_height=float(body.get("workplane_height", 0.8)),
        )
        out = []
        for design, score in ranked:
            stored = ws.add_design(replace(design, room_id=room_id))
            out.append({"design": design_to_doc(stored), "score": score_to_doc(score)})
        return {"room_id": room_id, "designs": out}

    @app.get("/api/designs/{design_id}")
    async def get_design(design_id: str) -> dict:
        return design_to_doc(design_or_404(design_id))

    @app.patch("/api/designs/{design_id}")
    async def edit_design(design_id: str, body: dict) -> dict:
        design = design_or_404(design_id)
        fixtures = list(design.fixtures)
        edits = body.get("fixtures")
        if not isinstance(edits, list):
            raise MalformedDocument("PATCH body needs a fixtures list")
        for edit in edits:
            try:
                index = int(edit["index"])
                current = fixtures[index]
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedDocument(f"bad fixture edit: {exc}") from exc
            except IndexError as exc:
                raise MalformedDocument(
                    f"fixture index {edit.get('index')} out of range"
                ) from exc
            changes: dict = {}
            if "position" in edit:
                x, y, z = edit["position"]
                changes["position"] = (float(x), float(y), float(z))
            if "axis" in edit:
                x, y, z = edit["axis"]
                changes["axis"] = (float(x), float(y), float(z))
            if "spec" in edit:
                changes["spec"] = spec_from_doc(edit["spec"])
            if "dim" in edit:
                changes["dim"] = float(edit["dim"])
            if "zone" in edit:
                changes["zone"] = str(edit["zone"])
            if "dimmable" in edit:
                changes["dimmable"] = bool(edit["dimmable"])
            fixtures[index] = PlacedFixture(
                spec=changes.get("spec", current.spec),
                position=changes.get("position", current.position),
                axis=changes.get("axis", current.axis),
                zone=changes.get("zone", current.zone),
                dimmable=changes.get("dimmable", current.dimmable),
                dim=changes.get("dim", current.dim),
            )
        updated = replace(design, fixtures=tuple(fixtures))
        check_fixtures(updated)
        ws.replace_design(updated)
        return design_to_doc(updated)

    @app.post("/api/designs/{design_id}/illuminance")
    async def design_illuminance(design_id: str, body: dict) -> dict:
        design = design_or_404(design_id)
        field = evaluate_field(
            design,
            spacing=float(body.get("spacing", 0.25)),
            workplane_height=float(body.get("workplane_height", 0.8)),
        )
        return {
            "points": [list(p) for p in field.points],
            "lux": list(field.lux),
            "stats": {
                "average": field.stats.average,
                "min": field.stats.min,
                "max": field.stats.max,
                "uniformity": field.stats.uniformity,
            },
        }

    @app.post("/api/designs/{design_id}/simulate")
    async def design_simulate(design_id: str, body: dict) -> dict:
        design = design_or_404(design_id)
        try:
            policy = policy_from_doc(body["policy"])
            schedule = schedule_from_doc(body["schedule"])
        except KeyError as exc:
            raise MalformedDocument(f"simulate body needs {exc}") from exc
        trace = simulate(design, policy, schedule)
        trace_id, record = ws.add_trace(design_id, trace)
        return {
            "trace_id": trace_id,
            "summary": {
                "ticks": record.ticks,
                "dt": record.dt,
                "horizon": record.horizon,
                "total_wh": record.total_wh,
                "energy_wh": record.energy_wh,
            },
        }

    @app.get("/api/traces/{trace_id}.csv")
    async def get_trace(trace_id: str) -> PlainTextResponse:
        if trace_id not in ws.traces:
            raise HTTPException(status_code=404, detail=f"no trace {trace_id!r}")
        return PlainTextResponse(ws.traces[trace_id].csv, media_type="text/csv")

    @app.post("/api/designs/{design_id}/compare")
    async def design_compare(design_id: str, body: dict) -> dict:
        design = design_or_404(design_id)
        try:
            policies = [policy_from_doc(p) for p in body["policies"]]
            schedule = schedule_from_doc(body["schedule"])
        except KeyError as exc:
            raise MalformedDocument(f"compare body needs {exc}") from exc
        if len(policies) < 2:
            raise MalformedDocument("compare needs a baseline plus at least one policy")
        report = compare_policies(design, policies, schedule)
        return {
            "baseline": report.baseline,
            "results": [
                {
                    "name": r.name,
                    "energy_wh": r.energy_wh,
                    "savings_percent": r.savings_percent,
                }
                for r in report.results
            ],
        }

    return app
