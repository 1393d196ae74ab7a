"""Command-line interface: headless generation, evaluation, simulation,
comparison, serving, and pattern export.

Exit codes: 0 success, 1 engine/validation error (error name on stderr),
2 usage error. All file outputs are deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from .control import compare_policies, policy_from_doc, schedule_from_doc, simulate, trace_to_csv
from .designgen import design_from_doc, design_to_doc, evaluate_field, generate_scored, score_to_doc
from .errors import IoFailure, LuxforgeError, MalformedDocument
from .geometry import room_from_doc, validate_room
from .patterns import default_library, library_to_doc, load_pattern_library
from .photometry import field_to_csv, field_to_pgm
from .workspace import Workspace


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _read_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except ValueError as exc:
        raise MalformedDocument(f"{path}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    try:
        target = Path(path)
        if target.parent != Path(""):
            target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc


def _load_library(path: str | None):
    if path is None:
        return default_library()
    return load_pattern_library(_read_json(path))


def cmd_generate(args: argparse.Namespace) -> int:
    room = validate_room(room_from_doc(_read_json(args.room)))
    library = _load_library(args.patterns)
    ranked = generate_scored(room, library, args.seed, spacing=args.grid)
    out = Path(args.out)
    ranking = []
    for design, score in ranked:
        _write_text(str(out / f"{design.id}.json"), _dump(design_to_doc(design)))
        ranking.append({"design_id": design.id, "pattern_id": design.pattern_id, **score_to_doc(score)})
    _write_text(str(out / "ranking.json"), _dump(ranking))
    print(f"wrote {len(ranked)} designs to {out}")
    return 0


def cmd_illuminance(args: argparse.Namespace) -> int:
    design = design_from_doc(_read_json(args.design))
    field = evaluate_field(design, spacing=args.grid, workplane_height=args.workplane)
    if args.format == "csv":
        _write_text(args.out, field_to_csv(field))
    else:
        _write_text(args.out, field_to_pgm(field, design.room, args.grid))
    print(f"wrote {len(field.points)} samples to {args.out}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    design = design_from_doc(_read_json(args.design))
    policy = policy_from_doc(_read_json(args.policy))
    schedule = schedule_from_doc(_read_json(args.schedule))
    trace = simulate(design, policy, schedule)
    _write_text(args.out, trace_to_csv(trace))
    print(f"simulated {len(trace.records)} ticks, total {trace.total_wh!r} Wh")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    design = design_from_doc(_read_json(args.design))
    schedule = schedule_from_doc(_read_json(args.schedule))
    docs = [_read_json(args.baseline)] + [_read_json(p) for p in args.policy]
    names = [Path(args.baseline).stem] + [Path(p).stem for p in args.policy]
    policies = []
    for doc, fallback in zip(docs, names):
        policy = policy_from_doc(doc)
        if "name" not in doc:
            policy = dataclasses.replace(policy, name=fallback)
        policies.append(policy)
    report = compare_policies(design, policies, schedule)
    print("policy,energy_wh,savings_percent")
    for r in report.results:
        print(f"{r.name},{r.energy_wh!r},{r.savings_percent:.1f}")
    return 0


def serve_workspace(directory: str | None) -> Workspace:
    """Workspace for `serve`: restore an existing directory, start fresh otherwise."""
    if directory and Path(directory).is_dir():
        return Workspace.restore(directory, write_through=True)
    if directory:
        # First run against a fresh path: start empty, create on first write.
        return Workspace(directory=directory)
    return Workspace()


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    workspace = serve_workspace(os.environ.get("LUXFORGE_WORKSPACE", args.workspace))
    app = create_app(workspace)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_patterns_export(args: argparse.Namespace) -> int:
    _write_text(args.out, _dump(library_to_doc(default_library())))
    print(f"wrote default pattern library to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="luxforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="instantiate and rank designs for a room")
    p.add_argument("--room", required=True, help="room JSON file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--patterns", default=None, help="pattern library JSON (default: built-in)")
    p.add_argument("--grid", type=float, default=0.25, help="evaluation grid spacing, meters")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("illuminance", help="evaluate a design's workplane field")
    p.add_argument("--design", required=True)
    p.add_argument("--grid", type=float, default=0.25, help="grid spacing, meters")
    p.add_argument("--workplane", type=float, default=0.8, help="workplane height, meters")
    p.add_argument("--format", choices=("csv", "pgm"), default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_illuminance)

    p = sub.add_parser("simulate", help="run a control policy over a schedule")
    p.add_argument("--design", required=True)
    p.add_argument("--policy", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--out", required=True, help="trace CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="energy savings of policies vs a baseline")
    p.add_argument("--design", required=True)
    p.add_argument("--baseline", required=True, help="baseline policy JSON")
    p.add_argument("--policy", action="append", required=True, help="policy JSON (repeatable)")
    p.add_argument("--schedule", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--workspace",
        default=None,
        help="persistence directory (env LUXFORGE_WORKSPACE overrides)",
    )
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("patterns", help="pattern library utilities")
    psub = p.add_subparsers(dest="patterns_command", required=True)
    pe = psub.add_parser("export", help="write the built-in library to a file")
    pe.add_argument("--out", required=True)
    pe.set_defaults(func=cmd_patterns_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LuxforgeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
