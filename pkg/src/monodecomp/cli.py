"""Command-line front door: ingest bundles, run analyses, emit reports and
layouts, generate the demo fixture, and launch the HTTP server.

Exit codes: 0 success, 2 input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .citylayout import layout_snapshot, layout_to_json
from .decomposer import ScoringWeights, load_scoring_weights, parse_edit_batch
from .errors import ArgumentError, MonodecompError, NotFoundError
from .fixtures import generate_fixture
from .project import (
    analyze_doc,
    assemble_project,
    build_suggestions_doc,
    to_json,
    whatif_doc,
)
from .tracestore import DEFAULT_WINDOW_US, aggregate_snapshots, load_traces
from .codegraph import load_static_graph

DEFAULT_PORT = 7430

FIXTURE_FILES = {
    "graph_text": "graph.json",
    "domain_text": "domain.json",
    "traces_text": "traces.ndjson",
    "tables_text": "tables.json",
}


def _add_bundle_flags(sub: argparse.ArgumentParser, with_domain: bool = True) -> None:
    sub.add_argument("--graph", required=True, help="static graph JSON file")
    if with_domain:
        sub.add_argument("--domain", required=True, help="domain model JSON file")
        sub.add_argument("--tables", required=True, help="table usage JSON file")
    sub.add_argument("--traces", help="trace NDJSON file (optional)")
    sub.add_argument("--weights", help="scoring weight overrides JSON file")
    sub.add_argument("--window-us", type=int, default=DEFAULT_WINDOW_US,
                     help="tumbling window length in microseconds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monodecomp")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="run the full bundle analysis")
    _add_bundle_flags(analyze)
    analyze.add_argument("--figures", help="also render PNG figures into this directory")
    analyze.set_defaults(func=cmd_analyze)

    gen = commands.add_parser("gen-fixture", help="write a generated demo bundle")
    gen.add_argument("name", nargs="?", default="lottery", help="fixture name")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--seed", type=int, default=1, help="generator seed")
    gen.set_defaults(func=cmd_gen_fixture)

    whatif = commands.add_parser("whatif", help="evaluate an edit batch without committing")
    _add_bundle_flags(whatif)
    whatif.add_argument("-f", "--file", required=True, help="edit batch JSON file")
    whatif.set_defaults(func=cmd_whatif)

    suggest = commands.add_parser("suggest", help="propose a modularity-based clustering")
    _add_bundle_flags(suggest, with_domain=False)
    suggest.set_defaults(func=cmd_suggest)

    layout = commands.add_parser("layout", help="emit the city layout for one snapshot")
    layout.add_argument("--graph", required=True, help="static graph JSON file")
    layout.add_argument("--traces", required=True, help="trace NDJSON file")
    layout.add_argument("--window-us", type=int, default=DEFAULT_WINDOW_US,
                        help="tumbling window length in microseconds")
    layout.add_argument("--snapshot", type=int,
                        help="window start in microseconds (default: first window)")
    layout.set_defaults(func=cmd_layout)

    serve = commands.add_parser("serve", help="run the HTTP API server")
    serve.add_argument("--port", type=int, help="listen port (default: MONODECOMP_PORT or 7430)")
    serve.add_argument("--host", default="127.0.0.1", help="bind address")
    serve.add_argument("--data-dir", help="directory for persisted projects")
    serve.set_defaults(func=cmd_serve)
    return parser


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_weights(args) -> ScoringWeights:
    if getattr(args, "weights", None):
        return load_scoring_weights(_read(args.weights))
    return ScoringWeights()


def _project_from_args(args):
    return assemble_project(
        _read(args.graph),
        _read(args.domain),
        _read(args.tables),
        _read(args.traces) if args.traces else None,
        window_us=args.window_us,
        weights=_load_weights(args),
    )


def _emit(args, doc: object) -> int:
    sys.stdout.write(to_json(doc, pretty=args.pretty))
    return 0


def cmd_analyze(args) -> int:
    project = _project_from_args(args)
    if args.figures:
        from .report import render_figures

        render_figures(project, args.figures)
    return _emit(args, analyze_doc(project))


def cmd_gen_fixture(args) -> int:
    bundle = generate_fixture(args.name, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for attr, filename in FIXTURE_FILES.items():
        path = out / filename
        path.write_text(getattr(bundle, attr))
        written.append(str(path))
    return _emit(args, {"fixture": args.name, "seed": args.seed, "files": written})


def cmd_whatif(args) -> int:
    project = _project_from_args(args)
    edits = parse_edit_batch(_read(args.file))
    return _emit(args, whatif_doc(project, edits))


def cmd_suggest(args) -> int:
    graph = load_static_graph(_read(args.graph))
    spans, samples = load_traces(_read(args.traces)) if args.traces else ([], [])
    series = aggregate_snapshots(spans, samples, args.window_us)
    return _emit(args, build_suggestions_doc(graph, series, _load_weights(args)))


def cmd_layout(args) -> int:
    graph = load_static_graph(_read(args.graph))
    spans, samples = load_traces(_read(args.traces))
    series = aggregate_snapshots(spans, samples, args.window_us)
    if not series.snapshots:
        raise NotFoundError("trace file produced no snapshot windows")
    if args.snapshot is None:
        snapshot = series.snapshots[0]
    else:
        snapshot = series.snapshot_at(args.snapshot)
        if snapshot is None:
            raise NotFoundError(f"no snapshot window starting at {args.snapshot}")
    sys.stdout.write(layout_to_json(layout_snapshot(snapshot, graph)))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import ProjectStore, create_app

    if args.port is not None:
        port = args.port
    else:
        raw = os.environ.get("MONODECOMP_PORT", str(DEFAULT_PORT))
        try:
            port = int(raw)
        except ValueError:
            raise ArgumentError(f"MONODECOMP_PORT must be an integer, got {raw!r}") from None
    app = create_app(ProjectStore(data_dir=args.data_dir))
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MonodecompError as exc:
        print(f"error: {exc} [{exc.code}]", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # anything else is a bug, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
