"""HTTP API over projects: bundle ingest, analysis reports, snapshot layouts,
what-if evaluation, and edit commits with optimistic concurrency.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import Response

from .citylayout import layout_snapshot, layout_to_json
from .decomposer import BoundaryEdit, edit_to_dict, parse_edit_list
from .errors import ConflictError, MonodecompError, NotFoundError, ParseError
from .project import (
    Project,
    ambiguities_doc,
    assemble_project,
    commit_edits,
    contextmap_doc,
    datapartition_doc,
    score_doc,
    snapshots_doc,
    suggestions_doc,
    summary_doc,
    to_json,
    whatif_doc,
)
from .tracestore import DEFAULT_WINDOW_US

_BUNDLE_KEYS = {"graph", "domain", "tables", "traces", "window_us"}


class ProjectStore:
    """In-memory project registry with optional file persistence.

    Commits are serialized per project; reads take no lock because committed
    state is swapped in whole Project fields under the project lock.
    """

    def __init__(self, data_dir: str | Path | None = None):
        self._projects: dict[str, Project] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._layout_cache: dict[tuple[str, int, int], str] = {}
        self._registry_lock = threading.Lock()
        self._dir = Path(data_dir) if data_dir is not None else None
        if self._dir is not None:
            self._dir.mkdir(parents=True, exist_ok=True)
            self._load_existing()

    def _lock_for(self, project_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(project_id, threading.Lock())

    def _load_existing(self) -> None:
        for meta_path in sorted(self._dir.glob("*/meta.json")):
            pdir = meta_path.parent
            meta = json.loads(meta_path.read_text())
            traces_path = pdir / "traces.ndjson"
            project = assemble_project(
                (pdir / "graph.json").read_text(),
                (pdir / "domain.json").read_text(),
                (pdir / "tables.json").read_text(),
                traces_path.read_text() if traces_path.exists() else None,
                window_us=meta["window_us"],
            )
            log_path = pdir / "editlog.ndjson"
            if log_path.exists():
                raw = [json.loads(line) for line in log_path.read_text().splitlines() if line]
                commit_edits(project, parse_edit_list({"edits": raw}))
            self._projects[project.id] = project

    def _persist_bundle(
        self, project: Project, graph: str, domain: str, tables: str, traces: str | None
    ) -> None:
        if self._dir is None:
            return
        pdir = self._dir / project.id
        pdir.mkdir(exist_ok=True)
        (pdir / "graph.json").write_text(graph)
        (pdir / "domain.json").write_text(domain)
        (pdir / "tables.json").write_text(tables)
        if traces is not None:
            (pdir / "traces.ndjson").write_text(traces)
        (pdir / "meta.json").write_text(json.dumps({"window_us": project.window_us}) + "\n")
        (pdir / "editlog.ndjson").write_text("")

    def _persist_edits(self, project: Project, edits: list[BoundaryEdit]) -> None:
        if self._dir is None:
            return
        with (self._dir / project.id / "editlog.ndjson").open("a") as fh:
            for edit in edits:
                fh.write(json.dumps(edit_to_dict(edit), separators=(",", ":")) + "\n")

    def create(
        self,
        graph: str,
        domain: str,
        tables: str,
        traces: str | None,
        window_us: int = DEFAULT_WINDOW_US,
    ) -> Project:
        project = assemble_project(graph, domain, tables, traces, window_us=window_us)
        with self._registry_lock:
            existing = self._projects.get(project.id)
            if existing is not None:
                return existing
            self._projects[project.id] = project
        self._persist_bundle(project, graph, domain, tables, traces)
        return project

    def get(self, project_id: str) -> Project:
        project = self._projects.get(project_id)
        if project is None:
            raise NotFoundError(f"unknown project: {project_id}")
        return project

    def commit(self, project_id: str, edits: list[BoundaryEdit], expected_log_len: int):
        project = self.get(project_id)
        with self._lock_for(project_id):
            if expected_log_len != len(project.edit_log):
                raise ConflictError(
                    f"edit log has length {len(project.edit_log)}, expected {expected_log_len}"
                )
            report = commit_edits(project, edits)
            self._persist_edits(project, edits)
            return report

    def layout_json(self, project_id: str, window_start_us: int) -> str:
        project = self.get(project_id)
        key = (project_id, window_start_us, len(project.edit_log))
        cached = self._layout_cache.get(key)
        if cached is not None:
            return cached
        snapshot = project.series.snapshot_at(window_start_us)
        if snapshot is None:
            raise NotFoundError(f"no snapshot window starting at {window_start_us}")
        text = layout_to_json(layout_snapshot(snapshot, project.graph))
        self._layout_cache[key] = text
        return text


def _status_for(exc: MonodecompError) -> int:
    if isinstance(exc, NotFoundError):
        return 404
    if isinstance(exc, ConflictError):
        return 409
    return 422


def _json_body(raw: bytes) -> dict:
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, offset=exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("request body must be a JSON object")
    return doc


def _parse_bundle_body(doc: dict) -> tuple[str, str, str, str | None, int]:
    extra = set(doc) - _BUNDLE_KEYS
    if extra:
        raise ParseError(f"unknown bundle keys: {sorted(extra)}")
    missing = {"graph", "domain", "tables"} - set(doc)
    if missing:
        raise ParseError(f"missing bundle keys: {sorted(missing)}")
    for key in ("graph", "domain", "tables"):
        if not isinstance(doc[key], str):
            raise ParseError(f"bundle field {key} must be a string document")
    traces = doc.get("traces")
    if traces is not None and not isinstance(traces, str):
        raise ParseError("bundle field traces must be a string document or null")
    window_us = doc.get("window_us", DEFAULT_WINDOW_US)
    if not isinstance(window_us, int) or isinstance(window_us, bool):
        raise ParseError("bundle field window_us must be an integer")
    return doc["graph"], doc["domain"], doc["tables"], traces, window_us


def create_app(store: ProjectStore | None = None) -> FastAPI:
    app = FastAPI(title="monodecomp", openapi_url=None, docs_url=None, redoc_url=None)
    app.state.store = store if store is not None else ProjectStore()

    def body_of(doc: object) -> Response:
        return Response(content=to_json(doc), media_type="application/json")

    @app.exception_handler(MonodecompError)
    async def handle_engine_error(request: Request, exc: MonodecompError) -> Response:
        return Response(
            content=to_json({"error": exc.payload()}),
            media_type="application/json",
            status_code=_status_for(exc),
        )

    @app.post("/api/v1/projects", status_code=201)
    async def create_project(request: Request) -> Response:
        graph, domain, tables, traces, window_us = _parse_bundle_body(
            _json_body(await request.body())
        )
        project = app.state.store.create(graph, domain, tables, traces, window_us)
        return Response(
            content=to_json({"id": project.id}),
            media_type="application/json",
            status_code=201,
        )

    @app.get("/api/v1/projects/{project_id}")
    async def get_summary(project_id: str) -> Response:
        return body_of(summary_doc(app.state.store.get(project_id)))

    @app.get("/api/v1/projects/{project_id}/contextmap")
    async def get_contextmap(project_id: str) -> Response:
        return body_of(contextmap_doc(app.state.store.get(project_id)))

    @app.get("/api/v1/projects/{project_id}/ambiguities")
    async def get_ambiguities(project_id: str) -> Response:
        return body_of(ambiguities_doc(app.state.store.get(project_id)))

    @app.get("/api/v1/projects/{project_id}/snapshots")
    async def get_snapshots(project_id: str) -> Response:
        return body_of(snapshots_doc(app.state.store.get(project_id)))

    @app.get("/api/v1/projects/{project_id}/snapshots/{start_us}/layout")
    async def get_layout(project_id: str, start_us: int) -> Response:
        return Response(
            content=app.state.store.layout_json(project_id, start_us),
            media_type="application/json",
        )

    @app.get("/api/v1/projects/{project_id}/suggestions")
    async def get_suggestions(project_id: str) -> Response:
        return body_of(suggestions_doc(app.state.store.get(project_id)))

    @app.get("/api/v1/projects/{project_id}/datapartition")
    async def get_datapartition(project_id: str) -> Response:
        return body_of(datapartition_doc(app.state.store.get(project_id)))

    @app.post("/api/v1/projects/{project_id}/whatif")
    async def post_whatif(project_id: str, request: Request) -> Response:
        project = app.state.store.get(project_id)
        edits = parse_edit_list(_json_body(await request.body()))
        return body_of(whatif_doc(project, edits))

    @app.post("/api/v1/projects/{project_id}/edits")
    async def post_edits(project_id: str, request: Request) -> Response:
        doc = _json_body(await request.body())
        if "expected_log_len" not in doc:
            raise ParseError("edit commit requires expected_log_len")
        expected = doc["expected_log_len"]
        if not isinstance(expected, int) or isinstance(expected, bool):
            raise ParseError("expected_log_len must be an integer")
        edits = parse_edit_list(doc)
        report = app.state.store.commit(project_id, edits, expected)
        return body_of(score_doc(report))

    return app
