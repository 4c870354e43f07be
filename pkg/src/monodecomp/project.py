"""Project assembly: load the four bundle documents, cross-check references
between them, hold decomposition state, and build the JSON report documents
shared by the CLI and the HTTP API.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .codegraph import CodeGraph, load_static_graph
from .datapartition import TableUsage, assign_tables, load_table_usage, propose_splits
from .decomposer import (
    BoundaryEdit,
    Decomposition,
    ScoreReport,
    ScoringWeights,
    apply_edits,
    baseline_decomposition,
    cross_matrix,
    evaluate_whatif,
    score,
    suggest,
)
from .domainmodel import DomainModel, context_map_from_assignment, detect_ambiguities, load_domain_model
from .errors import EmptyGraphError, KindError, UnknownReferenceError
from .tracestore import (
    DEFAULT_WINDOW_US,
    InstanceSample,
    SnapshotSeries,
    Span,
    aggregate_snapshots,
    load_traces,
)


def bundle_id(graph_text: str, domain_text: str, tables_text: str, traces_text: str | None) -> str:
    """Stable content hash so identical bundles map to the same project id."""
    h = hashlib.sha256()
    for part in (graph_text, domain_text, tables_text, traces_text or ""):
        h.update(part.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()[:12]


@dataclass
class Project:
    id: str
    graph: CodeGraph
    model: DomainModel
    usage: TableUsage
    series: SnapshotSeries
    weights: ScoringWeights
    window_us: int
    current: Decomposition
    edit_log: list[BoundaryEdit] = field(default_factory=list)


def cross_validate(
    graph: CodeGraph,
    model: DomainModel,
    spans: list[Span],
    samples: list[InstanceSample],
) -> None:
    """References between bundle documents must land on known graph classes."""
    for entity in model.mapped_entities():
        if entity not in graph:
            raise UnknownReferenceError(entity)
    class_ids = set(graph.classes())

    def check_class(entity: str, what: str) -> None:
        if entity in class_ids:
            return
        if entity in graph:
            raise KindError(f"{what} must be a class: {entity}")
        raise UnknownReferenceError(entity)

    for span in spans:
        check_class(span.callee, "span callee")
        if span.caller is not None:
            check_class(span.caller, "span caller")
    for sample in samples:
        check_class(sample.entity, "instance sample entity")


def assemble_project(
    graph_text: str,
    domain_text: str,
    tables_text: str,
    traces_text: str | None = None,
    window_us: int = DEFAULT_WINDOW_US,
    weights: ScoringWeights | None = None,
) -> Project:
    """Load, validate, and wire the bundle into a scored project."""
    graph = load_static_graph(graph_text)
    if not graph.classes():
        raise EmptyGraphError("bundle contains no classes")
    model = load_domain_model(domain_text)
    usage = load_table_usage(tables_text, model)
    spans, samples = load_traces(traces_text) if traces_text is not None else ([], [])
    cross_validate(graph, model, spans, samples)
    series = aggregate_snapshots(spans, samples, window_us)
    return Project(
        id=bundle_id(graph_text, domain_text, tables_text, traces_text),
        graph=graph,
        model=model,
        usage=usage,
        series=series,
        weights=weights if weights is not None else ScoringWeights(),
        window_us=window_us,
        current=baseline_decomposition(model, graph),
    )


def replay(project: Project) -> Decomposition:
    """Re-derive the current decomposition from the baseline plus the edit log."""
    base = baseline_decomposition(project.model, project.graph)
    return apply_edits(base, list(project.edit_log), project.graph)


def commit_edits(project: Project, edits: list[BoundaryEdit]) -> ScoreReport:
    """Apply a validated batch, append it to the log, and score the result."""
    project.current = apply_edits(project.current, edits, project.graph)
    project.edit_log.extend(edits)
    return score(project.current, project.graph, project.series, project.weights)


# -- report documents --------------------------------------------------------

def to_json(doc: object, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, indent=2) + "\n"
    return json.dumps(doc, separators=(",", ":")) + "\n"


def score_doc(report: ScoreReport) -> dict:
    return {
        "total": report.total,
        "cohesion": {ctx: report.per_context_cohesion[ctx] for ctx in sorted(report.per_context_cohesion)},
        "sync_cross": report.sync_cross,
        "async_cross": report.async_cross,
        "granularity_penalty": report.granularity_penalty,
        "duplication_penalty": report.duplication_penalty,
    }


def contextmap_doc(project: Project) -> dict:
    cmap = context_map_from_assignment(
        sorted(project.current.contexts()),
        project.current.assign,
        project.graph,
        project.series,
        project.current.async_pairs,
    )
    return {
        "nodes": list(cmap.nodes),
        "edges": [
            {
                "from": e.from_ctx,
                "to": e.to_ctx,
                "static_weight": e.static_w,
                "dynamic_weight": e.dynamic_w,
                "mode": e.mode,
            }
            for e in cmap.edges
        ],
    }


def ambiguities_doc(project: Project) -> dict:
    report = detect_ambiguities(project.model)
    return {
        "entries": [
            {
                "package": e.package,
                "contexts": sorted(e.contexts),
                "witnesses": list(e.witnesses),
            }
            for e in report.entries
        ]
    }


def snapshots_doc(project: Project) -> dict:
    return {
        "window_us": project.series.window_us,
        "windows": [s.window_start_us for s in project.series.snapshots],
    }


def build_suggestions_doc(graph: CodeGraph, series: SnapshotSeries, weights: ScoringWeights) -> dict:
    result = suggest(graph, series, weights)
    clusters: dict[str, list[str]] = {}
    for cls, cluster in result.partition.items():
        clusters.setdefault(cluster, []).append(cls)
    return {
        "clusters": [
            {"id": cid, "members": sorted(members)} for cid, members in sorted(clusters.items())
        ],
        "modularity": result.modularity,
        "deterministic": result.deterministic,
    }


def suggestions_doc(project: Project) -> dict:
    return build_suggestions_doc(project.graph, project.series, project.weights)


def datapartition_doc(project: Project) -> dict:
    assignment = assign_tables(project.usage, project.model)
    proposals = propose_splits(project.usage, project.model)
    return {
        "owned": {table: assignment.owned[table] for table in sorted(assignment.owned)},
        "shared": [
            {
                "table": s.table,
                "contexts": sorted(s.contexts),
                "write_counts": {ctx: s.write_counts[ctx] for ctx in sorted(s.write_counts)},
            }
            for s in assignment.shared
        ],
        "remainder": list(assignment.remainder),
        "proposals": [
            {
                "table": p.table,
                "overlap": p.overlap,
                "projections": [
                    {"context": ctx, "columns": list(cols)} for ctx, cols in p.projections
                ],
            }
            for p in proposals
        ],
    }


def whatif_doc(project: Project, edits: list[BoundaryEdit]) -> dict:
    before, after, delta = evaluate_whatif(
        project.current, edits, project.graph, project.series, project.weights
    )
    after_d = apply_edits(project.current, edits, project.graph)
    matrix = cross_matrix(after_d, project.graph, project.series, project.weights)
    return {
        "before": score_doc(before),
        "after": score_doc(after),
        "delta": delta,
        "coupling": [
            {
                "from": a,
                "to": b,
                "weight": value,
                "mode": "async" if (a, b) in after_d.async_pairs else "sync",
            }
            for (a, b), value in matrix.items()
        ],
    }


def summary_doc(project: Project) -> dict:
    report = score(project.current, project.graph, project.series, project.weights)
    return {
        "id": project.id,
        "classes": len(project.graph.classes()),
        "packages": len(project.graph.packages()),
        "contexts": sorted(project.current.contexts()),
        "window_us": project.window_us,
        "snapshot_windows": [s.window_start_us for s in project.series.snapshots],
        "edit_log_len": len(project.edit_log),
        "score": score_doc(report),
    }


def analyze_doc(project: Project) -> dict:
    report = score(project.current, project.graph, project.series, project.weights)
    return {
        "context_map": contextmap_doc(project),
        "ambiguities": ambiguities_doc(project),
        "score": score_doc(report),
        "data_partition": datapartition_doc(project),
    }
