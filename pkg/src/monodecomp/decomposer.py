"""Decomposition scoring, boundary edits, what-if evaluation, and cluster
suggestions over the combined static/dynamic class graph."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .codegraph import CodeGraph
from .domainmodel import DomainModel, attribute_classes
from .errors import (
    ArgumentError,
    CoverageError,
    EditBatchError,
    EmptyGraphError,
    IncompleteDecompositionError,
    ParseError,
    TooLargeError,
    UnknownReferenceError,
    ValidationError,
)
from .tracestore import SnapshotSeries


@dataclass(frozen=True)
class ScoringWeights:
    lambda_sync: float = 1.0
    lambda_async: float = 0.3
    lambda_gran: float = 0.1
    lambda_dup: float = 0.5
    g_min: int = 2
    g_max: int = 40
    mix_static: float = 1.0
    mix_dynamic: float = 1.0

    def __post_init__(self):
        for name in ("lambda_sync", "lambda_async", "lambda_gran", "lambda_dup",
                     "mix_static", "mix_dynamic"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be non-negative")
        if self.g_min < 1 or self.g_max < 1:
            raise ValidationError("g_min and g_max must be positive")
        if self.mix_static == 0 and self.mix_dynamic == 0:
            raise ValidationError("mix_static and mix_dynamic must not both be zero")


_WEIGHT_FIELDS = set(ScoringWeights.__dataclass_fields__)


def load_scoring_weights(text: str) -> ScoringWeights:
    """Parse a weights file: a JSON object overriding any subset of defaults."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, offset=exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("weights file must be a JSON object")
    extra = set(doc) - _WEIGHT_FIELDS
    if extra:
        raise ParseError(f"unknown weight fields: {sorted(extra)}")
    for key, value in doc.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"weight {key} must be a number")
    return ScoringWeights(**doc)


@dataclass(frozen=True)
class Decomposition:
    assign: dict[str, str]  # class id -> context id
    async_pairs: frozenset[tuple[str, str]] = frozenset()
    duplicated: frozenset[tuple[str, str]] = frozenset()  # (class, replica context)

    def contexts(self) -> set[str]:
        return set(self.assign.values())

    def classes_of(self, ctx: str) -> list[str]:
        return sorted(cls for cls, c in self.assign.items() if c == ctx)


@dataclass(frozen=True)
class ScoreReport:
    total: float
    per_context_cohesion: dict[str, float]
    sync_cross: float
    async_cross: float
    granularity_penalty: float
    duplication_penalty: float


@dataclass(frozen=True)
class CombinedGraph:
    nodes: tuple[str, ...]
    weights: dict[tuple[str, str], float]  # key ordered (u < v), value > 0

    @property
    def total_weight(self) -> float:
        return sum(self.weights.values())

    def degrees(self) -> dict[str, float]:
        deg = {n: 0.0 for n in self.nodes}
        for (u, v), w in self.weights.items():
            deg[u] += w
            deg[v] += w
        return deg


# -- boundary edits ----------------------------------------------------------


@dataclass(frozen=True)
class MovePackage:
    package: str
    context: str


@dataclass(frozen=True)
class SplitPackage:
    package: str
    assign: dict[str, str]


@dataclass(frozen=True)
class MergeContexts:
    a: str
    b: str
    new_id: str


@dataclass(frozen=True)
class DivideContext:
    context: str
    assign: dict[str, str]


@dataclass(frozen=True)
class DuplicateComponent:
    package: str
    targets: tuple[str, ...]


@dataclass(frozen=True)
class MarkAsync:
    from_ctx: str
    to_ctx: str


@dataclass(frozen=True)
class ExtractService:
    new_context: str
    classes: tuple[str, ...]


BoundaryEdit = (
    MovePackage
    | SplitPackage
    | MergeContexts
    | DivideContext
    | DuplicateComponent
    | MarkAsync
    | ExtractService
)


# -- combined graph ----------------------------------------------------------


def directed_normalized(graph: CodeGraph, series: SnapshotSeries, w: ScoringWeights) -> dict[tuple[str, str], float]:
    """Normalized directed class-pair weights mixing static and dynamic evidence.

    Self-loops are excluded throughout; each side is normalized by its own
    total so static and dynamic evidence contribute on the same scale.
    """
    static: dict[tuple[str, str], int] = {}
    for edge in graph.edges:
        if edge.from_id != edge.to_id:
            pair = (edge.from_id, edge.to_id)
            static[pair] = static.get(pair, 0) + edge.weight
    dynamic: dict[tuple[str, str], int] = {}
    for snap in series.snapshots:
        for pair, count in snap.call_counts.items():
            if pair[0] != pair[1]:
                dynamic[pair] = dynamic.get(pair, 0) + count
    total_static = sum(static.values())
    total_dynamic = sum(dynamic.values())
    out: dict[tuple[str, str], float] = {}
    if total_static and w.mix_static:
        for pair, v in static.items():
            out[pair] = out.get(pair, 0.0) + w.mix_static * v / total_static
    if total_dynamic and w.mix_dynamic:
        for pair, v in dynamic.items():
            out[pair] = out.get(pair, 0.0) + w.mix_dynamic * v / total_dynamic
    return out


def combined_graph(graph: CodeGraph, series: SnapshotSeries, w: ScoringWeights) -> CombinedGraph:
    """Undirected weighted class graph used for cohesion and clustering."""
    nodes = tuple(graph.classes())
    if not nodes:
        raise EmptyGraphError("no classes in graph")
    undirected: dict[tuple[str, str], float] = {}
    for (u, v), value in sorted(directed_normalized(graph, series, w).items()):
        key = (u, v) if u < v else (v, u)
        undirected[key] = undirected.get(key, 0.0) + value
    return CombinedGraph(nodes, dict(sorted(undirected.items())))


# -- scoring -----------------------------------------------------------------


def cross_matrix(
    d: Decomposition, graph: CodeGraph, series: SnapshotSeries, w: ScoringWeights
) -> dict[tuple[str, str], float]:
    """Normalized combined coupling per ordered cross-context pair."""
    matrix: dict[tuple[str, str], float] = {}
    for (u, v), value in sorted(directed_normalized(graph, series, w).items()):
        cu, cv = d.assign[u], d.assign[v]
        if cu != cv:
            matrix[(cu, cv)] = matrix.get((cu, cv), 0.0) + value
    return dict(sorted(matrix.items()))


def score(
    d: Decomposition, graph: CodeGraph, series: SnapshotSeries, w: ScoringWeights
) -> ScoreReport:
    """Score a decomposition; see ScoreReport for the breakdown."""
    missing = [cls for cls in graph.classes() if cls not in d.assign]
    if missing:
        raise IncompleteDecompositionError(f"unassigned classes: {missing[:5]}")
    internal: dict[str, float] = {ctx: 0.0 for ctx in d.contexts()}
    external: dict[str, float] = {ctx: 0.0 for ctx in d.contexts()}
    for (u, v), value in sorted(directed_normalized(graph, series, w).items()):
        cu, cv = d.assign[u], d.assign[v]
        if cu == cv:
            internal[cu] += value
        else:
            external[cu] += value
            external[cv] += value
    matrix = cross_matrix(d, graph, series, w)
    sync_cross = 0.0
    async_cross = 0.0
    for pair, value in matrix.items():
        if pair in d.async_pairs:
            async_cross += value
        else:
            sync_cross += value
    cohesion = {}
    for ctx in sorted(d.contexts()):
        denom = internal[ctx] + external[ctx]
        cohesion[ctx] = internal[ctx] / denom if denom > 0 else 1.0
    sizes = {ctx: 0 for ctx in d.contexts()}
    for cls in d.assign:
        sizes[d.assign[cls]] += 1
    granularity = float(
        sum(max(0, n - w.g_max) + max(0, w.g_min - n) for n in sizes.values())
    )
    duplication = float(len(d.duplicated))
    total = (
        sum(cohesion.values())
        - w.lambda_sync * sync_cross
        - w.lambda_async * async_cross
        - w.lambda_gran * granularity
        - w.lambda_dup * duplication
    )
    return ScoreReport(total, cohesion, sync_cross, async_cross, granularity, duplication)


# -- edits -------------------------------------------------------------------


def _normalized(assign: dict[str, str], async_pairs, duplicated) -> Decomposition:
    contexts = set(assign.values())
    pairs = frozenset(
        (a, b) for a, b in async_pairs if a in contexts and b in contexts and a != b
    )
    replicas = frozenset(
        (cls, ctx)
        for cls, ctx in duplicated
        if ctx in contexts and cls in assign and assign[cls] != ctx
    )
    return Decomposition(assign, pairs, replicas)


def _package_classes(graph: CodeGraph, package: str) -> list[str]:
    classes = graph.classes_under(package)
    if not classes:
        raise ValidationError(f"package {package} contains no classes")
    return classes


def apply_edit(d: Decomposition, edit: BoundaryEdit, graph: CodeGraph) -> Decomposition:
    """Apply one boundary edit, returning a new decomposition."""
    assign = dict(d.assign)
    if isinstance(edit, MovePackage):
        if edit.context not in d.contexts():
            raise UnknownReferenceError(edit.context)
        for cls in _package_classes(graph, edit.package):
            assign[cls] = edit.context
        return _normalized(assign, d.async_pairs, d.duplicated)
    if isinstance(edit, SplitPackage):
        classes = _package_classes(graph, edit.package)
        uncovered = set(classes) - set(edit.assign)
        stray = set(edit.assign) - set(classes)
        if uncovered or stray:
            raise CoverageError(
                f"split of {edit.package} must cover exactly its classes"
                f" (missing {sorted(uncovered)}, stray {sorted(stray)})"
            )
        assign.update(edit.assign)
        return _normalized(assign, d.async_pairs, d.duplicated)
    if isinstance(edit, MergeContexts):
        contexts = d.contexts()
        for ctx in (edit.a, edit.b):
            if ctx not in contexts:
                raise UnknownReferenceError(ctx)
        if edit.a == edit.b:
            raise ValidationError("merge requires two distinct contexts")
        if edit.new_id in contexts - {edit.a, edit.b}:
            raise ValidationError(f"merge target {edit.new_id} already exists")
        relabel = {edit.a: edit.new_id, edit.b: edit.new_id}
        assign = {cls: relabel.get(ctx, ctx) for cls, ctx in assign.items()}
        pairs = {(relabel.get(a, a), relabel.get(b, b)) for a, b in d.async_pairs}
        replicas = {(cls, relabel.get(ctx, ctx)) for cls, ctx in d.duplicated}
        return _normalized(assign, pairs, replicas)
    if isinstance(edit, DivideContext):
        if edit.context not in d.contexts():
            raise UnknownReferenceError(edit.context)
        members = set(d.classes_of(edit.context))
        uncovered = members - set(edit.assign)
        stray = set(edit.assign) - members
        if uncovered or stray:
            raise CoverageError(
                f"divide of {edit.context} must cover exactly its classes"
                f" (missing {sorted(uncovered)}, stray {sorted(stray)})"
            )
        if len(set(edit.assign.values())) != 2:
            raise ValidationError("divide requires exactly two target contexts")
        assign.update(edit.assign)
        return _normalized(assign, d.async_pairs, d.duplicated)
    if isinstance(edit, DuplicateComponent):
        contexts = d.contexts()
        for ctx in edit.targets:
            if ctx not in contexts:
                raise UnknownReferenceError(ctx)
        replicas = set(d.duplicated)
        for cls in _package_classes(graph, edit.package):
            for ctx in edit.targets:
                replicas.add((cls, ctx))
        return _normalized(assign, d.async_pairs, replicas)
    if isinstance(edit, MarkAsync):
        contexts = d.contexts()
        for ctx in (edit.from_ctx, edit.to_ctx):
            if ctx not in contexts:
                raise UnknownReferenceError(ctx)
        if edit.from_ctx == edit.to_ctx:
            raise ValidationError("async pair must cross contexts")
        return _normalized(
            assign, set(d.async_pairs) | {(edit.from_ctx, edit.to_ctx)}, d.duplicated
        )
    if isinstance(edit, ExtractService):
        if not edit.classes:
            raise ValidationError("extract requires at least one class")
        for cls in edit.classes:
            if cls not in assign:
                raise UnknownReferenceError(cls)
            assign[cls] = edit.new_context
        return _normalized(assign, d.async_pairs, d.duplicated)
    raise ArgumentError(f"unknown edit type: {type(edit).__name__}")


def evaluate_whatif(
    d: Decomposition,
    edits: list[BoundaryEdit],
    graph: CodeGraph,
    series: SnapshotSeries,
    w: ScoringWeights,
) -> tuple[ScoreReport, ScoreReport, float]:
    """Score before and after an edit sequence without mutating the baseline."""
    before = score(d, graph, series, w)
    current = d
    for index, edit in enumerate(edits):
        try:
            current = apply_edit(current, edit, graph)
        except Exception as exc:
            raise EditBatchError(index, exc) from exc
    after = score(current, graph, series, w)
    return before, after, after.total - before.total


def apply_edits(d: Decomposition, edits: list[BoundaryEdit], graph: CodeGraph) -> Decomposition:
    current = d
    for index, edit in enumerate(edits):
        try:
            current = apply_edit(current, edit, graph)
        except Exception as exc:
            raise EditBatchError(index, exc) from exc
    return current


def baseline_decomposition(model: DomainModel, graph: CodeGraph) -> Decomposition:
    """Majority-rule attribution of every class, no async pairs, no replicas."""
    return Decomposition(attribute_classes(model, graph))


# -- suggestion clustering -----------------------------------------------------


@dataclass(frozen=True)
class SuggestionResult:
    partition: dict[str, str]  # class id -> cluster id (min member id)
    modularity: float
    deterministic: bool = True


def modularity(cg: CombinedGraph, partition: dict[str, str]) -> float:
    """Newman modularity Q of a partition over the combined graph."""
    m = cg.total_weight
    if m == 0:
        return 0.0
    deg = cg.degrees()
    internal: dict[str, float] = {}
    deg_sum: dict[str, float] = {}
    for node in cg.nodes:
        deg_sum[partition[node]] = deg_sum.get(partition[node], 0.0) + deg[node]
    for (u, v), w_uv in cg.weights.items():
        if partition[u] == partition[v]:
            internal[partition[u]] = internal.get(partition[u], 0.0) + w_uv
    q = 0.0
    for cluster in sorted(deg_sum):
        q += internal.get(cluster, 0.0) / m - (deg_sum[cluster] / (2 * m)) ** 2
    return q


def _relabel_min(partition: dict[str, str]) -> dict[str, str]:
    best: dict[str, str] = {}
    for node, cluster in partition.items():
        if cluster not in best or node < best[cluster]:
            best[cluster] = node
    return {node: best[cluster] for node, cluster in partition.items()}


def suggest(
    graph: CodeGraph,
    series: SnapshotSeries,
    w: ScoringWeights,
    seed_partition: dict[str, str] | None = None,
) -> SuggestionResult:
    """Greedy modularity agglomeration; deterministic tie-breaking on cluster ids.

    Merges the connected cluster pair with the largest modularity gain; ties go
    to the lexicographically smallest (id, id) pair; stops at no positive gain.
    """
    cg = combined_graph(graph, series, w)
    if seed_partition is not None:
        missing = set(cg.nodes) - set(seed_partition)
        if missing:
            raise ArgumentError(f"seed partition misses classes: {sorted(missing)[:5]}")
        membership = {n: seed_partition[n] for n in cg.nodes}
    else:
        membership = {n: n for n in cg.nodes}
    membership = _relabel_min(membership)
    m = cg.total_weight
    if m == 0:
        return SuggestionResult(membership, 0.0)

    deg = cg.degrees()
    cluster_deg: dict[str, float] = {}
    for node in cg.nodes:
        cluster_deg[membership[node]] = cluster_deg.get(membership[node], 0.0) + deg[node]
    between: dict[tuple[str, str], float] = {}
    for (u, v), w_uv in cg.weights.items():
        cu, cv = membership[u], membership[v]
        if cu != cv:
            key = (cu, cv) if cu < cv else (cv, cu)
            between[key] = between.get(key, 0.0) + w_uv

    while True:
        best_pair = None
        best_gain = 0.0
        for pair in sorted(between):
            e_ij = between[pair]
            gain = e_ij / m - cluster_deg[pair[0]] * cluster_deg[pair[1]] / (2 * m * m)
            if gain > best_gain:
                best_gain = gain
                best_pair = pair
        if best_pair is None:
            break
        keep, gone = best_pair  # keep is the smaller id
        for node in membership:
            if membership[node] == gone:
                membership[node] = keep
        cluster_deg[keep] += cluster_deg.pop(gone)
        merged: dict[tuple[str, str], float] = {}
        for (a, b), w_ab in between.items():
            a = keep if a == gone else a
            b = keep if b == gone else b
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            merged[key] = merged.get(key, 0.0) + w_ab
        between = merged

    membership = _relabel_min(membership)
    return SuggestionResult(membership, modularity(cg, membership))


def _set_partitions(items: list[str]):
    """Yield set partitions as restricted growth strings, lexicographic order."""
    n = len(items)
    rgs = [0] * n
    maxes = [0] * n
    while True:
        blocks: dict[int, list[str]] = {}
        for idx, block in enumerate(rgs):
            blocks.setdefault(block, []).append(items[idx])
        yield list(blocks.values())
        i = n - 1
        while i > 0 and rgs[i] == maxes[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            maxes[j] = maxes[i]


def brute_force_suggest(
    graph: CodeGraph, series: SnapshotSeries, w: ScoringWeights, max_n: int = 8
) -> SuggestionResult:
    """Exhaustive modularity maximization; first partition in enumeration order wins ties."""
    cg = combined_graph(graph, series, w)
    if len(cg.nodes) > max_n:
        raise TooLargeError(f"{len(cg.nodes)} classes exceed brute-force limit {max_n}")
    best_q = None
    best: dict[str, str] | None = None
    for blocks in _set_partitions(list(cg.nodes)):
        partition = {node: block[0] for block in blocks for node in block}
        q = modularity(cg, partition)
        if best_q is None or q > best_q:
            best_q = q
            best = partition
    assert best is not None and best_q is not None
    return SuggestionResult(_relabel_min(best), best_q)


# -- edit batch wire format ----------------------------------------------------


def _parse_assign(raw: object, what: str) -> dict[str, str]:
    if not isinstance(raw, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in raw.items()
    ):
        raise ParseError(f"{what} assign must map class ids to context ids")
    return dict(raw)


def _parse_one_edit(raw: object, index: int) -> BoundaryEdit:
    if not isinstance(raw, dict):
        raise ParseError(f"edit {index} must be an object")
    op = raw.get("op")
    shapes = {
        "move_package": {"op", "package", "context"},
        "mark_async": {"op", "from", "to"},
        "merge": {"op", "a", "b", "new_id"},
        "divide": {"op", "context", "assign"},
        "duplicate": {"op", "package", "targets"},
        "split_package": {"op", "package", "assign"},
        "extract": {"op", "new_context", "classes"},
    }
    if op not in shapes:
        raise ParseError(f"edit {index} has unknown op: {op!r}")
    if set(raw) != shapes[op]:
        raise ParseError(f"edit {index} ({op}) must have exactly keys {sorted(shapes[op])}")
    str_fields = [k for k in raw if k not in ("op", "assign", "targets", "classes")]
    for key in str_fields:
        if not isinstance(raw[key], str):
            raise ParseError(f"edit {index} field {key} must be a string")
    if op == "move_package":
        return MovePackage(raw["package"], raw["context"])
    if op == "mark_async":
        return MarkAsync(raw["from"], raw["to"])
    if op == "merge":
        return MergeContexts(raw["a"], raw["b"], raw["new_id"])
    if op == "divide":
        return DivideContext(raw["context"], _parse_assign(raw["assign"], f"edit {index}"))
    if op == "duplicate":
        targets = raw["targets"]
        if not isinstance(targets, list) or not all(isinstance(t, str) for t in targets):
            raise ParseError(f"edit {index} targets must be a list of strings")
        return DuplicateComponent(raw["package"], tuple(targets))
    if op == "split_package":
        return SplitPackage(raw["package"], _parse_assign(raw["assign"], f"edit {index}"))
    classes = raw["classes"]
    if not isinstance(classes, list) or not all(isinstance(c, str) for c in classes):
        raise ParseError(f"edit {index} classes must be a list of strings")
    return ExtractService(raw["new_context"], tuple(classes))


def parse_edit_batch(text: str) -> list[BoundaryEdit]:
    """Parse the edit-batch JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, offset=exc.colno) from exc
    return parse_edit_list(doc)


def parse_edit_list(doc: object) -> list[BoundaryEdit]:
    if not isinstance(doc, dict) or set(doc) - {"edits", "expected_log_len"}:
        raise ParseError('edit batch must be an object with an "edits" list')
    if "edits" not in doc or not isinstance(doc["edits"], list):
        raise ParseError('edit batch must have an "edits" list')
    return [_parse_one_edit(raw, i) for i, raw in enumerate(doc["edits"])]


def edit_to_dict(edit: BoundaryEdit) -> dict:
    if isinstance(edit, MovePackage):
        return {"op": "move_package", "package": edit.package, "context": edit.context}
    if isinstance(edit, MarkAsync):
        return {"op": "mark_async", "from": edit.from_ctx, "to": edit.to_ctx}
    if isinstance(edit, MergeContexts):
        return {"op": "merge", "a": edit.a, "b": edit.b, "new_id": edit.new_id}
    if isinstance(edit, DivideContext):
        return {"op": "divide", "context": edit.context, "assign": dict(edit.assign)}
    if isinstance(edit, DuplicateComponent):
        return {"op": "duplicate", "package": edit.package, "targets": list(edit.targets)}
    if isinstance(edit, SplitPackage):
        return {"op": "split_package", "package": edit.package, "assign": dict(edit.assign)}
    if isinstance(edit, ExtractService):
        return {"op": "extract", "new_context": edit.new_context, "classes": list(edit.classes)}
    raise ArgumentError(f"unknown edit type: {type(edit).__name__}")


def dump_edit_batch(edits: list[BoundaryEdit]) -> str:
    return json.dumps({"edits": [edit_to_dict(e) for e in edits]}, indent=2) + "\n"
