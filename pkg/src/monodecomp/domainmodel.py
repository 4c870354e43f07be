"""Domain-driven artifacts: use cases, domain contexts, bounded contexts, the
package-to-use-case mapping, ambiguity detection, and the derived context map."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .codegraph import CodeGraph
from .errors import (
    DuplicateIdError,
    NotFoundError,
    NotMappedError,
    ParseError,
    UnknownReferenceError,
    ValidationError,
)
from .tracestore import SnapshotSeries


@dataclass(frozen=True)
class UseCase:
    id: str
    name: str
    actors: tuple[str, ...]


@dataclass(frozen=True)
class DomainContext:
    id: str
    name: str
    use_cases: frozenset[str]


@dataclass(frozen=True)
class BoundedContext:
    id: str
    name: str
    domain_contexts: frozenset[str]


@dataclass(frozen=True)
class DomainModel:
    use_cases: dict[str, UseCase]
    domain_contexts: dict[str, DomainContext]
    bounded_contexts: dict[str, BoundedContext]
    package_usecase_map: tuple[tuple[str, str], ...]  # (entity id, use-case id)
    _bc_of_dc: dict[str, str] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for bc in self.bounded_contexts.values():
            for dc in bc.domain_contexts:
                self._bc_of_dc[dc] = bc.id

    def contexts_of_usecase(self, uc_id: str) -> set[str]:
        """Bounded contexts reachable from one use case."""
        if uc_id not in self.use_cases:
            raise NotFoundError(f"unknown use case: {uc_id}")
        found = set()
        for dc in self.domain_contexts.values():
            if uc_id in dc.use_cases:
                found.add(self._bc_of_dc[dc.id])
        return found

    def usecases_of(self, entity_id: str) -> list[str]:
        return [uc for ent, uc in self.package_usecase_map if ent == entity_id]

    def mapped_entities(self) -> list[str]:
        seen: dict[str, None] = {}
        for ent, _ in self.package_usecase_map:
            seen.setdefault(ent)
        return list(seen)


@dataclass(frozen=True)
class ContextEdge:
    from_ctx: str
    to_ctx: str
    static_w: int
    dynamic_w: int
    mode: str  # "sync" | "async"


@dataclass(frozen=True)
class ContextMap:
    nodes: tuple[str, ...]
    edges: tuple[ContextEdge, ...]


@dataclass(frozen=True)
class AmbiguityEntry:
    package: str
    contexts: frozenset[str]
    witnesses: tuple[str, ...]  # use cases pulling in non-primary contexts


@dataclass(frozen=True)
class AmbiguityReport:
    entries: tuple[AmbiguityEntry, ...]


# -- loading ---------------------------------------------------------------

_TOP_KEYS = {"use_cases", "domain_contexts", "bounded_contexts", "package_usecase_map"}


def _str_list(values, what: str) -> tuple[str, ...]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise ParseError(f"{what} must be a list of strings")
    return tuple(values)


def _record(raw: dict, keys: set[str], what: str) -> None:
    if not isinstance(raw, dict):
        raise ParseError(f"{what} must be an object")
    if set(raw) != keys:
        raise ParseError(f"{what} must have exactly keys {sorted(keys)}")
    for key in ("id", "name", "entity", "use_case"):
        if key in raw and not isinstance(raw[key], str):
            raise ParseError(f"{what} {key} must be a string")


def load_domain_model(text: str) -> DomainModel:
    """Parse and validate the domain-model JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, offset=exc.colno) from exc
    if not isinstance(doc, dict) or set(doc) != _TOP_KEYS:
        raise ParseError(f"top level must be an object with keys {sorted(_TOP_KEYS)}")

    use_cases: dict[str, UseCase] = {}
    for raw in doc["use_cases"]:
        _record(raw, {"id", "name", "actors"}, "use case")
        uc = UseCase(raw["id"], raw["name"], _str_list(raw["actors"], "actors"))
        if not uc.actors:
            raise ValidationError(f"use case {uc.id} has no actors")
        if uc.id in use_cases:
            raise DuplicateIdError(f"duplicate use case id: {uc.id}")
        use_cases[uc.id] = uc

    domain_contexts: dict[str, DomainContext] = {}
    for raw in doc["domain_contexts"]:
        _record(raw, {"id", "name", "use_cases"}, "domain context")
        dc = DomainContext(raw["id"], raw["name"], frozenset(_str_list(raw["use_cases"], "use_cases")))
        if dc.id in domain_contexts:
            raise DuplicateIdError(f"duplicate domain context id: {dc.id}")
        for uc in dc.use_cases:
            if uc not in use_cases:
                raise UnknownReferenceError(uc)
        domain_contexts[dc.id] = dc

    bounded_contexts: dict[str, BoundedContext] = {}
    claimed: dict[str, str] = {}
    for raw in doc["bounded_contexts"]:
        _record(raw, {"id", "name", "domain_contexts"}, "bounded context")
        bc = BoundedContext(
            raw["id"], raw["name"], frozenset(_str_list(raw["domain_contexts"], "domain_contexts"))
        )
        if bc.id in bounded_contexts:
            raise DuplicateIdError(f"duplicate bounded context id: {bc.id}")
        if not bc.domain_contexts:
            raise ValidationError(f"bounded context {bc.id} is empty")
        for dc in bc.domain_contexts:
            if dc not in domain_contexts:
                raise UnknownReferenceError(dc)
            if dc in claimed:
                raise ValidationError(f"domain context {dc} claimed by {claimed[dc]} and {bc.id}")
            claimed[dc] = bc.id
        bounded_contexts[bc.id] = bc
    for dc in domain_contexts:
        if dc not in claimed:
            raise ValidationError(f"domain context {dc} belongs to no bounded context")

    pairs: list[tuple[str, str]] = []
    seen_pairs: set[tuple[str, str]] = set()
    for raw in doc["package_usecase_map"]:
        _record(raw, {"entity", "use_case"}, "mapping entry")
        pair = (raw["entity"], raw["use_case"])
        if pair[1] not in use_cases:
            raise UnknownReferenceError(pair[1])
        if pair not in seen_pairs:  # duplicate pairs collapse (set semantics)
            seen_pairs.add(pair)
            pairs.append(pair)

    return DomainModel(use_cases, domain_contexts, bounded_contexts, tuple(pairs))


def dump_domain_model(model: DomainModel) -> str:
    doc = {
        "use_cases": [
            {"id": u.id, "name": u.name, "actors": list(u.actors)} for u in model.use_cases.values()
        ],
        "domain_contexts": [
            {"id": d.id, "name": d.name, "use_cases": sorted(d.use_cases)}
            for d in model.domain_contexts.values()
        ],
        "bounded_contexts": [
            {"id": b.id, "name": b.name, "domain_contexts": sorted(b.domain_contexts)}
            for b in model.bounded_contexts.values()
        ],
        "package_usecase_map": [
            {"entity": ent, "use_case": uc} for ent, uc in model.package_usecase_map
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


# -- mapping queries -------------------------------------------------------


def assignment_of(model: DomainModel, package: str) -> set[str]:
    """Bounded contexts reachable from one mapped entity's use cases."""
    ucs = model.usecases_of(package)
    if not ucs:
        raise NotMappedError(f"entity not in package-usecase map: {package}")
    contexts: set[str] = set()
    for uc in ucs:
        contexts |= model.contexts_of_usecase(uc)
    return contexts


def majority_context(model: DomainModel, entity_id: str) -> str:
    """Context with the most mapping witnesses; ties break lexicographically."""
    counts: dict[str, int] = {}
    for uc in model.usecases_of(entity_id):
        for ctx in model.contexts_of_usecase(uc):
            counts[ctx] = counts.get(ctx, 0) + 1
    if not counts:
        raise NotMappedError(f"entity not in package-usecase map: {entity_id}")
    return min(counts, key=lambda ctx: (-counts[ctx], ctx))


def detect_ambiguities(model: DomainModel) -> AmbiguityReport:
    """Mapped entities whose use cases span two or more bounded contexts."""
    entries = []
    for ent in sorted(model.mapped_entities()):
        contexts = assignment_of(model, ent)
        if len(contexts) < 2:
            continue
        primary = majority_context(model, ent)
        witnesses = sorted(
            uc
            for uc in set(model.usecases_of(ent))
            if model.contexts_of_usecase(uc) - {primary}
        )
        entries.append(AmbiguityEntry(ent, frozenset(contexts), tuple(witnesses)))
    return AmbiguityReport(tuple(entries))


def attribute_classes(model: DomainModel, graph: CodeGraph) -> dict[str, str]:
    """Assign every class to one bounded context.

    The nearest mapped entity wins (the class itself, then ancestors outward);
    multi-context entities resolve by majority rule.
    """
    mapped = set(model.mapped_entities())
    assign: dict[str, str] = {}
    cache: dict[str, str] = {}
    for cls in graph.classes():
        chosen = None
        for candidate in (cls, *graph.ancestors(cls)):
            if candidate in mapped:
                if candidate not in cache:
                    cache[candidate] = majority_context(model, candidate)
                chosen = cache[candidate]
                break
        if chosen is None:
            raise NotMappedError(f"class has no mapped ancestor: {cls}")
        assign[cls] = chosen
    return assign


# -- context map -----------------------------------------------------------


def context_map_from_assignment(
    nodes: list[str],
    assign: dict[str, str],
    graph: CodeGraph,
    series: SnapshotSeries,
    async_pairs: frozenset[tuple[str, str]] = frozenset(),
) -> ContextMap:
    """Directed context-level dependency map from a total class assignment."""
    static_w: dict[tuple[str, str], int] = {}
    dynamic_w: dict[tuple[str, str], int] = {}
    for edge in graph.edges:
        pair = (assign[edge.from_id], assign[edge.to_id])
        if pair[0] != pair[1]:
            static_w[pair] = static_w.get(pair, 0) + edge.weight
    for snap in series.snapshots:
        for (caller, callee), count in snap.call_counts.items():
            pair = (assign[caller], assign[callee])
            if pair[0] != pair[1]:
                dynamic_w[pair] = dynamic_w.get(pair, 0) + count
    edges = tuple(
        ContextEdge(
            a,
            b,
            static_w.get((a, b), 0),
            dynamic_w.get((a, b), 0),
            "async" if (a, b) in async_pairs else "sync",
        )
        for a, b in sorted(set(static_w) | set(dynamic_w))
    )
    return ContextMap(tuple(sorted(nodes)), edges)


def derive_context_map(model: DomainModel, graph: CodeGraph, series: SnapshotSeries) -> ContextMap:
    """Context map under the baseline majority-rule attribution."""
    assign = attribute_classes(model, graph)
    return context_map_from_assignment(list(model.bounded_contexts), assign, graph, series)
