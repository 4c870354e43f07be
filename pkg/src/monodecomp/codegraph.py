"""Static structure of the monolith: package/class forest plus weighted dependency edges.

The graph is immutable after load. Boundary edits never touch it; they only
relabel assignments at the decomposition layer.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    ArgumentError,
    DuplicateIdError,
    KindError,
    NotFoundError,
    ParseError,
    UnknownReferenceError,
    ValidationError,
)

ID_RE = re.compile(r"[A-Za-z0-9_.$-]+\Z")
ENTITY_KINDS = ("package", "class")
EDGE_KINDS = ("call", "inherit", "field")


@dataclass(frozen=True)
class CodeEntity:
    id: str
    kind: str  # "package" | "class"
    name: str
    parent: str | None


@dataclass(frozen=True)
class StaticEdge:
    from_id: str
    to_id: str
    kind: str  # "call" | "inherit" | "field"
    weight: int


class CodeGraph:
    """Entity forest plus static edges, validated on construction."""

    def __init__(self, entities: Iterable[CodeEntity], edges: Iterable[StaticEdge]):
        self._entities: dict[str, CodeEntity] = {}
        for ent in entities:
            if ent.id in self._entities:
                raise DuplicateIdError(f"duplicate entity id: {ent.id}")
            self._entities[ent.id] = ent
        self.edges: list[StaticEdge] = list(edges)
        self._children: dict[str, list[str]] = {}
        self._validate()

    # -- validation ------------------------------------------------------

    def _validate(self) -> None:
        for ent in self._entities.values():
            if not ID_RE.match(ent.id):
                raise ValidationError(f"invalid entity id: {ent.id!r}")
            if ent.kind not in ENTITY_KINDS:
                raise ValidationError(f"unknown entity kind: {ent.kind!r}")
            if ent.parent is not None:
                parent = self._entities.get(ent.parent)
                if parent is None:
                    raise UnknownReferenceError(ent.parent)
                if parent.kind != "package":
                    raise KindError(f"parent of {ent.id} must be a package")
                self._children.setdefault(ent.parent, []).append(ent.id)
            elif ent.kind == "class":
                raise ValidationError(f"class {ent.id} has no package parent")
        self._check_forest()
        for edge in self.edges:
            for end in (edge.from_id, edge.to_id):
                ent = self._entities.get(end)
                if ent is None:
                    raise UnknownReferenceError(end)
                if ent.kind != "class":
                    raise KindError(f"edge endpoint {end} is not a class")
            if edge.kind not in EDGE_KINDS:
                raise ValidationError(f"unknown edge kind: {edge.kind!r}")
            if edge.kind == "inherit" and edge.from_id == edge.to_id:
                raise ValidationError(f"inherit self-edge on {edge.from_id}")
            if edge.weight < 1:
                raise ValidationError(f"edge weight must be >= 1: {edge.from_id} -> {edge.to_id}")

    def _check_forest(self) -> None:
        state: dict[str, int] = {}  # 0 visiting, 1 done
        for start in self._entities:
            node, trail = start, []
            while node is not None and state.get(node) is None:
                state[node] = 0
                trail.append(node)
                node = self._entities[node].parent
            if node is not None and state[node] == 0:
                raise ValidationError(f"parent cycle through {node}")
            for seen in trail:
                state[seen] = 1

    # -- queries ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CodeGraph):
            return NotImplemented
        return self._entities == other._entities and self.edges == other.edges

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self._entities

    def entity(self, entity_id: str) -> CodeEntity:
        ent = self._entities.get(entity_id)
        if ent is None:
            raise NotFoundError(f"unknown entity: {entity_id}")
        return ent

    @property
    def entities(self) -> dict[str, CodeEntity]:
        return self._entities

    def classes(self) -> list[str]:
        return sorted(e.id for e in self._entities.values() if e.kind == "class")

    def packages(self) -> list[str]:
        return sorted(e.id for e in self._entities.values() if e.kind == "package")

    def root_packages(self) -> list[str]:
        return sorted(
            e.id for e in self._entities.values() if e.kind == "package" and e.parent is None
        )

    def children_of(self, package_id: str) -> list[str]:
        self.entity(package_id)
        return sorted(self._children.get(package_id, []))

    def ancestors(self, entity_id: str) -> Iterator[str]:
        """Yield ancestor ids nearest-first."""
        node = self.entity(entity_id).parent
        while node is not None:
            yield node
            node = self._entities[node].parent

    def classes_under(self, package_id: str) -> list[str]:
        """All classes in the package subtree, sorted."""
        ent = self.entity(package_id)
        if ent.kind != "package":
            raise KindError(f"{package_id} is not a package")
        found: list[str] = []
        stack = [package_id]
        while stack:
            node = stack.pop()
            for child in self._children.get(node, []):
                if self._entities[child].kind == "class":
                    found.append(child)
                else:
                    stack.append(child)
        return sorted(found)


def package_of(graph: CodeGraph, class_id: str) -> str:
    """Nearest package ancestor of a class."""
    ent = graph.entity(class_id)
    if ent.kind != "class":
        raise KindError(f"{class_id} is not a class")
    for anc in graph.ancestors(class_id):
        if graph.entity(anc).kind == "package":
            return anc
    raise ValidationError(f"class {class_id} has no package ancestor")  # unreachable after load


def static_weight(graph: CodeGraph, a: set[str], b: set[str]) -> int:
    """Symmetric static coupling between two disjoint class sets."""
    if a & b:
        raise ArgumentError("class sets overlap")
    total = 0
    for edge in graph.edges:
        if (edge.from_id in a and edge.to_id in b) or (edge.from_id in b and edge.to_id in a):
            total += edge.weight
    return total


# -- file format ---------------------------------------------------------

_TOP_KEYS = {"entities", "edges"}
_ENTITY_KEYS = {"id", "kind", "name", "parent"}
_EDGE_KEYS = {"from", "to", "kind", "weight"}


def _require_keys(obj: dict, allowed: set[str], required: set[str], what: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise ParseError(f"unknown {what} keys: {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"missing {what} keys: {sorted(missing)}")


def load_static_graph(text: str) -> CodeGraph:
    """Parse and validate the static-graph JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, offset=exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    _require_keys(doc, _TOP_KEYS, _TOP_KEYS, "top-level")
    entities = []
    for raw in doc["entities"]:
        if not isinstance(raw, dict):
            raise ParseError("entity must be an object")
        _require_keys(raw, _ENTITY_KEYS, {"id", "kind", "name"}, "entity")
        ent = CodeEntity(
            id=_expect_str(raw["id"], "entity id"),
            kind=_expect_str(raw["kind"], "entity kind"),
            name=_expect_str(raw["name"], "entity name"),
            parent=raw.get("parent"),
        )
        if ent.parent is not None and not isinstance(ent.parent, str):
            raise ParseError(f"entity parent must be a string or null: {ent.id}")
        entities.append(ent)
    edges = []
    for raw in doc["edges"]:
        if not isinstance(raw, dict):
            raise ParseError("edge must be an object")
        _require_keys(raw, _EDGE_KEYS, {"from", "to", "kind"}, "edge")
        weight = raw.get("weight", 1)  # missing weight defaults to 1
        if not isinstance(weight, int) or isinstance(weight, bool):
            raise ParseError("edge weight must be an integer")
        edges.append(
            StaticEdge(
                from_id=_expect_str(raw["from"], "edge from"),
                to_id=_expect_str(raw["to"], "edge to"),
                kind=_expect_str(raw["kind"], "edge kind"),
                weight=weight,
            )
        )
    return CodeGraph(entities, edges)


def dump_static_graph(graph: CodeGraph) -> str:
    """Serialize to the static-graph file format (stable field and record order)."""
    doc = {
        "entities": [
            {"id": e.id, "kind": e.kind, "name": e.name, "parent": e.parent}
            for e in graph.entities.values()
        ],
        "edges": [
            {"from": e.from_id, "to": e.to_id, "kind": e.kind, "weight": e.weight}
            for e in graph.edges
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _expect_str(value: object, what: str) -> str:
    if not isinstance(value, str):
        raise ParseError(f"{what} must be a string")
    return value
