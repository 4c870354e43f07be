"""Database table ownership and per-context schema split proposals derived
from declared use-case access patterns."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .domainmodel import DomainModel
from .errors import (
    DuplicateIdError,
    MissingKeyError,
    ParseError,
    UnknownReferenceError,
    ValidationError,
)


@dataclass(frozen=True)
class Table:
    name: str
    key: str | None
    columns: tuple[str, ...]


@dataclass(frozen=True)
class Access:
    use_case: str
    table: str
    columns: tuple[str, ...]
    mode: str  # "read" | "write"


@dataclass(frozen=True)
class TableUsage:
    tables: dict[str, Table]
    accesses: tuple[Access, ...]


@dataclass(frozen=True)
class SharedTable:
    table: str
    contexts: frozenset[str]
    write_counts: dict[str, int]


@dataclass(frozen=True)
class TableAssignment:
    owned: dict[str, str]  # table -> context
    shared: tuple[SharedTable, ...]
    remainder: tuple[str, ...]  # declared but never accessed


@dataclass(frozen=True)
class SchemaSplitProposal:
    table: str
    projections: tuple[tuple[str, tuple[str, ...]], ...]  # (context, columns)
    overlap: float  # mean pairwise Jaccard similarity of projections


_TOP_KEYS = {"tables", "accesses"}


def load_table_usage(text: str, model: DomainModel | None = None) -> TableUsage:
    """Parse the table-usage document; use-case refs check only when a model is given."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, offset=exc.colno) from exc
    if not isinstance(doc, dict) or set(doc) != _TOP_KEYS:
        raise ParseError(f"top level must be an object with keys {sorted(_TOP_KEYS)}")

    tables: dict[str, Table] = {}
    for raw in doc["tables"]:
        if not isinstance(raw, dict) or set(raw) != {"name", "key", "columns"}:
            raise ParseError("table must have exactly keys [columns, key, name]")
        name, key, columns = raw["name"], raw["key"], raw["columns"]
        if not isinstance(name, str) or not (key is None or isinstance(key, str)):
            raise ParseError("table name must be a string, key a string or null")
        if not isinstance(columns, list) or not all(isinstance(c, str) for c in columns):
            raise ParseError(f"columns of {name} must be a list of strings")
        if not columns:
            raise ValidationError(f"table {name} has no columns")
        if len(set(columns)) != len(columns):
            raise ValidationError(f"table {name} has duplicate columns")
        if key is not None and key not in columns:
            raise ValidationError(f"key {key} of table {name} is not a column")
        if name in tables:
            raise DuplicateIdError(f"duplicate table: {name}")
        tables[name] = Table(name, key, tuple(columns))

    accesses: list[Access] = []
    for raw in doc["accesses"]:
        if not isinstance(raw, dict) or set(raw) != {"use_case", "table", "columns", "mode"}:
            raise ParseError("access must have exactly keys [columns, mode, table, use_case]")
        if not all(isinstance(raw[k], str) for k in ("use_case", "table", "mode")):
            raise ParseError("access use_case, table, and mode must be strings")
        if raw["mode"] not in ("read", "write"):
            raise ValidationError(f"unknown access mode: {raw['mode']!r}")
        table = tables.get(raw["table"])
        if table is None:
            raise UnknownReferenceError(raw["table"])
        columns = raw["columns"]
        if not isinstance(columns, list) or not all(isinstance(c, str) for c in columns):
            raise ParseError("access columns must be a list of strings")
        for col in columns:
            if col not in table.columns:
                raise UnknownReferenceError(col)
        if model is not None and raw["use_case"] not in model.use_cases:
            raise UnknownReferenceError(raw["use_case"])
        accesses.append(Access(raw["use_case"], raw["table"], tuple(columns), raw["mode"]))

    return TableUsage(tables, tuple(accesses))


def dump_table_usage(usage: TableUsage) -> str:
    doc = {
        "tables": [
            {"name": t.name, "key": t.key, "columns": list(t.columns)}
            for t in usage.tables.values()
        ],
        "accesses": [
            {"use_case": a.use_case, "table": a.table, "columns": list(a.columns), "mode": a.mode}
            for a in usage.accesses
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _contexts_by_table(usage: TableUsage, model: DomainModel):
    """Per table: writer context write counts and the full accessor context set."""
    writers: dict[str, dict[str, int]] = {name: {} for name in usage.tables}
    accessors: dict[str, set[str]] = {name: set() for name in usage.tables}
    for access in usage.accesses:
        contexts = model.contexts_of_usecase(access.use_case)
        accessors[access.table] |= contexts
        if access.mode == "write":
            for ctx in contexts:
                writers[access.table][ctx] = writers[access.table].get(ctx, 0) + 1
    return writers, accessors


def assign_tables(usage: TableUsage, model: DomainModel) -> TableAssignment:
    """Writer-dominant ownership: one writing context owns; several share."""
    writers, accessors = _contexts_by_table(usage, model)
    owned: dict[str, str] = {}
    shared: list[SharedTable] = []
    remainder: list[str] = []
    for name in sorted(usage.tables):
        writing = writers[name]
        accessing = accessors[name]
        if not accessing:
            remainder.append(name)
        elif len(writing) == 1:
            owned[name] = next(iter(writing))
        elif len(writing) == 0 and len(accessing) == 1:
            owned[name] = next(iter(accessing))
        else:
            counts = {ctx: writing.get(ctx, 0) for ctx in sorted(accessing)}
            shared.append(SharedTable(name, frozenset(accessing), counts))
    return TableAssignment(owned, tuple(shared), tuple(remainder))


def propose_splits(usage: TableUsage, model: DomainModel) -> list[SchemaSplitProposal]:
    """One split proposal per shared table: a projection per accessing context,
    each carrying that context's accessed columns plus the replicated key."""
    assignment = assign_tables(usage, model)
    proposals: list[SchemaSplitProposal] = []
    for entry in assignment.shared:
        table = usage.tables[entry.table]
        if table.key is None:
            raise MissingKeyError(f"shared table {table.name} declares no key column")
        by_context: dict[str, set[str]] = {ctx: {table.key} for ctx in entry.contexts}
        for access in usage.accesses:
            if access.table != table.name:
                continue
            for ctx in model.contexts_of_usecase(access.use_case):
                by_context[ctx].update(access.columns)
        projections = tuple(
            (ctx, tuple(sorted(by_context[ctx]))) for ctx in sorted(by_context)
        )
        proposals.append(SchemaSplitProposal(table.name, projections, _overlap(projections)))
    return proposals


def _overlap(projections) -> float:
    sets = [set(cols) for _, cols in projections]
    if len(sets) < 2:
        return 0.0
    scores = [len(a & b) / len(a | b) for a, b in combinations(sets, 2)]
    return sum(scores) / len(scores)
