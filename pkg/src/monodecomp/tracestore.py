"""Dynamic behavior of the monolith: call spans, instance samples, and
tumbling-window snapshots that back the timeline view."""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass

from .errors import ArgumentError, DuplicateSpanError, ParseError, UnknownReferenceError

DEFAULT_WINDOW_US = 10_000_000


@dataclass(frozen=True)
class Span:
    trace_id: str
    span_id: str
    parent_span_id: str | None
    caller: str | None  # none = external entry point
    callee: str
    operation: str
    start_us: int
    duration_us: int


@dataclass(frozen=True)
class InstanceSample:
    entity: str
    t_us: int
    count: int


@dataclass(frozen=True)
class Snapshot:
    window_start_us: int
    window_us: int
    call_counts: dict[tuple[str, str], int]
    instance_counts: dict[str, int]

    def classes(self) -> set[str]:
        found = set(self.instance_counts)
        for caller, callee in self.call_counts:
            found.add(caller)
            found.add(callee)
        return found


@dataclass(frozen=True)
class SnapshotSeries:
    window_us: int
    snapshots: list[Snapshot]

    def snapshot_at(self, window_start_us: int) -> Snapshot | None:
        for snap in self.snapshots:
            if snap.window_start_us == window_start_us:
                return snap
        return None


_SPAN_KEYS = {
    "type",
    "trace_id",
    "span_id",
    "parent_span_id",
    "caller",
    "callee",
    "operation",
    "start_us",
    "duration_us",
}
_SAMPLE_KEYS = {"type", "entity", "t_us", "count"}


def _field(rec: dict, key: str, lineno: int, types: tuple, nullable: bool = False):
    if key not in rec:
        raise ParseError(f"missing field {key!r}", line=lineno)
    value = rec[key]
    if value is None and nullable:
        return None
    if isinstance(value, bool) or not isinstance(value, types):
        raise ParseError(f"bad value for {key!r}", line=lineno)
    return value


def load_traces(lines) -> tuple[list[Span], list[InstanceSample]]:
    """Parse newline-delimited trace records; blank lines are skipped."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    spans: list[Span] = []
    samples: list[InstanceSample] = []
    seen: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=lineno) from exc
        if not isinstance(rec, dict):
            raise ParseError("record must be an object", line=lineno)
        kind = rec.get("type")
        if kind == "span":
            extra = set(rec) - _SPAN_KEYS
            if extra:
                raise ParseError(f"unknown span fields: {sorted(extra)}", line=lineno)
            span = Span(
                trace_id=_field(rec, "trace_id", lineno, (str,)),
                span_id=_field(rec, "span_id", lineno, (str,)),
                parent_span_id=_field(rec, "parent_span_id", lineno, (str,), nullable=True),
                caller=_field(rec, "caller", lineno, (str,), nullable=True),
                callee=_field(rec, "callee", lineno, (str,)),
                operation=_field(rec, "operation", lineno, (str,)),
                start_us=_field(rec, "start_us", lineno, (int,)),
                duration_us=_field(rec, "duration_us", lineno, (int,)),
            )
            if span.duration_us < 0:
                raise ParseError("duration_us must be >= 0", line=lineno)
            key = (span.trace_id, span.span_id)
            if key in seen:
                raise DuplicateSpanError(f"duplicate span {key}")
            seen.add(key)
            spans.append(span)
        elif kind == "instances":
            extra = set(rec) - _SAMPLE_KEYS
            if extra:
                raise ParseError(f"unknown instance fields: {sorted(extra)}", line=lineno)
            sample = InstanceSample(
                entity=_field(rec, "entity", lineno, (str,)),
                t_us=_field(rec, "t_us", lineno, (int,)),
                count=_field(rec, "count", lineno, (int,)),
            )
            if sample.count < 0:
                raise ParseError("count must be >= 0", line=lineno)
            samples.append(sample)
        else:
            raise ParseError(f"unknown record type: {kind!r}", line=lineno)
    for span in spans:
        if span.parent_span_id is not None and (span.trace_id, span.parent_span_id) not in seen:
            raise UnknownReferenceError(span.parent_span_id)
    return spans, samples


def dump_traces(spans: list[Span], samples: list[InstanceSample]) -> str:
    """Serialize records to the trace file format, spans then samples."""
    out = []
    for s in spans:
        out.append(
            json.dumps(
                {
                    "type": "span",
                    "trace_id": s.trace_id,
                    "span_id": s.span_id,
                    "parent_span_id": s.parent_span_id,
                    "caller": s.caller,
                    "callee": s.callee,
                    "operation": s.operation,
                    "start_us": s.start_us,
                    "duration_us": s.duration_us,
                }
            )
        )
    for s in samples:
        out.append(
            json.dumps({"type": "instances", "entity": s.entity, "t_us": s.t_us, "count": s.count})
        )
    return "\n".join(out) + ("\n" if out else "")


def aggregate_snapshots(
    spans: list[Span], samples: list[InstanceSample], window_us: int = DEFAULT_WINDOW_US
) -> SnapshotSeries:
    """Tumbling-window aggregation; windows align to the earliest timestamp."""
    if window_us < 1:
        raise ArgumentError("window_us must be >= 1")
    times = [s.start_us for s in spans] + [s.t_us for s in samples]
    if not times:
        return SnapshotSeries(window_us, [])
    t0 = min(times)

    def window_of(t: int) -> int:
        return t0 + ((t - t0) // window_us) * window_us

    calls: dict[int, Counter] = defaultdict(Counter)
    present: dict[int, set[str]] = defaultdict(set)
    sample_max: dict[int, dict[str, int]] = defaultdict(dict)
    for span in spans:
        w = window_of(span.start_us)
        present[w].add(span.callee)
        if span.caller is not None:
            present[w].add(span.caller)
            calls[w][(span.caller, span.callee)] += 1
    for sample in samples:
        w = window_of(sample.t_us)
        prev = sample_max[w].get(sample.entity)
        if prev is None or sample.count > prev:
            sample_max[w][sample.entity] = sample.count

    snapshots = []
    for w in sorted(set(calls) | set(present) | set(sample_max)):
        instance_counts = {}
        for cls in sorted(present[w] | set(sample_max[w])):
            instance_counts[cls] = sample_max[w].get(cls, 1)
        call_counts = {pair: calls[w][pair] for pair in sorted(calls[w])}
        snapshots.append(Snapshot(w, window_us, call_counts, instance_counts))
    return SnapshotSeries(window_us, snapshots)


def dynamic_weight(series: SnapshotSeries, a: set[str], b: set[str]) -> int:
    """Symmetric dynamic coupling between two disjoint class sets."""
    if a & b:
        raise ArgumentError("class sets overlap")
    total = 0
    for snap in series.snapshots:
        for (caller, callee), count in snap.call_counts.items():
            if (caller in a and callee in b) or (caller in b and callee in a):
                total += count
    return total
