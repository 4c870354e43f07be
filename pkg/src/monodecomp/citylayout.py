"""Deterministic city-metaphor layout of one snapshot: package boxes, class
bars scaled by instance count, and width-classed call edges.

All footprint arithmetic stays on multiples of 0.5, so coordinates are exact
binary fractions and serialization is byte-stable across platforms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .codegraph import CodeGraph
from .errors import ArgumentError, KindError, NotFoundError, UnknownReferenceError
from .tracestore import Snapshot

PADDING = 0.5
SLAB_HEIGHT = 0.5
PACKAGE_COLOR = "green"
CLASS_COLOR = "purple"


@dataclass(frozen=True)
class Box3D:
    entity: str
    kind: str  # "package" | "class"
    x: float
    z: float
    width: float
    depth: float
    y_base: float
    height: float
    level: int
    color: str


@dataclass(frozen=True)
class LayoutEdge:
    from_id: str
    to_id: str
    width_class: int
    request_count: int


@dataclass(frozen=True)
class CityLayout:
    boxes: tuple[Box3D, ...]
    edges: tuple[LayoutEdge, ...]
    snapshot_window_start_us: int


def class_height(instances: int) -> float:
    """Bar height grows logarithmically with the instance count."""
    if instances < 0:
        raise ArgumentError("instances must be >= 0")
    return 1.0 + math.log2(1 + instances)


def edge_width(request_count: int) -> int:
    """Width class 1..4: one per decimal order of magnitude, clamped."""
    if request_count < 1:
        raise ArgumentError("request_count must be >= 1")
    return min(4, len(str(request_count)))


def _pack(sizes: list[tuple[str, float, float]]) -> tuple[dict[str, tuple[float, float]], float, float]:
    """Strip-pack (id, width, depth) items already in placement order.

    Returns relative positions plus the bounding content width and depth.
    Row width is capped at ceil(sqrt(total area)); a row always accepts its
    first item.
    """
    area = sum(w * d for _, w, d in sizes)
    limit = float(math.ceil(math.sqrt(area)))
    positions: dict[str, tuple[float, float]] = {}
    cursor = 0.0  # next x including padding
    used = 0.0  # sum of widths in the row (the capped quantity)
    row_depth = 0.0
    z = 0.0
    content_w = 0.0
    for item_id, w, d in sizes:
        if used > 0 and used + w > limit:
            z += row_depth + PADDING
            cursor = 0.0
            used = 0.0
            row_depth = 0.0
        x = cursor if cursor == 0 else cursor + PADDING
        positions[item_id] = (x, z)
        cursor = x + w
        used += w
        row_depth = max(row_depth, d)
        content_w = max(content_w, cursor)
    content_d = z + row_depth
    return positions, content_w, content_d


def layout_snapshot(snapshot: Snapshot, graph: CodeGraph) -> CityLayout:
    """Lay out exactly the classes active in the snapshot plus their package chain."""
    classes = sorted(snapshot.classes())
    children: dict[str, list[str]] = {}
    roots: list[str] = []
    seen: set[str] = set()
    for cls in classes:
        try:
            ent = graph.entity(cls)
        except NotFoundError as exc:
            raise UnknownReferenceError(cls) from exc
        if ent.kind != "class":
            raise KindError(f"snapshot entity {cls} is not a class")
        node = cls
        while node not in seen:
            seen.add(node)
            parent = graph.entity(node).parent
            if parent is None:
                roots.append(node)
                break
            children.setdefault(parent, []).append(node)
            node = parent

    sizes: dict[str, tuple[float, float]] = {}

    def size_of(node: str) -> tuple[float, float]:
        if graph.entity(node).kind == "class":
            sizes[node] = (1.0, 1.0)
            return sizes[node]
        ordered = _ordered_children(node)
        _, w, d = _pack(ordered)
        sizes[node] = (w + 2 * PADDING, d + 2 * PADDING)
        return sizes[node]

    def _ordered_children(node: str) -> list[tuple[str, float, float]]:
        items = []
        for child in children.get(node, []):
            w, d = size_of(child)
            items.append((child, w, d))
        items.sort(key=lambda item: (-item[1] * item[2], item[0]))
        return items

    root_items = []
    for root in sorted(roots):
        w, d = size_of(root)
        root_items.append((root, w, d))
    root_items.sort(key=lambda item: (-item[1] * item[2], item[0]))
    root_positions, _, _ = _pack(root_items)

    boxes: list[Box3D] = []

    def place(node: str, x: float, z: float, level: int) -> None:
        w, d = sizes[node]
        if graph.entity(node).kind == "class":
            instances = snapshot.instance_counts.get(node, 1)
            boxes.append(
                Box3D(node, "class", x, z, w, d, SLAB_HEIGHT * level,
                      class_height(instances), level, CLASS_COLOR)
            )
            return
        boxes.append(
            Box3D(node, "package", x, z, w, d, SLAB_HEIGHT * level,
                  SLAB_HEIGHT, level, PACKAGE_COLOR)
        )
        ordered = _ordered_children(node)
        positions, _, _ = _pack(ordered)
        for child, _, _ in ordered:
            cx, cz = positions[child]
            place(child, x + PADDING + cx, z + PADDING + cz, level + 1)

    for root, _, _ in root_items:
        rx, rz = root_positions[root]
        place(root, rx, rz, 0)

    edges = tuple(
        LayoutEdge(caller, callee, edge_width(count), count)
        for (caller, callee), count in sorted(snapshot.call_counts.items())
    )
    return CityLayout(tuple(boxes), edges, snapshot.window_start_us)


def _real(value: float) -> str:
    return f"{value:.6f}"


def layout_to_json(layout: CityLayout) -> str:
    """Serialize with fixed field order and 6-decimal reals (golden-file stable)."""
    parts = [f'{{"window_start_us":{layout.snapshot_window_start_us},"boxes":[']
    box_parts = []
    for b in layout.boxes:
        box_parts.append(
            "{"
            + f'"entity":{json.dumps(b.entity)},"kind":{json.dumps(b.kind)},'
            + f'"x":{_real(b.x)},"z":{_real(b.z)},'
            + f'"width":{_real(b.width)},"depth":{_real(b.depth)},'
            + f'"y_base":{_real(b.y_base)},"height":{_real(b.height)},'
            + f'"level":{b.level},"color":{json.dumps(b.color)}'
            + "}"
        )
    parts.append(",".join(box_parts))
    parts.append('],"edges":[')
    edge_parts = []
    for e in layout.edges:
        edge_parts.append(
            "{"
            + f'"from":{json.dumps(e.from_id)},"to":{json.dumps(e.to_id)},'
            + f'"width_class":{e.width_class},"requests":{e.request_count}'
            + "}"
        )
    parts.append(",".join(edge_parts))
    parts.append("]}\n")
    return "".join(parts)
