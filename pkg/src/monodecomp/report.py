"""Figure rendering: static PNG views of the context map, the score
breakdown, and a top-down footprint of each snapshot city layout.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.patches as patches
import matplotlib.pyplot as plt

from .citylayout import layout_snapshot
from .decomposer import score
from .domainmodel import context_map_from_assignment
from .project import Project

_KIND_FACE = {"package": "#bde6bd", "class": "#d6bdf0"}
_KIND_EDGE = {"package": "#2e7d32", "class": "#6a1fb0"}


def _context_map_figure(project: Project, path: Path) -> None:
    cmap = context_map_from_assignment(
        sorted(project.current.contexts()),
        project.current.assign,
        project.graph,
        project.series,
        project.current.async_pairs,
    )
    n = len(cmap.nodes)
    pos = {}
    for i, node in enumerate(cmap.nodes):
        angle = 2 * math.pi * i / max(n, 1)
        pos[node] = (math.cos(angle), math.sin(angle))
    fig, ax = plt.subplots(figsize=(7, 7))
    for edge in cmap.edges:
        (x1, y1), (x2, y2) = pos[edge.from_ctx], pos[edge.to_ctx]
        style = "--" if edge.mode == "async" else "-"
        ax.annotate(
            "",
            xy=(x2, y2),
            xytext=(x1, y1),
            arrowprops={
                "arrowstyle": "-|>",
                "linestyle": style,
                "color": "#555555",
                "shrinkA": 26,
                "shrinkB": 26,
            },
        )
        ax.text(
            (x1 + 2 * x2) / 3,
            (y1 + 2 * y2) / 3,
            f"{edge.static_w}/{edge.dynamic_w}",
            fontsize=7,
            ha="center",
            color="#333333",
        )
    for node, (x, y) in pos.items():
        ax.add_patch(plt.Circle((x, y), 0.17, color="#e8f0fe", ec="#1a56b0", zorder=3))
        ax.text(x, y, node, ha="center", va="center", fontsize=8, zorder=4)
    ax.set_xlim(-1.45, 1.45)
    ax.set_ylim(-1.45, 1.45)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title("Context map (static/dynamic weights, dashed = async)")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def _score_figure(project: Project, path: Path) -> None:
    report = score(project.current, project.graph, project.series, project.weights)
    contexts = sorted(report.per_context_cohesion)
    values = [report.per_context_cohesion[c] for c in contexts]
    labels = contexts + ["sync", "async", "granularity", "duplication"]
    bars = values + [
        -report.sync_cross,
        -report.async_cross,
        -report.granularity_penalty,
        -report.duplication_penalty,
    ]
    colors = ["#4c8bd8"] * len(contexts) + ["#d87c4c"] * 4
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(range(len(bars)), bars, color=colors)
    ax.set_xticks(range(len(bars)))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.axhline(0, color="black", linewidth=0.8)
    ax.set_ylabel("score contribution")
    ax.set_title(f"Decomposition score breakdown (total {report.total:.4f})")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _city_figure(project: Project, window_start_us: int, path: Path) -> None:
    snapshot = project.series.snapshot_at(window_start_us)
    layout = layout_snapshot(snapshot, project.graph)
    fig, ax = plt.subplots(figsize=(8, 8))
    for box in layout.boxes:
        ax.add_patch(
            patches.Rectangle(
                (box.x, box.z),
                box.width,
                box.depth,
                facecolor=_KIND_FACE[box.kind],
                edgecolor=_KIND_EDGE[box.kind],
                linewidth=0.8,
            )
        )
        if box.kind == "package" and box.level == 0:
            ax.text(
                box.x + box.width / 2,
                box.z + box.depth,
                box.entity,
                fontsize=6,
                ha="center",
                va="bottom",
            )
    xs = [b.x for b in layout.boxes] + [b.x + b.width for b in layout.boxes]
    zs = [b.z for b in layout.boxes] + [b.z + b.depth for b in layout.boxes]
    ax.set_xlim(min(xs) - 1, max(xs) + 1)
    ax.set_ylim(min(zs) - 1, max(zs) + 1)
    ax.set_aspect("equal")
    ax.set_title(f"City layout footprint, window start {window_start_us}")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def render_figures(project: Project, out_dir: str | Path) -> list[str]:
    """Write the figure set, returning the file paths in render order."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    path = out / "context_map.png"
    _context_map_figure(project, path)
    written.append(str(path))
    path = out / "score_breakdown.png"
    _score_figure(project, path)
    written.append(str(path))
    for snap in project.series.snapshots:
        path = out / f"city_{snap.window_start_us}.png"
        _city_figure(project, snap.window_start_us, path)
        written.append(str(path))
    return written
