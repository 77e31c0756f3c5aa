"""Figure and CSV companions for check reports.

When a report is written to disk the same data is rendered as a delimited
table plus two matplotlib figures: a gallery of the checked networks (failing
ones highlighted) and a bar chart of explored states per configuration.
matplotlib is imported lazily so the plain CLI paths stay fast.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .netconfig import Config
from .render import node_name

INITIATOR_COLOR = "#2ca02c"   # the initiator is drawn in green
NODE_COLOR = "#d9d9d9"
VIOLATION_COLOR = "#d62728"


def _layout(n: int) -> list[tuple[float, float]]:
    """Deterministic circular layout by node id, first node on top."""
    return [(math.sin(2 * math.pi * i / n), math.cos(2 * math.pi * i / n))
            for i in range(n)]


def draw_config(config: Config, ax, violated: bool = False, title: str | None = None):
    pos = _layout(config.node_count)
    for i, j in config.edges():
        ax.plot([pos[i][0], pos[j][0]], [pos[i][1], pos[j][1]],
                color="#888888", zorder=1, linewidth=1.2)
    for i, (x, y) in enumerate(pos):
        color = INITIATOR_COLOR if i == config.initiator else NODE_COLOR
        edge = VIOLATION_COLOR if violated else "#333333"
        ax.scatter([x], [y], s=260, c=color, edgecolors=edge,
                   linewidths=1.6 if violated else 1.0, zorder=2)
        ax.text(x, y, node_name(i), ha="center", va="center", zorder=3, fontsize=9)
    ax.set_xlim(-1.45, 1.45)
    ax.set_ylim(-1.45, 1.45)
    ax.set_aspect("equal")
    ax.axis("off")
    if title is not None:
        ax.set_title(title, fontsize=7,
                     color=VIOLATION_COLOR if violated else "#333333")


def write_report_artifacts(report: dict, out_path: str | Path) -> list[Path]:
    """Write the CSV table and the two figures next to ``out_path``; returns
    the created paths."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_path)
    stem = out.with_suffix("")
    created = []

    csv_path = stem.with_suffix(".csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["config", "outcome", "reason", "states",
                         "transitions", "millis"])
        for res in report["results"]:
            cfg = Config.from_json_dict(res["config"])
            writer.writerow([cfg.to_text(), res["outcome"], res["reason"] or "",
                             res["states"], res["transitions"], res["millis"]])
    created.append(csv_path)

    results = report["results"]
    cols = min(8, max(1, math.ceil(math.sqrt(len(results)))))
    rows = math.ceil(len(results) / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(2.0 * cols, 2.2 * rows))
    axes = [axes] if rows * cols == 1 else list(axes.flat)
    for ax in axes[len(results):]:
        ax.axis("off")
    for res, ax in zip(results, axes):
        cfg = Config.from_json_dict(res["config"])
        violated = res["outcome"] == "violation"
        mark = {"pass": "", "violation": " [bug]", "inconclusive": " [?]"}[res["outcome"]]
        draw_config(cfg, ax, violated=violated, title=cfg.to_text() + mark)
    fig.suptitle(f"{report['property']} / {report['variant']} "
                 f"(violations: {report['violations']})")
    fig.tight_layout()
    gallery = Path(f"{stem}_configs.png")
    fig.savefig(gallery, dpi=110)
    plt.close(fig)
    created.append(gallery)

    fig, ax = plt.subplots(figsize=(max(4.0, 0.35 * len(results)), 3.2))
    xs = range(len(results))
    colors = [VIOLATION_COLOR if r["outcome"] == "violation" else "#4c72b0"
              for r in results]
    ax.bar(xs, [r["states"] for r in results], color=colors)
    ax.set_xlabel("configuration (enumeration order)")
    ax.set_ylabel("explored states")
    ax.set_yscale("log")
    ax.set_title(f"state-space size per configuration "
                 f"({report['property']}, {report['variant']})")
    fig.tight_layout()
    chart = Path(f"{stem}_states.png")
    fig.savefig(chart, dpi=110)
    plt.close(fig)
    created.append(chart)
    return created
