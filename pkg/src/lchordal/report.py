"""Report files: a tab-separated summary table plus a PNG drawing of the
graph with the certificate highlighted."""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .chordality import Hole  # noqa: E402
from .erdos_posa import Cover, Packing  # noqa: E402
from .graph import Graph  # noqa: E402
from .witnesses import Chain, LongHoleFound, PartialChain, SmallTreewidth  # noqa: E402

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]

STYLE = {
    "figure.figsize": (6.0, 6.0),
    "font.size": 9,
    "axes.titlesize": 10,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def write_table(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, delimiter="\t", lineterminator="\n")
        out.writerow(["field", "value"])
        for key, value in rows:
            out.writerow([key, value])


def circle_layout(n: int) -> list:
    return [(math.cos(2 * math.pi * i / max(n, 1)), math.sin(2 * math.pi * i / max(n, 1))) for i in range(n)]


def _cycle_edges(seq, closed: bool) -> list:
    pairs = list(zip(seq, seq[1:]))
    if closed and len(seq) > 2:
        pairs.append((seq[-1], seq[0]))
    return pairs


def layers_for(g: Graph, outcome) -> tuple[list, list, str]:
    """(edge layers, vertex layers, title).  A layer is ``(items, colour, label)``."""
    edges, verts = [], []
    title = type(outcome).__name__ if outcome is not None else "graph"
    if isinstance(outcome, Hole):
        outcome = LongHoleFound(outcome)
    if isinstance(outcome, LongHoleFound):
        h = outcome.hole
        edges.append((_cycle_edges(h.cycle, True), PALETTE[0], f"hole, length {h.length}"))
        title = f"long hole of length {h.length}"
    elif isinstance(outcome, SmallTreewidth):
        title = f"tree-width {outcome.width} < threshold {outcome.threshold}"
    elif isinstance(outcome, (Chain, PartialChain)):
        arts = ({"block": outcome.block, "subdivision": outcome.subdivision, "kss": outcome.kss}
                if isinstance(outcome, Chain) else outcome.artifacts)
        if "block" in arts:
            b = arts["block"]
            verts.append((sorted(b.vertices), PALETTE[4], f"{b.k}-block"))
        if "subdivision" in arts:
            w = arts["subdivision"]
            pe = [e for p in w.paths.values() for e in _cycle_edges(p, False)]
            edges.append((pe, PALETTE[1], f"(<= {w.r})-subdivision of K_{w.m}"))
            verts.append((sorted(w.branchvertices), PALETTE[1], "branchvertices"))
        if "kss" in arts:
            k = arts["kss"]
            edges.append(([(a, b) for a in k.left for b in k.right], PALETTE[2], f"K_{{{k.s},{k.s}}}"))
        title = "chain" if isinstance(outcome, Chain) else f"partial chain (stopped at {outcome.stage})"
    elif isinstance(outcome, Packing):
        for i, h in enumerate(outcome.holes):
            edges.append((_cycle_edges(h.cycle, True), PALETTE[i % len(PALETTE)], f"hole {i + 1}"))
        title = f"{len(outcome.holes)} disjoint holes longer than {outcome.ell}"
    elif isinstance(outcome, Cover):
        verts.append((sorted(outcome.vertices), PALETTE[0], f"cover, {len(outcome.vertices)} vertices"))
        title = f"cover of size {len(outcome.vertices)} (bound {outcome.bound})"
    return edges, verts, title


def render_figure(path, g: Graph, outcome=None, positions=None) -> None:
    pos = positions or circle_layout(g.n)
    edge_layers, vertex_layers, title = layers_for(g, outcome)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for u, v in g.sorted_edges():
            ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]], color="0.8", lw=0.8, zorder=1)
        for items, colour, label in edge_layers:
            for i, (u, v) in enumerate(items):
                ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]], color=colour, lw=2.2, zorder=2,
                        label=label if i == 0 else None)
        xs = [p[0] for p in pos]
        ys = [p[1] for p in pos]
        ax.scatter(xs, ys, s=60, color="white", edgecolor="0.3", zorder=3)
        for items, colour, label in vertex_layers:
            ax.scatter([pos[v][0] for v in items], [pos[v][1] for v in items], s=90, color=colour,
                       edgecolor="black", zorder=4, label=label)
        if g.n <= 40:
            for v in g.vertices:
                ax.annotate(str(v + 1), pos[v], ha="center", va="center", fontsize=6, zorder=5)
        ax.set_title(title)
        ax.set_aspect("equal")
        ax.axis("off")
        if edge_layers or vertex_layers:
            ax.legend(loc="upper left", bbox_to_anchor=(1.0, 1.0), fontsize=7, frameon=False)
        fig.savefig(path)
        plt.close(fig)


def write_report(directory, stem: str, g: Graph, rows, outcome=None, positions=None) -> list:
    """Write ``<stem>.tsv`` and ``<stem>.png`` into ``directory``; returns the paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    table = out / f"{stem}.tsv"
    figure = out / f"{stem}.png"
    write_table(table, rows)
    render_figure(figure, g, outcome, positions)
    return [table, figure]
