"""Matplotlib renderings written next to the delimited outputs.

Three figure kinds: the topology (optionally with a route highlighted),
the timing curves on log-log axes with their fitted slopes, and the
per-solver agreement rates from a comparison run.  All rendering targets
files through the Agg backend; nothing opens a window.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .bench import ExponentFit, TimingRecord  # noqa: E402
from .graph import Graph, Path  # noqa: E402


def _layout(graph: Graph) -> list[tuple[float, float]]:
    if graph.positions is not None:
        return list(graph.positions)
    # no coordinates in the file: fall back to a deterministic circle
    return [
        (math.cos(2 * math.pi * i / max(graph.n, 1)),
         math.sin(2 * math.pi * i / max(graph.n, 1)))
        for i in range(graph.n)
    ]


def save_topology_figure(
    graph: Graph,
    out_path,
    *,
    route: Optional[Path] = None,
    title: Optional[str] = None,
) -> None:
    """Draw nodes and links, highlighting ``route`` when given."""
    pos = _layout(graph)
    fig, ax = plt.subplots(figsize=(7, 7))
    for link in graph.physical_links():
        (x0, y0), (x1, y1) = pos[link.u], pos[link.v]
        ax.plot([x0, x1], [y0, y1], color="0.75", linewidth=0.8, zorder=1)
    if route is not None and len(route.nodes) > 1:
        for link in route.links:
            (x0, y0), (x1, y1) = pos[link.u], pos[link.v]
            ax.plot([x0, x1], [y0, y1], color="crimson", linewidth=2.4, zorder=2)
    xs = [p[0] for p in pos]
    ys = [p[1] for p in pos]
    ax.scatter(xs, ys, s=36, color="steelblue", zorder=3)
    if route is not None:
        rx = [pos[i][0] for i in route.nodes]
        ry = [pos[i][1] for i in route.nodes]
        ax.scatter(rx, ry, s=60, color="crimson", zorder=4)
    if graph.n <= 60:
        for i in range(graph.n):
            ax.annotate(
                str(graph.node_name(i)),
                pos[i],
                textcoords="offset points",
                xytext=(4, 4),
                fontsize=8,
            )
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("x (m)" if graph.positions is not None else "")
    ax.set_ylabel("y (m)" if graph.positions is not None else "")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def save_timing_figure(
    records: Sequence[TimingRecord],
    fits: Sequence[ExponentFit],
    out_path,
    *,
    title: str = "median wall time vs. network size",
) -> None:
    """Log-log timing curves, one per solver, slopes in the legend."""
    slope_by_algo = {fit.algorithm: fit.slope for fit in fits}
    by_algo: dict[str, list[TimingRecord]] = {}
    for rec in records:
        by_algo.setdefault(rec.algorithm, []).append(rec)
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for algo, recs in sorted(by_algo.items()):
        recs = sorted(recs, key=lambda r: r.n)
        label = algo
        if algo in slope_by_algo:
            label = f"{algo} (slope {slope_by_algo[algo]:.2f})"
        ax.plot(
            [r.n for r in recs],
            [r.median_s for r in recs],
            marker="o",
            label=label,
        )
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("nodes")
    ax.set_ylabel("median wall time (s)")
    ax.set_title(title)
    ax.grid(True, which="both", linewidth=0.3, alpha=0.5)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def save_agreement_figure(
    rates: dict[str, float],
    out_path,
    *,
    trials: int,
    title: str = "agreement with the exact optimum",
) -> None:
    """Bar chart of per-solver agreement fractions."""
    names = list(rates)
    values = [rates[name] for name in names]
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    bars = ax.bar(names, values, color="steelblue")
    for bar, value in zip(bars, values):
        ax.annotate(
            f"{value * 100:.1f}%",
            (bar.get_x() + bar.get_width() / 2, value),
            ha="center",
            va="bottom",
            fontsize=9,
        )
    ax.set_ylim(0, 1.05)
    ax.set_ylabel(f"agreement rate over {trials} instances")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
