"""Matplotlib renderings written next to the JSON/SVG artifacts of the CLI."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .plabic import BLACK, PlabicTiling  # noqa: E402
from .soliton import ContourPlot  # noqa: E402

_FACE = {"white": "#f4f4f4", "black": "#555555"}


def _label(S) -> str:
    items = sorted(S)
    return "".join(map(str, items)) if all(i < 10 for i in items) else ",".join(map(str, items))


def _save(fig, path: Path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_plabic_tiling(pt: PlabicTiling, path) -> Path:
    """Colored triangles of a plabic tiling with their k-subset corner labels."""
    fig, ax = plt.subplots(figsize=(6, 6))
    for tri, color in pt.triangles:
        xs = [float(pt.positions[S][0]) for S in tri]
        ys = [float(pt.positions[S][1]) for S in tri]
        ax.fill(xs, ys, facecolor=_FACE[color], edgecolor="black", linewidth=0.8)
    for S, (x, y) in sorted(pt.positions.items(), key=lambda kv: sorted(kv[0])):
        ax.annotate(_label(S), (float(x), float(y)), fontsize=8, ha="center", va="bottom",
                    bbox={"boxstyle": "round,pad=0.15", "fc": "white", "ec": "none", "alpha": 0.8})
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_title(f"plabic tiling, k = {pt.k}, n = {pt.n}")
    return _save(fig, path)


def plot_contour(plot: ContourPlot, path) -> Path:
    """Contour plot segments, region labels and colored trivalent vertices."""
    fig, ax = plt.subplots(figsize=(7, 6))
    (x0, y0), (x1, y1) = plot.box
    for _, _, p, q in plot.segments:
        ax.plot([float(p[0]), float(q[0])], [float(p[1]), float(q[1])], color="black", linewidth=1.2)
    for lab, poly in plot.regions:
        cx = sum(float(p[0]) for p in poly) / len(poly)
        cy = sum(float(p[1]) for p in poly) / len(poly)
        ax.text(cx, cy, _label(lab), fontsize=9, ha="center", va="center")
    for p, color, _ in plot.vertices:
        fill = "black" if color == BLACK else "white"
        ax.plot(float(p[0]), float(p[1]), "o", markersize=7, markerfacecolor=fill, markeredgecolor="black")
    ax.set_xlim(float(x0), float(x1))
    ax.set_ylim(float(y0), float(y1))
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"contour plot, k = {plot.k}")
    return _save(fig, path)
